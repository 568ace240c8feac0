#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "dnaimg/error.hpp"
#include "dnaimg/experiment.hpp"
#include "dnaimg/image_io.hpp"
#include "dnaimg/kernels.hpp"
#include "dnaimg/key_value.hpp"
#include "dnaimg/pixel_pipeline.hpp"

namespace fs = std::filesystem;
using namespace dnaimg;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void configure_logging() {
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("DNAIMG_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

void add_restore_options(CLI::App* cmd, RestoreParams& p) {
  cmd->add_option("--t", p.t, "Rarest difference bins to flag")->capture_default_str();
  cmd->add_option_function<std::string>(
         "--detect", [&p](const std::string& v) { p.detect = parse_detection_scope(v); },
         "Channels that keep detected masks: damaged, all or none")
      ->check(CLI::IsMember({"damaged", "all", "none"}))
      ->default_str("damaged");
  cmd->add_option_function<double>(
      "--sigma", [&p](double v) { p.sigma_d2 = p.sigma_r2 = v; }, "Set both squared sigmas");
  cmd->add_option("--sigma-d2", p.sigma_d2, "Spatial sigma squared")->capture_default_str();
  cmd->add_option("--sigma-r2", p.sigma_r2, "Range sigma squared")->capture_default_str();
  cmd->add_option("--window", p.window, "Bilateral window (odd)")->capture_default_str();
  cmd->add_option("--median-window", p.median_max_window, "Adaptive median max window (odd)")->capture_default_str();
  cmd->add_option("--median-passes", p.median_passes, "Adaptive median passes")->capture_default_str();
  cmd->add_option("--inpaint-tolerance", p.inpaint.tolerance, "Diffusion stops below this max change")->capture_default_str();
  cmd->add_option("--inpaint-iterations", p.inpaint.max_iterations, "Diffusion sweep cap")->capture_default_str();
}

std::string stem_of(const fs::path& p) { return p.stem().string(); }

MaskSet read_masks(const std::vector<std::string>& paths, const RgbImage& like) {
  MaskSet m{PixelMask(like.height(), like.width()), PixelMask(like.height(), like.width()),
            PixelMask(like.height(), like.width())};
  if (paths.empty()) return m;
  if (paths.size() != 3) throw UsageError("--masks takes exactly three files (R G B)");
  for (std::size_t c = 0; c < 3; ++c) m[c] = image_to_mask(read_image(paths[c]));
  return m;
}

void print_metrics_summary(const MetricsReport& m) {
  auto fmt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("n/a"); };
  std::cout << "psnr corrupted: " << fmt(m.psnr_corrupted) << " dB, restored: " << fmt(m.psnr_restored) << " dB\n";
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Encode images into DNA oligo pools, simulate the channel, decode and restore."};
  app.require_subcommand(1);

  // encode
  std::vector<std::string> enc_inputs;
  std::string enc_out;
  EncodeOptions enc_opts;
  auto* enc = app.add_subcommand("encode", "Encode images into a pool and manifest");
  enc->add_option("--in", enc_inputs, "Input PPM/PGM images")->required();
  enc->add_option("--out", enc_out, "Output directory")->required();
  enc->add_option("--resync-rate", enc_opts.resync_rate, "Marker rate; one absolute index every ceil(1/rate) values")->capture_default_str();
  enc->add_option("--primer-seed", enc_opts.primer_seed, "Seed for the primer search")->capture_default_str();

  // simulate
  std::string sim_pool, sim_out, sim_config;
  ChannelConfig sim_cfg;
  auto* sim = app.add_subcommand("simulate", "Apply dropout, substitutions and sequencing to a pool");
  sim->add_option("--pool", sim_pool, "Pool FASTA")->required();
  sim->add_option("--out", sim_out, "Output directory")->required();
  sim->add_option("--config", sim_config, "Channel config file (flags override)");
  sim->add_option("--drop", sim_cfg.drop_count, "Oligos removed uniformly at random");
  sim->add_option("--sub-rate", sim_cfg.sub_rate, "Per-nucleotide synthesis substitution rate");
  sim->add_option("--coverage", sim_cfg.coverage, "Mean reads per oligo; 0 skips sequencing");
  sim->add_option("--read-err", sim_cfg.read_error, "Per-base read error rate");
  sim->add_option("--seed", sim_cfg.seed, "Channel seed");

  // decode
  std::string dec_pool, dec_manifest, dec_out;
  auto* dec = app.add_subcommand("decode", "Decode a pool back to images and masks");
  dec->add_option("--pool", dec_pool, "Consensus FASTA")->required();
  dec->add_option("--manifest", dec_manifest, "Manifest JSON")->required();
  dec->add_option("--out", dec_out, "Output directory")->required();

  // restore
  std::string res_image, res_out, res_dump;
  std::vector<std::string> res_masks;
  RestoreParams res_params;
  auto* res = app.add_subcommand("restore", "Detect, inpaint and smooth a decoded image");
  res->add_option("--image", res_image, "Decoded PPM")->required();
  res->add_option("--masks", res_masks, "Decoder mask PPMs for R G B");
  res->add_option("--out", res_out, "Restored PPM")->required();
  res->add_option("--dump-dir", res_dump, "Directory for stage dumps");
  add_restore_options(res, res_params);

  // eval
  std::string ev_original, ev_corrupted, ev_restored, ev_damage, ev_out;
  std::vector<std::string> ev_masks;
  auto* ev = app.add_subcommand("eval", "Score corrupted and restored images");
  ev->add_option("--original", ev_original, "Unquantized original")->required();
  ev->add_option("--corrupted", ev_corrupted, "Decoded image")->required();
  ev->add_option("--restored", ev_restored, "Restored image")->required();
  ev->add_option("--masks", ev_masks, "Predicted mask PPMs for R G B");
  ev->add_option("--damage-log", ev_damage, "Damage log JSON from simulate");
  ev->add_option("--out", ev_out, "Metrics JSON (stdout if omitted)");

  // pipeline
  std::string pipe_config;
  auto* pipe = app.add_subcommand("pipeline", "Run encode, simulate, decode, restore and eval from one config");
  pipe->add_option("--config", pipe_config, "Experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    spdlog::debug("kernels: {}", kernels::isa_name(kernels::active().isa));
    if (*enc) {
      std::vector<RgbImage> images;
      std::vector<std::string> names;
      for (const auto& p : enc_inputs) {
        images.push_back(read_image(p));
        names.push_back(stem_of(p));
      }
      const auto r = encode_images(images, enc_opts, names);
      write_encode_outputs(enc_out, r);
      std::cout << "oligos: " << r.stats.oligos << "\n"
                << "payload nt: " << r.stats.payload_nt << ", total nt: " << r.stats.total_nt << "\n"
                << "source bits: " << r.stats.source_bits << "\n"
                << "bits per payload nt: " << format_double(r.stats.bits_per_payload_nt()) << "\n"
                << "bits per total nt: " << format_double(r.stats.bits_per_total_nt()) << "\n";
    } else if (*sim) {
      ChannelConfig cfg;
      if (!sim_config.empty()) cfg = parse_channel_config(read_text_file(sim_config));
      if (sim->count("--drop")) cfg.drop_count = sim_cfg.drop_count;
      if (sim->count("--sub-rate")) cfg.sub_rate = sim_cfg.sub_rate;
      if (sim->count("--coverage")) cfg.coverage = sim_cfg.coverage;
      if (sim->count("--read-err")) cfg.read_error = sim_cfg.read_error;
      if (sim->count("--seed")) cfg.seed = sim_cfg.seed;
      const auto outcome = simulate_channel(read_fasta(sim_pool), cfg);
      write_channel_outputs(sim_out, outcome);
      const auto& l = outcome.log;
      std::cout << "oligos: " << l.total << " clean: " << l.clean << " erroneous: " << l.erroneous
                << " missing: " << l.missing << "\n";
    } else if (*dec) {
      const auto manifest = load_manifest(dec_manifest);
      const auto r = decode_pool(read_fasta(dec_pool), manifest);
      write_decode_outputs(dec_out, r, manifest);
      std::size_t masked = 0;
      for (const auto& img : r.images)
        for (const auto& m : img.masks) masked += m.count();
      std::cout << "images: " << r.images.size() << " gaps: " << r.gaps << " masked pixels: " << masked << "\n";
    } else if (*res) {
      validate(res_params);
      const auto image = read_image(res_image);
      const auto result = restore(image, read_masks(res_masks, image), res_params);
      write_ppm(res_out, result.restored);
      if (!res_dump.empty()) write_restore_outputs(res_dump, stem_of(res_out), result);
      std::size_t masked = 0;
      for (const auto& m : result.combined) masked += m.count();
      std::cout << "masked pixels: " << masked << "\n";
    } else if (*ev) {
      const auto original = read_image(ev_original);
      const auto corrupted = read_image(ev_corrupted);
      const auto restored = read_image(ev_restored);
      std::optional<DamageLog> log;
      if (!ev_damage.empty()) log = parse_damage_log(read_text_file(ev_damage));
      std::optional<MaskSet> masks;
      if (!ev_masks.empty()) masks = read_masks(ev_masks, original);
      const auto m = evaluate_image(original, corrupted, restored, masks ? &*masks : nullptr, log ? &*log : nullptr);
      const auto json = serialize_metrics(m);
      if (ev_out.empty())
        std::cout << json;
      else
        write_text_file(ev_out, json);
      if (!ev_out.empty()) print_metrics_summary(m);
    } else if (*pipe) {
      const auto config = parse_experiment_config(read_text_file(pipe_config));
      std::vector<RgbImage> images;
      std::vector<std::string> names;
      for (const auto& p : config.inputs) {
        images.push_back(read_image(p));
        names.push_back(stem_of(p));
      }
      const auto r = run_experiment(images, config, names);
      const fs::path out = config.out_dir;
      write_encode_outputs(out, r.encoded);
      write_text_file(out / "experiment.cfg", format_experiment_config(config));
      write_channel_outputs(out, r.channel);
      write_decode_outputs(out / "decoded", r.decoded, r.encoded.manifest);
      for (std::size_t i = 0; i < r.restored.size(); ++i)
        write_restore_outputs(out / "restored", layout::image_stem(r.decoded.images[i]), r.restored[i]);
      write_text_file(out / "metrics.json", serialize_experiment_metrics(config, r));
      std::cout << "oligos: " << r.encoded.stats.oligos << " gaps: " << r.decoded.gaps << "\n";
      for (const auto& m : r.metrics) print_metrics_summary(m);
    }
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    spdlog::error("{}", e.what());
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
