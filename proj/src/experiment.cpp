#include "dnaimg/experiment.hpp"

#include <sstream>

#include <json.hpp>

#include "dnaimg/error.hpp"
#include "dnaimg/image_io.hpp"
#include "dnaimg/key_value.hpp"
#include "dnaimg/pixel_pipeline.hpp"

namespace dnaimg {
namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

void validate(const RestoreParams& p) {
  if (p.window < 1 || p.window % 2 == 0) throw UsageError("window must be odd and positive");
  if (p.median_max_window < 3 || p.median_max_window % 2 == 0) throw UsageError("median window must be odd and >= 3");
  if (!(p.sigma_d2 > 0.0) || !(p.sigma_r2 > 0.0)) throw UsageError("sigmas must be positive");
  if (!(p.inpaint.tolerance > 0.0)) throw UsageError("inpaint tolerance must be positive");
}

bool apply_restore_key(RestoreParams& p, const std::string& key, const std::string& value) {
  if (key == "t")
    p.t = parse_uint(key, value);
  else if (key == "detect")
    p.detect = parse_detection_scope(value);
  else if (key == "sigma_d2")
    p.sigma_d2 = parse_double(key, value);
  else if (key == "sigma_r2")
    p.sigma_r2 = parse_double(key, value);
  else if (key == "window")
    p.window = static_cast<int>(parse_uint(key, value));
  else if (key == "median_window")
    p.median_max_window = static_cast<int>(parse_uint(key, value));
  else if (key == "median_passes")
    p.median_passes = parse_uint(key, value);
  else if (key == "inpaint_tolerance")
    p.inpaint.tolerance = parse_double(key, value);
  else if (key == "inpaint_iterations")
    p.inpaint.max_iterations = parse_uint(key, value);
  else
    return false;
  return true;
}

std::string format_experiment_config(const ExperimentConfig& c) {
  std::string s = "# experiment\n";
  std::string joined;
  for (std::size_t i = 0; i < c.inputs.size(); ++i) joined += (i ? "," : "") + c.inputs[i];
  s += "inputs = " + joined + "\n";
  s += "out = " + c.out_dir + "\n";
  s += "resync_rate = " + format_double(c.encode.resync_rate) + "\n";
  s += "primer_seed = " + std::to_string(c.encode.primer_seed) + "\n";
  s += format_channel_config(c.channel);
  const auto& r = c.restore;
  s += "# restoration\n";
  s += "t = " + std::to_string(r.t) + "\n";
  s += "detect = " + std::string(detection_scope_name(r.detect)) + "\n";
  s += "sigma_d2 = " + format_double(r.sigma_d2) + "\n";
  s += "sigma_r2 = " + format_double(r.sigma_r2) + "\n";
  s += "window = " + std::to_string(r.window) + "\n";
  s += "median_window = " + std::to_string(r.median_max_window) + "\n";
  s += "median_passes = " + std::to_string(r.median_passes) + "\n";
  s += "inpaint_tolerance = " + format_double(r.inpaint.tolerance) + "\n";
  s += "inpaint_iterations = " + std::to_string(r.inpaint.max_iterations) + "\n";
  return s;
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig c;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "inputs")
      c.inputs = split_list(value);
    else if (key == "out")
      c.out_dir = value;
    else if (key == "resync_rate")
      c.encode.resync_rate = parse_double(key, value);
    else if (key == "primer_seed")
      c.encode.primer_seed = parse_uint(key, value);
    else if (!apply_channel_key(c.channel, key, value) && !apply_restore_key(c.restore, key, value))
      throw UsageError("unknown config key: " + key);
  }
  if (c.inputs.empty()) throw UsageError("experiment config lists no inputs");
  resync_period(c.encode.resync_rate);
  validate(c.channel);
  validate(c.restore);
  return c;
}

bool same_settings(const ExperimentConfig& a, const ExperimentConfig& b) {
  const auto& ra = a.restore;
  const auto& rb = b.restore;
  return a.inputs == b.inputs && a.out_dir == b.out_dir && a.encode.resync_rate == b.encode.resync_rate &&
         a.encode.primer_seed == b.encode.primer_seed && a.channel == b.channel && ra.t == rb.t &&
         ra.sigma_d2 == rb.sigma_d2 && ra.sigma_r2 == rb.sigma_r2 && ra.window == rb.window &&
         ra.median_max_window == rb.median_max_window && ra.median_passes == rb.median_passes && ra.detect == rb.detect &&
         ra.inpaint.tolerance == rb.inpaint.tolerance && ra.inpaint.max_iterations == rb.inpaint.max_iterations;
}

MetricsReport evaluate_image(const RgbImage& original, const RgbImage& corrupted, const RgbImage& restored,
                             const MaskSet* predicted, const DamageLog* log) {
  MetricsReport m;
  const RgbImage reference = dequantize_image(quantize_image(original));
  m.psnr_corrupted = psnr(corrupted, reference);
  m.psnr_restored = psnr(restored, reference);
  m.psnr_corrupted_vs_original = psnr(corrupted, original);
  m.psnr_restored_vs_original = psnr(restored, original);
  if (log) {
    m.oligos_total = log->total;
    m.oligos_clean = log->clean;
    m.oligos_erroneous = log->erroneous;
    m.oligos_missing = log->missing;
  }
  m.damage_logged = log && log->any_damage();
  if (m.damage_logged && predicted) {
    const auto truth = corruption_map(quantize_image(original), quantize_image(corrupted));
    for (std::size_t c = 0; c < 3; ++c) m.detection += score_detection((*predicted)[c], truth[c]);
  } else {
    m.damage_logged = false;
  }
  return m;
}

ExperimentResult run_experiment(const std::vector<RgbImage>& images, const ExperimentConfig& config,
                                const std::vector<std::string>& names) {
  ExperimentResult r;
  r.encoded = encode_images(images, config.encode, names);
  r.channel = simulate_channel(r.encoded.pool, config.channel);
  r.decoded = decode_pool(r.channel.pool, r.encoded.manifest);
  for (std::size_t i = 0; i < r.decoded.images.size(); ++i) {
    const auto& d = r.decoded.images[i];
    r.corrupted.push_back(dequantize_image(d.channels));
    r.restored.push_back(restore(r.corrupted.back(), d.masks, config.restore));
    MetricsReport m = evaluate_image(images[i], r.corrupted.back(), r.restored.back().restored,
                                     &r.restored.back().combined, &r.channel.log);
    m.identifiers_corrected = r.decoded.routing.identifiers_corrected;
    m.discarded = r.decoded.routing.discarded_ambiguous + r.decoded.routing.discarded_malformed;
    m.source_bits = r.encoded.stats.source_bits;
    m.payload_nt = r.encoded.stats.payload_nt;
    m.total_nt = r.encoded.stats.total_nt;
    r.metrics.push_back(m);
  }
  return r;
}

namespace layout {
std::string image_stem(const DecodedImage& image) { return "img" + std::to_string(image.index); }
std::string mask_name(std::string_view stem, Color c) {
  return std::string(stem) + "_mask_" + color_letter(c) + ".ppm";
}
}  // namespace layout

void write_encode_outputs(const std::filesystem::path& dir, const EncodeResult& result) {
  std::filesystem::create_directories(dir);
  write_fasta(dir / layout::kPool, result.pool);
  save_manifest(dir / layout::kManifest, result.manifest);
}

void write_channel_outputs(const std::filesystem::path& dir, const ChannelOutcome& outcome) {
  std::filesystem::create_directories(dir);
  write_fasta(dir / layout::kConsensus, outcome.pool);
  if (!outcome.reads.empty()) write_fasta(dir / layout::kReads, outcome.reads);
  write_text_file(dir / layout::kChannelConfig, format_channel_config(outcome.log.config));
  write_text_file(dir / layout::kDamageLog, serialize_damage_log(outcome.log));
}

void write_decode_outputs(const std::filesystem::path& dir, const DecodeResult& result, const Manifest&) {
  std::filesystem::create_directories(dir);
  for (const auto& img : result.images) {
    const auto stem = layout::image_stem(img);
    write_ppm(dir / (stem + ".ppm"), dequantize_image(img.channels));
    for (Color c : kColors) write_ppm(dir / layout::mask_name(stem, c), mask_to_image(img.masks[color_index(c)]));
  }
  write_text_file(dir / layout::kDecodeReport, decode_report_json(result));
}

void write_restore_outputs(const std::filesystem::path& dir, std::string_view stem, const RestoreResult& result) {
  std::filesystem::create_directories(dir);
  const std::string s(stem);
  write_ppm(dir / (s + ".ppm"), result.restored);
  write_ppm(dir / (s + "_inpainted.ppm"), result.inpainted);
  write_ppm(dir / (s + "_smoothed.ppm"), result.smoothed);
  for (Color c : kColors) write_ppm(dir / layout::mask_name(s, c), mask_to_image(result.combined[color_index(c)]));
}

std::string serialize_experiment_metrics(const ExperimentConfig& config, const ExperimentResult& result) {
  nlohmann::json j;
  j["config"] = format_experiment_config(config);
  j["channel_config"] = format_channel_config(config.channel);
  j["images"] = nlohmann::json::array();
  for (const auto& m : result.metrics) j["images"].push_back(nlohmann::json::parse(serialize_metrics(m)));
  return j.dump(2) + "\n";
}

}  // namespace dnaimg
