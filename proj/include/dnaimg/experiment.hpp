#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dnaimg/channel_sim.hpp"
#include "dnaimg/decoder.hpp"
#include "dnaimg/encoder.hpp"
#include "dnaimg/metrics.hpp"
#include "dnaimg/restoration.hpp"

namespace dnaimg {

struct ExperimentConfig {
  std::vector<std::string> inputs;
  std::string out_dir = "out";
  EncodeOptions encode;
  ChannelConfig channel;
  RestoreParams restore;
};

std::string format_experiment_config(const ExperimentConfig& config);
/// Throws UsageError on unknown keys, bad values or no inputs.
ExperimentConfig parse_experiment_config(std::string_view text);
bool same_settings(const ExperimentConfig& a, const ExperimentConfig& b);

/// Applies one restoration key; returns false for keys it does not own.
bool apply_restore_key(RestoreParams& params, const std::string& key, const std::string& value);
void validate(const RestoreParams& params);

/// Scores one image. `predicted` may be null; `log` null or without damage
/// makes precision/recall not applicable.
MetricsReport evaluate_image(const RgbImage& original, const RgbImage& corrupted, const RgbImage& restored,
                             const MaskSet* predicted, const DamageLog* log);

struct ExperimentResult {
  EncodeResult encoded;
  ChannelOutcome channel;
  DecodeResult decoded;
  std::vector<RgbImage> corrupted;  // dequantized decoder output
  std::vector<RestoreResult> restored;
  std::vector<MetricsReport> metrics;
};

ExperimentResult run_experiment(const std::vector<RgbImage>& images, const ExperimentConfig& config,
                                const std::vector<std::string>& names = {});

// File layout shared by the subcommands and the one-shot pipeline.
namespace layout {
inline constexpr std::string_view kPool = "pool.fasta";
inline constexpr std::string_view kManifest = "manifest.json";
inline constexpr std::string_view kConsensus = "consensus.fasta";
inline constexpr std::string_view kReads = "reads.fasta";
inline constexpr std::string_view kChannelConfig = "channel.cfg";
inline constexpr std::string_view kDamageLog = "damage.json";
inline constexpr std::string_view kDecodeReport = "decode_report.json";
std::string image_stem(const DecodedImage& image);
std::string mask_name(std::string_view stem, Color c);
}  // namespace layout

void write_encode_outputs(const std::filesystem::path& dir, const EncodeResult& result);
void write_channel_outputs(const std::filesystem::path& dir, const ChannelOutcome& outcome);
/// decoded PPMs, one mask PPM per channel, and the decode report.
void write_decode_outputs(const std::filesystem::path& dir, const DecodeResult& result, const Manifest& manifest);
/// Restored image plus stage dumps `<stem>_inpainted/_smoothed/_mask_<C>`.
void write_restore_outputs(const std::filesystem::path& dir, std::string_view stem, const RestoreResult& result);

std::string serialize_experiment_metrics(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace dnaimg
