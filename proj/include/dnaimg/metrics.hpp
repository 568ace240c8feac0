#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "dnaimg/channel_sim.hpp"
#include "dnaimg/encoder.hpp"
#include "dnaimg/restoration.hpp"

namespace dnaimg {

/// 10 log10(255^2 / MSE) over all channels; +inf for identical images.
/// Throws DataError on a shape mismatch.
double psnr(const RgbImage& a, const RgbImage& b);
double mean_squared_error(const RgbImage& a, const RgbImage& b);

/// Pixels whose levels differ between two channel sets.
MaskSet corruption_map(const std::array<QuantizedChannel, 3>& truth, const std::array<QuantizedChannel, 3>& decoded);

struct DetectionScore {
  std::uint64_t true_positives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;
  std::uint64_t true_negatives = 0;
  std::optional<double> precision() const noexcept;
  std::optional<double> recall() const noexcept;
  std::optional<double> false_positive_rate() const noexcept;
  DetectionScore& operator+=(const DetectionScore& o) noexcept;
};

DetectionScore score_detection(const PixelMask& predicted, const PixelMask& truth);

struct MetricsReport {
  std::size_t oligos_total = 0;
  std::size_t oligos_clean = 0;
  std::size_t oligos_erroneous = 0;
  std::size_t oligos_missing = 0;
  std::size_t identifiers_corrected = 0;
  std::size_t discarded = 0;
  std::uint64_t source_bits = 0;
  std::uint64_t payload_nt = 0;
  std::uint64_t total_nt = 0;
  std::optional<double> psnr_corrupted;  // vs quantized original
  std::optional<double> psnr_restored;
  std::optional<double> psnr_corrupted_vs_original;  // vs unquantized original
  std::optional<double> psnr_restored_vs_original;
  bool damage_logged = false;  // false -> precision/recall not applicable
  DetectionScore detection;
};

/// JSON; infinite PSNR is written as the string "inf", undefined values as null.
std::string serialize_metrics(const MetricsReport& report);

}  // namespace dnaimg
