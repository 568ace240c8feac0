#include "dnaimg/metrics.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "dnaimg/error.hpp"
#include "dnaimg/kernels.hpp"

namespace dnaimg {

double mean_squared_error(const RgbImage& a, const RgbImage& b) {
  if (a.height() != b.height() || a.width() != b.width()) throw DataError("images differ in shape");
  const auto ssd = kernels::active().sum_squared_diff_u8(a.bytes().data(), b.bytes().data(), a.bytes().size());
  return static_cast<double>(ssd) / static_cast<double>(a.bytes().size());
}

double psnr(const RgbImage& a, const RgbImage& b) {
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

MaskSet corruption_map(const std::array<QuantizedChannel, 3>& truth, const std::array<QuantizedChannel, 3>& decoded) {
  MaskSet out;
  for (std::size_t c = 0; c < 3; ++c) {
    if (!truth[c].levels.same_shape(decoded[c].levels)) throw DataError("channels differ in shape");
    out[c] = PixelMask(truth[c].height(), truth[c].width());
    for (std::size_t i = 0; i < truth[c].levels.size(); ++i)
      out[c][i] = truth[c].levels[i] != decoded[c].levels[i] ? 1 : 0;
  }
  return out;
}

std::optional<double> DetectionScore::precision() const noexcept {
  const auto d = true_positives + false_positives;
  if (d == 0) return std::nullopt;
  return double(true_positives) / double(d);
}

std::optional<double> DetectionScore::recall() const noexcept {
  const auto d = true_positives + false_negatives;
  if (d == 0) return std::nullopt;
  return double(true_positives) / double(d);
}

std::optional<double> DetectionScore::false_positive_rate() const noexcept {
  const auto d = false_positives + true_negatives;
  if (d == 0) return std::nullopt;
  return double(false_positives) / double(d);
}

DetectionScore& DetectionScore::operator+=(const DetectionScore& o) noexcept {
  true_positives += o.true_positives;
  false_positives += o.false_positives;
  false_negatives += o.false_negatives;
  true_negatives += o.true_negatives;
  return *this;
}

DetectionScore score_detection(const PixelMask& predicted, const PixelMask& truth) {
  if (!predicted.same_shape(truth)) throw DataError("masks differ in shape");
  DetectionScore s;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool p = predicted[i] != 0, t = truth[i] != 0;
    if (p && t)
      ++s.true_positives;
    else if (p)
      ++s.false_positives;
    else if (t)
      ++s.false_negatives;
    else
      ++s.true_negatives;
  }
  return s;
}

std::string serialize_metrics(const MetricsReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    if (!v) return nullptr;
    if (std::isinf(*v)) return "inf";
    return *v;
  };
  nlohmann::json j;
  j["oligos"] = {{"total", r.oligos_total},
                 {"clean", r.oligos_clean},
                 {"erroneous", r.oligos_erroneous},
                 {"missing", r.oligos_missing},
                 {"identifiers_corrected", r.identifiers_corrected},
                 {"discarded", r.discarded}};
  j["nucleotides"] = {{"payload", r.payload_nt}, {"total", r.total_nt}};
  j["source_bits"] = r.source_bits;
  j["bits_per_payload_nt"] = r.payload_nt ? opt(double(r.source_bits) / double(r.payload_nt)) : nlohmann::json(nullptr);
  j["bits_per_total_nt"] = r.total_nt ? opt(double(r.source_bits) / double(r.total_nt)) : nlohmann::json(nullptr);
  j["psnr"] = {{"corrupted_vs_quantized", opt(r.psnr_corrupted)},
               {"restored_vs_quantized", opt(r.psnr_restored)},
               {"corrupted_vs_original", opt(r.psnr_corrupted_vs_original)},
               {"restored_vs_original", opt(r.psnr_restored_vs_original)}};
  if (r.damage_logged) {
    j["detection"] = {{"precision", opt(r.detection.precision())},
                      {"recall", opt(r.detection.recall())},
                      {"true_positives", r.detection.true_positives},
                      {"false_positives", r.detection.false_positives},
                      {"false_negatives", r.detection.false_negatives}};
  } else {
    j["detection"] = "not applicable";
  }
  return j.dump(2) + "\n";
}

}  // namespace dnaimg
