#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dnaimg/image.hpp"

namespace dnaimg {

using MaskSet = std::array<PixelMask, 3>;

inline constexpr int kMaxLevelDifference = kLevelCount - 1;
inline constexpr std::size_t kDifferenceBins = 2 * kMaxLevelDifference + 1;  // -7..7

/// Pairs in {R-G, G-B, R-B} order.
inline constexpr std::array<std::pair<Color, Color>, 3> kChannelPairs{
    {{Color::R, Color::G}, {Color::G, Color::B}, {Color::R, Color::B}}};

struct DifferenceHistogram {
  Color x = Color::R;
  Color y = Color::G;
  std::array<std::uint64_t, kDifferenceBins> counts{};  // index = (x - y) + 7
  std::uint64_t count(int difference) const { return counts.at(static_cast<std::size_t>(difference + kMaxLevelDifference)); }
  std::uint64_t total() const noexcept;
  /// Most populated difference; ties to smaller |d|, then to lower d.
  int mode() const noexcept;
};

/// Throws DataError on a shape mismatch or a level above 7.
DifferenceHistogram difference_histogram(const QuantizedChannel& x, const QuantizedChannel& y);

struct RankedBin {
  std::size_t pair = 0;  // index into kChannelPairs
  int difference = 0;
  std::uint64_t count = 0;
  friend bool operator==(const RankedBin&, const RankedBin&) = default;
};

/// Non-empty, non-modal bins of all three pairs, rarest first; ties go to
/// the larger |difference|, then the lower difference, then pair order.
std::vector<RankedBin> rarity_ranking(const std::array<DifferenceHistogram, 3>& histograms);

PixelMask dilate(const PixelMask& mask, int radius = 1);

/// Marks pixels whose pair difference falls in one of the t rarest bins;
/// a channel is flagged where both pairs containing it are marked. The
/// result is dilated with a 3x3 square when `dilate_result` is set.
MaskSet detect_discoloration(const std::array<QuantizedChannel, 3>& channels, std::size_t t,
                             bool dilate_result = true);

/// Per-channel union. Throws DataError on a shape mismatch.
MaskSet combine_masks(const MaskSet& a, const MaskSet& b);
PixelMask mask_union(const MaskSet& masks);

struct InpaintParams {
  double tolerance = 0.5;
  std::size_t max_iterations = 500;
};

struct InpaintResult {
  Plane<double> values;
  std::size_t iterations = 0;
  double last_change = 0.0;
};

/// Jacobi diffusion over masked pixels: each sweep sets a masked pixel to
/// the mean of its known 4-neighbours, and pixels become known once set.
/// Throws DataError when every pixel is masked.
InpaintResult inpaint_diffusion(const ChannelMatrix& channel, const PixelMask& mask, const InpaintParams& params = {});
/// Rounded diffusion result; unmasked pixels are copied unchanged.
ChannelMatrix inpaint(const ChannelMatrix& channel, const PixelMask& mask, const InpaintParams& params = {});

using Inpainter = std::function<ChannelMatrix(const ChannelMatrix&, const PixelMask&)>;

/// Throws UsageError unless window is odd and positive and both sigmas
/// are positive.
PlanarImageF bilateral_filter_exact(const RgbImage& image, double sigma_d2, double sigma_r2, int window);
RgbImage bilateral_filter(const RgbImage& image, double sigma_d2, double sigma_r2, int window);

/// Adaptive median at pixels inside `region` only, every channel. Windows
/// are clipped at the border; even-sized windows use the lower median. A
/// pixel whose windows all have an extremal median takes the median of the
/// largest window.
/// Throws UsageError unless max_window is odd and >= 3.
RgbImage adaptive_median(const RgbImage& image, const PixelMask& region, int max_window);
/// Per-channel regions: channel c changes only inside regions[c].
RgbImage adaptive_median(const RgbImage& image, const MaskSet& regions, int max_window);

/// Which channels keep their detected discoloration mask.
enum class DetectionScope {
  damaged,  // channels whose decoder mask is non-empty
  all,
  none,
};
std::string_view detection_scope_name(DetectionScope scope) noexcept;
/// Throws UsageError for anything but "damaged", "all" or "none".
DetectionScope parse_detection_scope(std::string_view name);

struct RestoreParams {
  std::size_t t = 18;
  DetectionScope detect = DetectionScope::damaged;
  double sigma_d2 = 45.0;
  double sigma_r2 = 45.0;
  int window = 9;
  int median_max_window = 7;
  std::size_t median_passes = 1;
  InpaintParams inpaint;
};

struct RestoreResult {
  MaskSet detected;
  MaskSet combined;
  MaskSet median_regions;  // dilated combined masks
  RgbImage inpainted;
  RgbImage smoothed;
  RgbImage restored;
};

/// detection -> combine_masks -> inpaint -> bilateral -> adaptive median.
/// `inpainter` defaults to diffusion with `params.inpaint`.
RestoreResult restore(const RgbImage& decoded, const MaskSet& decoder_masks, const RestoreParams& params = {},
                      const Inpainter& inpainter = {});

}  // namespace dnaimg
