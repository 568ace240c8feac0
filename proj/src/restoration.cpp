#include "dnaimg/restoration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dnaimg/error.hpp"
#include "dnaimg/kernels.hpp"
#include "dnaimg/pixel_pipeline.hpp"

namespace dnaimg {
namespace {

template <class A, class B>
void require_same_shape(const A& a, const B& b, const char* what) {
  if (a.height() != b.height() || a.width() != b.width()) throw DataError(std::string(what) + ": shape mismatch");
}

std::uint8_t to_u8(double v) noexcept { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

std::uint64_t DifferenceHistogram::total() const noexcept {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

int DifferenceHistogram::mode() const noexcept {
  int best = 0;
  for (int d = -kMaxLevelDifference; d <= kMaxLevelDifference; ++d) {
    const auto c = count(d), cb = count(best);
    if (c > cb || (c == cb && (std::abs(d) < std::abs(best) || (std::abs(d) == std::abs(best) && d < best))))
      best = d;
  }
  return best;
}

DifferenceHistogram difference_histogram(const QuantizedChannel& x, const QuantizedChannel& y) {
  require_same_shape(x, y, "difference histogram");
  DifferenceHistogram h;
  h.x = x.color;
  h.y = y.color;
  const auto xv = x.levels.values(), yv = y.levels.values();
  for (std::size_t i = 0; i < xv.size(); ++i) {
    if (xv[i] >= kLevelCount || yv[i] >= kLevelCount) throw DataError("level outside 0..7");
    ++h.counts[static_cast<std::size_t>(int(xv[i]) - int(yv[i]) + kMaxLevelDifference)];
  }
  return h;
}

std::vector<RankedBin> rarity_ranking(const std::array<DifferenceHistogram, 3>& histograms) {
  std::vector<RankedBin> bins;
  for (std::size_t p = 0; p < histograms.size(); ++p) {
    const int mode = histograms[p].mode();
    for (int d = -kMaxLevelDifference; d <= kMaxLevelDifference; ++d) {
      const auto c = histograms[p].count(d);
      if (c != 0 && d != mode) bins.push_back({p, d, c});
    }
  }
  std::sort(bins.begin(), bins.end(), [](const RankedBin& a, const RankedBin& b) {
    if (a.count != b.count) return a.count < b.count;
    if (std::abs(a.difference) != std::abs(b.difference)) return std::abs(a.difference) > std::abs(b.difference);
    if (a.difference != b.difference) return a.difference < b.difference;
    return a.pair < b.pair;
  });
  return bins;
}

PixelMask dilate(const PixelMask& mask, int radius) {
  const auto h = static_cast<int>(mask.height()), w = static_cast<int>(mask.width());
  PixelMask out(mask.height(), mask.width());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.test(y, x)) continue;
      for (int yy = std::max(0, y - radius); yy <= std::min(h - 1, y + radius); ++yy)
        for (int xx = std::max(0, x - radius); xx <= std::min(w - 1, x + radius); ++xx) out.set(yy, xx);
    }
  }
  return out;
}

MaskSet detect_discoloration(const std::array<QuantizedChannel, 3>& ch, std::size_t t, bool dilate_result) {
  require_same_shape(ch[0], ch[1], "detection");
  require_same_shape(ch[0], ch[2], "detection");
  std::array<DifferenceHistogram, 3> hist;
  for (std::size_t p = 0; p < 3; ++p)
    hist[p] = difference_histogram(ch[color_index(kChannelPairs[p].first)], ch[color_index(kChannelPairs[p].second)]);

  std::array<std::array<bool, kDifferenceBins>, 3> selected{};
  const auto ranking = rarity_ranking(hist);
  for (std::size_t i = 0; i < std::min(t, ranking.size()); ++i)
    selected[ranking[i].pair][static_cast<std::size_t>(ranking[i].difference + kMaxLevelDifference)] = true;

  const std::size_t h = ch[0].height(), w = ch[0].width();
  MaskSet masks{PixelMask(h, w), PixelMask(h, w), PixelMask(h, w)};
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      std::array<bool, 3> marked{};
      for (std::size_t p = 0; p < 3; ++p) {
        const int d = int(ch[color_index(kChannelPairs[p].first)].levels.at(r, c)) -
                      int(ch[color_index(kChannelPairs[p].second)].levels.at(r, c));
        marked[p] = selected[p][static_cast<std::size_t>(d + kMaxLevelDifference)];
      }
      // R in pairs 0 and 2, G in 0 and 1, B in 1 and 2.
      masks[0].set(r, c, marked[0] && marked[2]);
      masks[1].set(r, c, marked[0] && marked[1]);
      masks[2].set(r, c, marked[1] && marked[2]);
    }
  }
  if (dilate_result)
    for (auto& m : masks) m = dilate(m);
  return masks;
}

MaskSet combine_masks(const MaskSet& a, const MaskSet& b) {
  MaskSet out = a;
  for (std::size_t i = 0; i < 3; ++i) {
    require_same_shape(a[i], b[i], "combine_masks");
    auto dst = out[i].values();
    auto src = b[i].values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = (dst[k] || src[k]) ? 1 : 0;
  }
  return out;
}

PixelMask mask_union(const MaskSet& masks) {
  PixelMask out(masks[0].height(), masks[0].width());
  for (const auto& m : masks) {
    require_same_shape(out, m, "mask union");
    for (std::size_t k = 0; k < out.values().size(); ++k)
      if (m.values()[k]) out.values()[k] = 1;
  }
  return out;
}

InpaintResult inpaint_diffusion(const ChannelMatrix& channel, const PixelMask& mask, const InpaintParams& params) {
  require_same_shape(channel, mask, "inpaint");
  const std::size_t h = channel.height(), w = channel.width();
  if (mask.count() == h * w) throw DataError("inpaint: every pixel is masked");

  const std::size_t stride = w + 2;
  const std::size_t padded = stride * (h + 2);
  std::vector<double> value(padded, 0.0), known(padded, 0.0), next_value(padded, 0.0), next_known(padded, 0.0);
  std::vector<std::uint8_t> target(padded, 0);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t p = (r + 1) * stride + c + 1;
      if (mask.test(r, c)) {
        target[p] = 1;
      } else {
        value[p] = channel.at(r, c);
        known[p] = 1.0;
      }
    }
  }

  InpaintResult res;
  const auto& k = kernels::active();
  if (mask.count() != 0) {
    while (res.iterations < params.max_iterations) {
      kernels::DiffusionSweepArgs args{value.data(), known.data(), target.data(), next_value.data(), next_known.data(),
                                       w, h};
      res.last_change = k.diffusion_sweep(args);
      ++res.iterations;
      value.swap(next_value);
      known.swap(next_known);
      if (res.last_change < params.tolerance) break;
    }
  }

  res.values = Plane<double>(h, w, 0.0);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) res.values.at(r, c) = value[(r + 1) * stride + c + 1];
  return res;
}

ChannelMatrix inpaint(const ChannelMatrix& channel, const PixelMask& mask, const InpaintParams& params) {
  const auto res = inpaint_diffusion(channel, mask, params);
  ChannelMatrix out = channel;
  for (std::size_t r = 0; r < channel.height(); ++r)
    for (std::size_t c = 0; c < channel.width(); ++c)
      if (mask.test(r, c)) out.at(r, c) = to_u8(res.values.at(r, c));
  return out;
}

PlanarImageF bilateral_filter_exact(const RgbImage& image, double sigma_d2, double sigma_r2, int window) {
  if (window < 1 || window % 2 == 0) throw UsageError("bilateral window must be odd and positive");
  if (!(sigma_d2 > 0.0) || !(sigma_r2 > 0.0)) throw UsageError("bilateral sigmas must be positive");
  const std::size_t h = image.height(), w = image.width();
  const int r = window / 2;

  std::vector<double> spatial(static_cast<std::size_t>(window * window));
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      spatial[static_cast<std::size_t>((dy + r) * window + dx + r)] = std::exp(-double(dy * dy + dx * dx) / (2.0 * sigma_d2));
  std::vector<double> range(3 * 255 * 255 + 1);
  for (std::size_t d = 0; d < range.size(); ++d) range[d] = std::exp(-double(d) / (2.0 * sigma_r2));

  std::array<std::vector<double>, 3> in;
  for (std::size_t c = 0; c < 3; ++c) {
    in[c].resize(h * w);
    for (std::size_t i = 0; i < h * w; ++i) in[c][i] = image.bytes()[i * 3 + c];
  }
  PlanarImageF out{{Plane<double>(h, w, 0.0), Plane<double>(h, w, 0.0), Plane<double>(h, w, 0.0)}};
  const auto& k = kernels::active();
  for (std::size_t row = 0; row < h; ++row) {
    kernels::BilateralRowArgs args{{in[0].data(), in[1].data(), in[2].data()},
                                   w,
                                   h,
                                   r,
                                   spatial.data(),
                                   range.data(),
                                   {&out.planes[0].at(row, 0), &out.planes[1].at(row, 0), &out.planes[2].at(row, 0)}};
    k.bilateral_row(args, row);
  }
  return out;
}

RgbImage bilateral_filter(const RgbImage& image, double sigma_d2, double sigma_r2, int window) {
  const auto f = bilateral_filter_exact(image, sigma_d2, sigma_r2, window);
  RgbImage out(image.height(), image.width());
  for (std::size_t r = 0; r < image.height(); ++r)
    for (std::size_t c = 0; c < image.width(); ++c)
      for (std::size_t ch = 0; ch < 3; ++ch) out.at(r, c, ch) = to_u8(f.planes[ch].at(r, c));
  return out;
}

RgbImage adaptive_median(const RgbImage& image, const MaskSet& regions, int max_window) {
  if (max_window < 3 || max_window % 2 == 0) throw UsageError("adaptive median window must be odd and >= 3");
  for (const auto& r : regions) require_same_shape(image, r, "adaptive median");
  const auto h = static_cast<int>(image.height()), w = static_cast<int>(image.width());
  RgbImage out = image;
  std::vector<std::uint8_t> win;
  for (std::size_t ch = 0; ch < 3; ++ch) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!regions[ch].test(y, x)) continue;
        const std::uint8_t z = image.at(y, x, ch);
        std::uint8_t result = z;
        for (int s = 3; s <= max_window; s += 2) {
          const int r = s / 2;
          win.clear();
          for (int yy = std::max(0, y - r); yy <= std::min(h - 1, y + r); ++yy)
            for (int xx = std::max(0, x - r); xx <= std::min(w - 1, x + r); ++xx) win.push_back(image.at(yy, xx, ch));
          std::sort(win.begin(), win.end());
          const std::uint8_t lo = win.front(), hi = win.back(), med = win[(win.size() - 1) / 2];
          result = med;  // output when the largest window is exhausted
          if (lo < med && med < hi) {
            result = (lo < z && z < hi) ? z : med;
            break;
          }
        }
        out.at(y, x, ch) = result;
      }
    }
  }
  return out;
}

RgbImage adaptive_median(const RgbImage& image, const PixelMask& region, int max_window) {
  return adaptive_median(image, MaskSet{region, region, region}, max_window);
}

std::string_view detection_scope_name(DetectionScope scope) noexcept {
  switch (scope) {
    case DetectionScope::damaged: return "damaged";
    case DetectionScope::all: return "all";
    case DetectionScope::none: return "none";
  }
  return "damaged";
}

DetectionScope parse_detection_scope(std::string_view name) {
  for (auto s : {DetectionScope::damaged, DetectionScope::all, DetectionScope::none})
    if (detection_scope_name(s) == name) return s;
  throw UsageError("detection scope must be damaged, all or none, got '" + std::string(name) + "'");
}

RestoreResult restore(const RgbImage& decoded, const MaskSet& decoder_masks, const RestoreParams& params,
                      const Inpainter& inpainter) {
  for (const auto& m : decoder_masks) require_same_shape(decoded, m, "restore");
  RestoreResult res;
  const PixelMask none(decoded.height(), decoded.width());
  res.detected = {none, none, none};
  if (params.detect != DetectionScope::none && params.t > 0) {
    const auto found = detect_discoloration(quantize_image(decoded), params.t);
    for (std::size_t c = 0; c < 3; ++c)
      if (params.detect == DetectionScope::all || !decoder_masks[c].empty_mask()) res.detected[c] = found[c];
  }
  res.combined = combine_masks(res.detected, decoder_masks);

  auto channels = split_channels(decoded);
  for (std::size_t c = 0; c < 3; ++c) {
    if (res.combined[c].empty_mask()) continue;
    channels[c] = inpainter ? inpainter(channels[c], res.combined[c]) : inpaint(channels[c], res.combined[c], params.inpaint);
  }
  res.inpainted = merge_channels(channels);
  res.smoothed = bilateral_filter(res.inpainted, params.sigma_d2, params.sigma_r2, params.window);
  for (std::size_t c = 0; c < 3; ++c) res.median_regions[c] = dilate(res.combined[c]);
  res.restored = res.smoothed;
  for (std::size_t i = 0; i < params.median_passes; ++i)
    res.restored = adaptive_median(res.restored, res.median_regions, params.median_max_window);
  return res;
}

}  // namespace dnaimg
