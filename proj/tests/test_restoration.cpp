#include <doctest.h>

#include <cmath>
#include <random>

#include "dnaimg/metrics.hpp"
#include "dnaimg/pixel_pipeline.hpp"
#include "dnaimg/restoration.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dnaimg;

namespace {

MaskSet empty_masks(std::size_t h, std::size_t w) { return {PixelMask(h, w), PixelMask(h, w), PixelMask(h, w)}; }

}  // namespace

TEST_CASE("difference histogram counts every pixel") {
  const auto q = quantize_image(fixtures::random_image(13, 17, 1));
  const auto h = difference_histogram(q[0], q[1]);
  CHECK(h.total() == 13 * 17);
  std::uint64_t manual = 0;
  for (std::size_t i = 0; i < q[0].levels.size(); ++i) manual += int(q[0].levels[i]) - int(q[1].levels[i]) == 2;
  CHECK(h.count(2) == manual);
  QuantizedChannel other{Color::B, Plane<std::uint8_t>(2, 2)};
  CHECK_THROWS_AS(difference_histogram(q[0], other), DataError);
}

TEST_CASE("rarity ranking order") {
  std::array<DifferenceHistogram, 3> h;
  h[0].counts[7] = 100;  // mode 0
  h[0].counts[7 + 2] = 5;
  h[0].counts[7 - 2] = 5;
  h[0].counts[7 + 6] = 5;
  h[1].counts[7 + 1] = 50;  // mode 1
  h[1].counts[7] = 3;
  h[2].counts[7] = 9;
  const auto r = rarity_ranking(h);
  REQUIRE(r.size() == 4);
  CHECK(r[0] == RankedBin{1, 0, 3});
  CHECK(r[1] == RankedBin{0, 6, 5});   // larger |d| first among equal counts
  CHECK(r[2] == RankedBin{0, -2, 5});  // then lower d
  CHECK(r[3] == RankedBin{0, 2, 5});
}

TEST_CASE("uniform image gives empty masks") {
  const auto q = quantize_image(fixtures::uniform_image(20, 20, 128, 128, 128));
  for (std::size_t t : {0u, 1u, 14u, 18u, 42u})
    for (const auto& m : detect_discoloration(q, t)) CHECK(m.empty_mask());
}

TEST_CASE("8x8 red block on mid-gray is attributed to red at t = 2") {
  auto img = fixtures::uniform_image(32, 32, 128, 128, 128);
  for (std::size_t r = 10; r < 18; ++r)
    for (std::size_t c = 5; c < 13; ++c) img.at(r, c, 0) = 240;
  const auto masks = detect_discoloration(quantize_image(img), 2);
  for (std::size_t r = 10; r < 18; ++r)
    for (std::size_t c = 5; c < 13; ++c) CHECK(masks[0].test(r, c));
  CHECK(masks[0].count() == 10 * 10);  // block plus one-pixel dilation
  CHECK(masks[1].empty_mask());
  CHECK(masks[2].empty_mask());
}

TEST_CASE("selecting every bin flags all non-modal pixels") {
  const auto q = quantize_image(fixtures::smooth_image(40, 40, 3));
  const auto masks = detect_discoloration(q, 3 * kDifferenceBins, false);
  std::array<DifferenceHistogram, 3> h{difference_histogram(q[0], q[1]), difference_histogram(q[1], q[2]),
                                       difference_histogram(q[0], q[2])};
  for (std::size_t i = 0; i < q[0].levels.size(); ++i) {
    bool off[3];
    const int d[3] = {int(q[0].levels[i]) - int(q[1].levels[i]), int(q[1].levels[i]) - int(q[2].levels[i]),
                      int(q[0].levels[i]) - int(q[2].levels[i])};
    for (int p = 0; p < 3; ++p) off[p] = d[p] != h[p].mode();
    CHECK(masks[0][i] == (off[0] && off[2]));
    CHECK(masks[1][i] == (off[0] && off[1]));
    CHECK(masks[2][i] == (off[1] && off[2]));
  }
}

TEST_CASE("dilation and mask combination") {
  PixelMask m(5, 5);
  m.set(0, 0);
  m.set(2, 2);
  const auto d = dilate(m);
  CHECK(d.count() == 4 + 9 - 1);
  CHECK(d.test(1, 1));
  CHECK_FALSE(d.test(4, 4));

  const auto e = empty_masks(5, 5);
  CHECK(combine_masks(e, e) == e);
  MaskSet dec = e;
  dec[1] = m;
  CHECK(combine_masks(e, dec) == dec);
  CHECK(combine_masks(dec, dec)[1].count() == 2);
}

TEST_CASE("inpainting fixed points") {
  const auto ch = split_channels(fixtures::random_image(9, 9, 4))[0];
  CHECK(inpaint(ch, PixelMask(9, 9)) == ch);

  ChannelMatrix flat(7, 7, 90);
  PixelMask one(7, 7);
  one.set(3, 3);
  flat.at(3, 3) = 0;
  CHECK(inpaint(flat, one).at(3, 3) == 90);

  PixelMask all(3, 3);
  for (std::size_t i = 0; i < 9; ++i) all[i] = 1;
  CHECK_THROWS_AS(inpaint(ChannelMatrix(3, 3), all), DataError);
}

TEST_CASE("masked disk in a linear gradient matches the harmonic solution") {
  const std::size_t n = 48;
  ChannelMatrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g.at(r, c) = std::uint8_t(20 + 4 * c + r);
  PixelMask disk(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if ((double(r) - 24) * (double(r) - 24) + (double(c) - 22) * (double(c) - 22) <= 100) disk.set(r, c);
  const auto res = inpaint_diffusion(g, disk);
  double worst = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (disk.test(r, c)) worst = std::max(worst, std::fabs(res.values.at(r, c) - double(g.at(r, c))));
  MESSAGE("harmonic max error " << worst << " after " << res.iterations << " sweeps");
  CHECK(worst <= 32.0);

  const auto once = inpaint(g, disk);
  CHECK(inpaint(once, disk) == once);
}

TEST_CASE("bilateral filter matches the direct double loop") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto img = fixtures::random_image(8, 8, seed);
    const auto got = bilateral_filter_exact(img, 45, 45, 9);
    const auto want = oracle::bilateral(img, 45, 45, 9);
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < 64; ++i) {
        const double w = want.planes[c][i];
        REQUIRE(std::fabs(got.planes[c][i] - w) <= 1e-9 * std::fabs(w));
      }
  }
  const auto img = fixtures::random_image(15, 11, 9);
  const auto got = bilateral_filter_exact(img, 12, 300, 5);
  const auto want = oracle::bilateral(img, 12, 300, 5);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < got.planes[c].size(); ++i)
      CHECK(std::fabs(got.planes[c][i] - want.planes[c][i]) <= 1e-9 * std::fabs(want.planes[c][i]));
}

TEST_CASE("bilateral fixed points and convexity") {
  const auto flat = fixtures::uniform_image(12, 10, 7, 200, 77);
  CHECK(bilateral_filter(flat, 45, 45, 9) == flat);
  const auto img = fixtures::random_image(10, 12, 5);
  CHECK(bilateral_filter(img, 45, 45, 1) == img);
  const auto f = bilateral_filter_exact(img, 45, 45, 5);
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 12; ++c)
      for (int ch = 0; ch < 3; ++ch) {
        int lo = 255, hi = 0;
        for (int y = std::max(0, r - 2); y <= std::min(9, r + 2); ++y)
          for (int x = std::max(0, c - 2); x <= std::min(11, c + 2); ++x) {
            lo = std::min<int>(lo, img.at(y, x, ch));
            hi = std::max<int>(hi, img.at(y, x, ch));
          }
        CHECK(f.planes[ch].at(r, c) >= lo);
        CHECK(f.planes[ch].at(r, c) <= hi);
      }
  CHECK_THROWS_AS(bilateral_filter(img, 45, 45, 4), UsageError);
  CHECK_THROWS_AS(bilateral_filter(img, 0, 45, 3), UsageError);
}

TEST_CASE("adaptive median") {
  const auto img = fixtures::random_image(9, 9, 2);
  CHECK(adaptive_median(img, PixelMask(9, 9), 7) == img);

  auto flat = fixtures::uniform_image(11, 11, 60, 60, 60);
  flat.at(5, 5, 0) = 255;
  PixelMask region(11, 11);
  for (std::size_t r = 3; r < 8; ++r)
    for (std::size_t c = 3; c < 8; ++c) region.set(r, c);
  CHECK(adaptive_median(flat, region, 7).at(5, 5, 0) == 60);

  std::mt19937_64 rng(3);
  auto sp = fixtures::smooth_image(24, 24, 8);
  for (int k = 0; k < 60; ++k) {
    const auto r = rng() % 24, c = rng() % 24, ch = rng() % 3;
    sp.at(r, c, ch) = (rng() & 1) ? 255 : 0;
  }
  PixelMask flagged(24, 24);
  for (std::size_t r = 4; r < 20; ++r)
    for (std::size_t c = 2; c < 22; ++c) flagged.set(r, c);
  CHECK(adaptive_median(sp, flagged, 7) == oracle::adaptive_median(sp, flagged, 7));
  CHECK(adaptive_median(sp, flagged, 5) == oracle::adaptive_median(sp, flagged, 5));
  CHECK_THROWS_AS(adaptive_median(sp, flagged, 4), UsageError);
}

TEST_CASE("restore with nothing flagged is bilateral smoothing only") {
  const auto q = dequantize_image(quantize_image(fixtures::natural("chelsea")));
  RestoreParams p;
  p.t = 0;
  const auto r = restore(q, empty_masks(q.height(), q.width()), p);
  CHECK(r.restored == bilateral_filter(q, 45, 45, 9));
}

TEST_CASE("detection scope") {
  const auto q = dequantize_image(quantize_image(fixtures::natural("coffee")));
  const auto none = empty_masks(q.height(), q.width());
  // A clean decode is smoothed only, at default parameters.
  const auto clean = restore(q, none);
  CHECK(clean.restored == bilateral_filter(q, 45, 45, 9));
  for (const auto& m : clean.combined) CHECK(m.empty_mask());

  auto decoder = none;
  for (std::size_t r = 100; r < 110; ++r)
    for (std::size_t c = 200; c < 230; ++c) decoder[0].set(r, c);
  const auto found = detect_discoloration(quantize_image(q), 18);
  const auto damaged = restore(q, decoder);
  CHECK(damaged.detected[0] == found[0]);
  CHECK(damaged.detected[1].empty_mask());
  CHECK(damaged.detected[2].empty_mask());
  CHECK(damaged.combined[0] == combine_masks(found, decoder)[0]);

  RestoreParams all;
  all.detect = DetectionScope::all;
  const auto everywhere = restore(q, none, all);
  CHECK(everywhere.detected == found);
  CHECK(found[0].count() + found[1].count() + found[2].count() > 0);

  RestoreParams off;
  off.detect = DetectionScope::none;
  CHECK(restore(q, decoder, off).combined == decoder);

  CHECK(parse_detection_scope("all") == DetectionScope::all);
  CHECK(detection_scope_name(parse_detection_scope("damaged")) == "damaged");
  CHECK_THROWS_AS(parse_detection_scope("some"), UsageError);
}

TEST_CASE("smoothing budget on clean decodes at default parameters") {
  // Against the quantized reference a clean decode has infinite PSNR, so
  // the budget is measured against the unquantized original.
  for (const char* name : {"astronaut", "coffee", "chelsea"}) {
    const auto original = fixtures::natural(name);
    const auto q = dequantize_image(quantize_image(original));
    const auto r = restore(q, empty_masks(q.height(), q.width()));
    const double before = psnr(q, original), after = psnr(r.restored, original);
    MESSAGE(name << ": " << before << " dB -> " << after << " dB after restoring a clean decode");
    CHECK(before - after < 3.0);
  }
}

TEST_CASE("restore uses a supplied inpainter and rejects fully masked channels") {
  auto img = fixtures::uniform_image(10, 10, 100, 100, 100);
  MaskSet m = empty_masks(10, 10);
  m[2].set(4, 4);
  int calls = 0;
  const Inpainter fill = [&](const ChannelMatrix& ch, const PixelMask& mask) {
    ++calls;
    ChannelMatrix out = ch;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (mask[i]) out[i] = 100;
    return out;
  };
  img.at(4, 4, 2) = 0;
  const auto r = restore(img, m, RestoreParams{}, fill);
  CHECK(calls == 1);
  CHECK(r.inpainted.at(4, 4, 2) == 100);

  MaskSet full = empty_masks(10, 10);
  for (std::size_t i = 0; i < 100; ++i) full[0][i] = 1;
  CHECK_THROWS_AS(restore(img, full), DataError);
}
