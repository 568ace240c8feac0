#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "internal.hpp"

namespace dnaimg::kernels {
namespace {

void quantize_avx2(const std::uint8_t* in, std::uint8_t* out, std::size_t n) {
  const __m256i low3 = _mm256_set1_epi8(0x07);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + i));
    const __m256i q = _mm256_and_si256(_mm256_srli_epi16(v, 5), low3);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), q);
  }
  for (; i < n; ++i) out[i] = static_cast<std::uint8_t>(in[i] >> 5);
}

std::uint64_t ssd_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i va = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
    const __m256i vb = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
    const __m256i d = _mm256_sub_epi16(va, vb);
    const __m256i sq = _mm256_madd_epi16(d, d);  // 8 x int32, each <= 2*255^2
    acc = _mm256_add_epi64(acc, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(sq)));
    acc = _mm256_add_epi64(acc, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(sq, 1)));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    const int d = int(a[i]) - int(b[i]);
    s += static_cast<std::uint64_t>(d * d);
  }
  return s;
}

// Four adjacent output pixels per iteration; each lane walks the window in
// the same (dy, dx) order as the scalar kernel.
void bilateral_row_avx2(const BilateralRowArgs& args, std::size_t row) {
  const int r = args.radius;
  const int side = 2 * r + 1;
  const auto w = static_cast<int>(args.width);
  const auto h = static_cast<int>(args.height);
  const int y = static_cast<int>(row);
  const int ylo = std::max(0, y - r), yhi = std::min(h - 1, y + r);
  const int simd_lo = r;
  const int simd_hi = w - r - 4;  // last x whose 4-lane window stays inside

  int x = 0;
  for (; x < std::min(simd_lo, w); ++x) detail::bilateral_pixel(args, row, static_cast<std::size_t>(x));
  for (; x <= simd_hi; x += 4) {
    const std::size_t centre = row * args.width + static_cast<std::size_t>(x);
    const __m256d c0 = _mm256_loadu_pd(args.planes[0] + centre);
    const __m256d c1 = _mm256_loadu_pd(args.planes[1] + centre);
    const __m256d c2 = _mm256_loadu_pd(args.planes[2] + centre);
    __m256d num0 = _mm256_setzero_pd(), num1 = _mm256_setzero_pd(), num2 = _mm256_setzero_pd();
    __m256d den = _mm256_setzero_pd();
    for (int yy = ylo; yy <= yhi; ++yy) {
      const double* srow = args.spatial_weights + (yy - y + r) * side;
      const std::size_t base = static_cast<std::size_t>(yy) * args.width + static_cast<std::size_t>(x - r);
      for (int k = 0; k < side; ++k) {
        const __m256d v0 = _mm256_loadu_pd(args.planes[0] + base + k);
        const __m256d v1 = _mm256_loadu_pd(args.planes[1] + base + k);
        const __m256d v2 = _mm256_loadu_pd(args.planes[2] + base + k);
        const __m256d d0 = _mm256_sub_pd(c0, v0);
        const __m256d d1 = _mm256_sub_pd(c1, v1);
        const __m256d d2 = _mm256_sub_pd(c2, v2);
        const __m256d dist =
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(d0, d0), _mm256_mul_pd(d1, d1)), _mm256_mul_pd(d2, d2));
        const __m128i idx = _mm256_cvttpd_epi32(dist);
        const __m256d rw = _mm256_i32gather_pd(args.range_weights, idx, 8);
        const __m256d wgt = _mm256_mul_pd(_mm256_set1_pd(srow[k]), rw);
        num0 = _mm256_add_pd(num0, _mm256_mul_pd(wgt, v0));
        num1 = _mm256_add_pd(num1, _mm256_mul_pd(wgt, v1));
        num2 = _mm256_add_pd(num2, _mm256_mul_pd(wgt, v2));
        den = _mm256_add_pd(den, wgt);
      }
    }
    _mm256_storeu_pd(args.out[0] + x, _mm256_div_pd(num0, den));
    _mm256_storeu_pd(args.out[1] + x, _mm256_div_pd(num1, den));
    _mm256_storeu_pd(args.out[2] + x, _mm256_div_pd(num2, den));
  }
  for (; x < w; ++x) detail::bilateral_pixel(args, row, static_cast<std::size_t>(x));
}

double diffusion_avx2(const DiffusionSweepArgs& a) {
  const std::size_t stride = a.width + 2;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d worst_v = zero;
  double worst = 0.0;

  for (std::size_t y = 1; y <= a.height; ++y) {
    std::size_t x = 1;
    for (; x + 3 <= a.width; x += 4) {
      const std::size_t p = y * stride + x;
      std::int32_t tbytes;
      std::memcpy(&tbytes, a.target + p, 4);
      const __m256i t64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(tbytes));
      const __m256d is_target = _mm256_castsi256_pd(_mm256_cmpgt_epi64(t64, _mm256_setzero_si256()));

      const __m256d val = _mm256_loadu_pd(a.value + p);
      const __m256d kn0 = _mm256_loadu_pd(a.known + p);
      const __m256d kn = _mm256_loadu_pd(a.known + p - stride);
      const __m256d ks = _mm256_loadu_pd(a.known + p + stride);
      const __m256d kw = _mm256_loadu_pd(a.known + p - 1);
      const __m256d ke = _mm256_loadu_pd(a.known + p + 1);
      const __m256d vn = _mm256_loadu_pd(a.value + p - stride);
      const __m256d vs = _mm256_loadu_pd(a.value + p + stride);
      const __m256d vw = _mm256_loadu_pd(a.value + p - 1);
      const __m256d ve = _mm256_loadu_pd(a.value + p + 1);

      const __m256d sum = _mm256_add_pd(
          _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(kn, vn), _mm256_mul_pd(ks, vs)), _mm256_mul_pd(kw, vw)),
          _mm256_mul_pd(ke, ve));
      const __m256d cnt = _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(kn, ks), kw), ke);
      const __m256d has_nb = _mm256_cmp_pd(cnt, zero, _CMP_GT_OQ);
      const __m256d was_known = _mm256_cmp_pd(kn0, zero, _CMP_GT_OQ);
      const __m256d avg = _mm256_div_pd(sum, cnt);

      const __m256d upd = _mm256_and_pd(is_target, has_nb);
      const __m256d nv = _mm256_blendv_pd(val, avg, upd);
      const __m256d nk = _mm256_blendv_pd(kn0, one, upd);
      // target & known: |avg - val| if has_nb else 0; target & unknown: inf.
      const __m256d diff = _mm256_and_pd(_mm256_sub_pd(avg, val), abs_mask);
      __m256d change = _mm256_blendv_pd(zero, diff, has_nb);
      change = _mm256_blendv_pd(inf, change, was_known);
      change = _mm256_and_pd(change, is_target);

      _mm256_storeu_pd(a.next_value + p, nv);
      _mm256_storeu_pd(a.next_known + p, nk);
      worst_v = _mm256_max_pd(worst_v, change);
    }
    for (; x <= a.width; ++x) worst = std::max(worst, detail::diffusion_update(a, y * stride + x));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, worst_v);
  for (double v : lanes) worst = std::max(worst, v);
  return worst;
}

constexpr KernelTable kAvx2{Isa::Avx2, quantize_avx2, ssd_avx2, bilateral_row_avx2, diffusion_avx2};

}  // namespace

const KernelTable& detail::avx2_table() noexcept { return kAvx2; }

}  // namespace dnaimg::kernels
