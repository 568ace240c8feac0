#include <algorithm>
#include <cmath>
#include <limits>

#include "internal.hpp"

namespace dnaimg::kernels {
namespace detail {

void bilateral_pixel(const BilateralRowArgs& args, std::size_t row, std::size_t col) {
  const int r = args.radius;
  const int side = 2 * r + 1;
  const auto h = static_cast<int>(args.height);
  const auto w = static_cast<int>(args.width);
  const int y = static_cast<int>(row);
  const int x = static_cast<int>(col);
  const int ylo = std::max(0, y - r), yhi = std::min(h - 1, y + r);
  const int xlo = std::max(0, x - r), xhi = std::min(w - 1, x + r);
  const std::size_t centre = row * args.width + col;
  const double c0 = args.planes[0][centre], c1 = args.planes[1][centre], c2 = args.planes[2][centre];

  double num0 = 0.0, num1 = 0.0, num2 = 0.0, den = 0.0;
  for (int yy = ylo; yy <= yhi; ++yy) {
    const double* srow = args.spatial_weights + (yy - y + r) * side + r;
    const std::size_t base = static_cast<std::size_t>(yy) * args.width;
    for (int xx = xlo; xx <= xhi; ++xx) {
      const double v0 = args.planes[0][base + xx];
      const double v1 = args.planes[1][base + xx];
      const double v2 = args.planes[2][base + xx];
      const double d0 = c0 - v0, d1 = c1 - v1, d2 = c2 - v2;
      const double dist = d0 * d0 + d1 * d1 + d2 * d2;
      const double wgt = srow[xx - x] * args.range_weights[static_cast<std::int32_t>(dist)];
      num0 += wgt * v0;
      num1 += wgt * v1;
      num2 += wgt * v2;
      den += wgt;
    }
  }
  args.out[0][col] = num0 / den;
  args.out[1][col] = num1 / den;
  args.out[2][col] = num2 / den;
}

double diffusion_update(const DiffusionSweepArgs& a, std::size_t p) {
  if (!a.target[p]) {
    a.next_value[p] = a.value[p];
    a.next_known[p] = a.known[p];
    return 0.0;
  }
  const std::size_t stride = a.width + 2;
  const double kn = a.known[p - stride], ks = a.known[p + stride];
  const double kw = a.known[p - 1], ke = a.known[p + 1];
  const double sum = ((kn * a.value[p - stride] + ks * a.value[p + stride]) + kw * a.value[p - 1]) +
                     ke * a.value[p + 1];
  const double cnt = ((kn + ks) + kw) + ke;
  if (cnt > 0.0) {
    const double v = sum / cnt;
    const double change = a.known[p] > 0.0 ? std::fabs(v - a.value[p])
                                           : std::numeric_limits<double>::infinity();
    a.next_value[p] = v;
    a.next_known[p] = 1.0;
    return change;
  }
  a.next_value[p] = a.value[p];
  a.next_known[p] = a.known[p];
  return a.known[p] > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace detail

namespace {

void quantize_scalar(const std::uint8_t* in, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(in[i] >> 5);
}

std::uint64_t ssd_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int d = int(a[i]) - int(b[i]);
    s += static_cast<std::uint64_t>(d * d);
  }
  return s;
}

void bilateral_row_scalar(const BilateralRowArgs& args, std::size_t row) {
  for (std::size_t col = 0; col < args.width; ++col) detail::bilateral_pixel(args, row, col);
}

double diffusion_scalar(const DiffusionSweepArgs& a) {
  const std::size_t stride = a.width + 2;
  double worst = 0.0;
  for (std::size_t y = 1; y <= a.height; ++y)
    for (std::size_t x = 1; x <= a.width; ++x)
      worst = std::max(worst, detail::diffusion_update(a, y * stride + x));
  return worst;
}

constexpr KernelTable kScalar{Isa::Scalar, quantize_scalar, ssd_scalar, bilateral_row_scalar, diffusion_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace dnaimg::kernels
