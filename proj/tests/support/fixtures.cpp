#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dnaimg/image_io.hpp"

namespace fixtures {

std::string data_path(const std::string& name) { return std::string(DNAIMG_TEST_DATA_DIR) + "/" + name; }

dnaimg::RgbImage natural(const std::string& name) { return dnaimg::read_image(data_path(name + ".ppm")); }

dnaimg::RgbImage crop(const dnaimg::RgbImage& img, std::size_t rows, std::size_t cols) {
  dnaimg::RgbImage out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t ch = 0; ch < 3; ++ch) out.at(r, c, ch) = img.at(r, c, ch);
  return out;
}

dnaimg::RgbImage random_image(std::size_t h, std::size_t w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  dnaimg::RgbImage img(h, w);
  for (auto& v : img.bytes()) v = static_cast<std::uint8_t>(rng() >> 56);
  return img;
}

dnaimg::RgbImage smooth_image(std::size_t h, std::size_t w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double fx = 1.0 + 3.0 * u(rng), fy = 1.0 + 3.0 * u(rng), ph = 6.3 * u(rng);
  const double off[3] = {-12.0 + 24.0 * u(rng), -12.0 + 24.0 * u(rng), -12.0 + 24.0 * u(rng)};
  dnaimg::RgbImage img(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double x = double(c) / double(w), y = double(r) / double(h);
      const double lum = 128.0 + 70.0 * std::sin(6.283 * fx * x + ph) * std::cos(6.283 * fy * y) + 30.0 * (x - y);
      for (std::size_t ch = 0; ch < 3; ++ch)
        img.at(r, c, ch) = static_cast<std::uint8_t>(std::clamp(lum + off[ch], 0.0, 255.0));
    }
  }
  return img;
}

dnaimg::RgbImage uniform_image(std::size_t h, std::size_t w, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  dnaimg::RgbImage img(h, w);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) {
      img.at(i, j, 0) = r;
      img.at(i, j, 1) = g;
      img.at(i, j, 2) = b;
    }
  return img;
}

}  // namespace fixtures
