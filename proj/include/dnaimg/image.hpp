#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dnaimg/error.hpp"

namespace dnaimg {

enum class Color : std::uint8_t { R = 0, G = 1, B = 2 };

inline constexpr std::array<Color, 3> kColors{Color::R, Color::G, Color::B};
inline constexpr int kLevelCount = 8;

constexpr char color_letter(Color c) noexcept {
  switch (c) {
    case Color::R: return 'R';
    case Color::G: return 'G';
    case Color::B: return 'B';
  }
  return '?';
}

constexpr std::size_t color_index(Color c) noexcept { return static_cast<std::size_t>(c); }

/// Row-major 2D matrix with value semantics.
template <class T>
class Plane {
public:
  Plane() = default;
  Plane(std::size_t height, std::size_t width, T fill = T{})
      : height_(height), width_(width), data_(height * width, fill) {}

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& at(std::size_t row, std::size_t col) noexcept { return data_[row * width_ + col]; }
  const T& at(std::size_t row, std::size_t col) const noexcept { return data_[row * width_ + col]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  bool same_shape(const Plane& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<T> data_;
};

/// One color plane of 8-bit intensities.
using ChannelMatrix = Plane<std::uint8_t>;

/// Boolean matrix of suspect or missing pixels; stored as 0/1 bytes.
class PixelMask : public Plane<std::uint8_t> {
public:
  PixelMask() = default;
  PixelMask(std::size_t height, std::size_t width) : Plane(height, width, 0) {}

  bool test(std::size_t row, std::size_t col) const noexcept { return at(row, col) != 0; }
  void set(std::size_t row, std::size_t col, bool v = true) noexcept { at(row, col) = v ? 1 : 0; }
  std::size_t count() const noexcept;
  bool empty_mask() const noexcept { return count() == 0; }
};

inline std::size_t PixelMask::count() const noexcept {
  std::size_t n = 0;
  for (auto v : values()) n += v != 0;
  return n;
}

/// Matrix of 3-bit intensity levels (0..7) tagged with its color plane.
struct QuantizedChannel {
  Color color = Color::R;
  Plane<std::uint8_t> levels;

  std::size_t height() const noexcept { return levels.height(); }
  std::size_t width() const noexcept { return levels.width(); }
  friend bool operator==(const QuantizedChannel&, const QuantizedChannel&) = default;
};

/// Interleaved 8-bit RGB image, row-major.
class RgbImage {
public:
  RgbImage() = default;
  RgbImage(std::size_t height, std::size_t width, std::uint8_t fill = 0)
      : height_(height), width_(width), pixels_(height * width * 3, fill) {
    if (height == 0 || width == 0) throw DataError("image dimensions must be positive");
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t pixel_count() const noexcept { return height_ * width_; }

  std::uint8_t& at(std::size_t row, std::size_t col, std::size_t channel) noexcept {
    return pixels_[(row * width_ + col) * 3 + channel];
  }
  std::uint8_t at(std::size_t row, std::size_t col, std::size_t channel) const noexcept {
    return pixels_[(row * width_ + col) * 3 + channel];
  }

  std::span<std::uint8_t> bytes() noexcept { return pixels_; }
  std::span<const std::uint8_t> bytes() const noexcept { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Three double-precision planes; used where filters need unrounded output.
struct PlanarImageF {
  std::array<Plane<double>, 3> planes;
  std::size_t height() const noexcept { return planes[0].height(); }
  std::size_t width() const noexcept { return planes[0].width(); }
};

}  // namespace dnaimg
