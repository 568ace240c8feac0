#pragma once

#include <array>
#include <cstdint>

#include "dnaimg/image.hpp"

namespace dnaimg {

/// floor(v * 8 / 256): maps 0..255 onto the 8 intensity levels.
constexpr std::uint8_t quantize_value(std::uint8_t v) noexcept { return static_cast<std::uint8_t>(v >> 5); }

/// Bin midpoint of a level: 32 * level + 16.
constexpr std::uint8_t dequantize_level(std::uint8_t level) noexcept {
  return static_cast<std::uint8_t>(32 * level + 16);
}

std::array<ChannelMatrix, 3> split_channels(const RgbImage& image);
RgbImage merge_channels(const std::array<ChannelMatrix, 3>& channels);

QuantizedChannel quantize_channel(const ChannelMatrix& channel, Color color);
/// Throws DataError if any level lies outside 0..7.
ChannelMatrix dequantize_channel(const QuantizedChannel& q);

std::array<QuantizedChannel, 3> quantize_image(const RgbImage& image);
RgbImage dequantize_image(const std::array<QuantizedChannel, 3>& channels);

}  // namespace dnaimg
