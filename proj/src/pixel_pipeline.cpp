#include "dnaimg/pixel_pipeline.hpp"

#include "dnaimg/kernels.hpp"

namespace dnaimg {

std::array<ChannelMatrix, 3> split_channels(const RgbImage& image) {
  std::array<ChannelMatrix, 3> out{ChannelMatrix(image.height(), image.width()),
                                   ChannelMatrix(image.height(), image.width()),
                                   ChannelMatrix(image.height(), image.width())};
  const auto px = image.bytes();
  for (std::size_t i = 0; i < image.pixel_count(); ++i)
    for (std::size_t c = 0; c < 3; ++c) out[c][i] = px[3 * i + c];
  return out;
}

RgbImage merge_channels(const std::array<ChannelMatrix, 3>& channels) {
  const auto& r = channels[0];
  if (!r.same_shape(channels[1]) || !r.same_shape(channels[2]))
    throw DataError("channel dimensions differ");
  RgbImage image(r.height(), r.width());
  auto px = image.bytes();
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t c = 0; c < 3; ++c) px[3 * i + c] = channels[c][i];
  return image;
}

QuantizedChannel quantize_channel(const ChannelMatrix& channel, Color color) {
  QuantizedChannel q{color, Plane<std::uint8_t>(channel.height(), channel.width())};
  kernels::active().quantize_u8(channel.data(), q.levels.data(), channel.size());
  return q;
}

ChannelMatrix dequantize_channel(const QuantizedChannel& q) {
  ChannelMatrix out(q.height(), q.width());
  for (std::size_t i = 0; i < q.levels.size(); ++i) {
    if (q.levels[i] >= kLevelCount) throw DataError("quantized level out of range");
    out[i] = dequantize_level(q.levels[i]);
  }
  return out;
}

std::array<QuantizedChannel, 3> quantize_image(const RgbImage& image) {
  const auto planes = split_channels(image);
  return {quantize_channel(planes[0], Color::R), quantize_channel(planes[1], Color::G),
          quantize_channel(planes[2], Color::B)};
}

RgbImage dequantize_image(const std::array<QuantizedChannel, 3>& channels) {
  return merge_channels({dequantize_channel(channels[0]), dequantize_channel(channels[1]),
                         dequantize_channel(channels[2])});
}

}  // namespace dnaimg
