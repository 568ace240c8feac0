#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dnaimg/fasta.hpp"
#include "dnaimg/manifest.hpp"

namespace dnaimg {

struct EncodeOptions {
  double resync_rate = kDefaultResyncRate;
  std::uint64_t primer_seed = kDefaultPrimerSeed;
};

using StreamGrid = std::array<std::array<DiffStream, kLevelCount>, 3>;
using BitGrid = std::array<std::array<BitBuffer, kLevelCount>, 3>;

/// Every intermediate product of one image's binary encoding.
struct ImageStreams {
  std::array<QuantizedChannel, 3> quantized;
  std::array<LevelVector, 3> linearized;
  StreamGrid diff;
  HuffmanTable table;
  BitGrid bits;
};

ImageStreams encode_image_streams(const RgbImage& image, double resync_rate);

struct EncodeStats {
  std::size_t oligos = 0;
  std::uint64_t source_bits = 0;   // 24 bits per source pixel
  std::uint64_t huffman_bits = 0;  // before padding
  std::uint64_t payload_nt = 0;
  std::uint64_t total_nt = 0;
  double bits_per_payload_nt() const noexcept { return payload_nt ? double(source_bits) / double(payload_nt) : 0.0; }
  double bits_per_total_nt() const noexcept { return total_nt ? double(source_bits) / double(total_nt) : 0.0; }
};

struct EncodeResult {
  Pool pool;
  Manifest manifest;
  EncodeStats stats;
  std::vector<ImageStreams> images;
};

/// `img<i>_<color><level>_blk<b>`
std::string oligo_id(std::uint32_t image, Color color, int level, std::uint32_t block);

/// Encodes up to 16 images into one pool. Throws DataError when a stream
/// needs more than 2048 blocks or there are too many images.
EncodeResult encode_images(std::span<const RgbImage> images, const EncodeOptions& options = {},
                           std::span<const std::string> names = {});

}  // namespace dnaimg
