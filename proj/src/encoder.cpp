#include "dnaimg/encoder.hpp"

#include "dnaimg/pixel_pipeline.hpp"

namespace dnaimg {

std::string oligo_id(std::uint32_t image, Color color, int level, std::uint32_t block) {
  return "img" + std::to_string(image) + "_" + color_letter(color) + std::to_string(level) + "_blk" +
         std::to_string(block);
}

ImageStreams encode_image_streams(const RgbImage& image, double resync_rate) {
  ImageStreams s;
  s.quantized = quantize_image(image);
  std::vector<DiffStream> all;
  for (Color c : kColors) {
    const auto ci = color_index(c);
    s.linearized[ci] = linearize(s.quantized[ci]);
    const auto lists = partition_levels(s.linearized[ci], c);
    for (int j = 0; j < kLevelCount; ++j) {
      s.diff[ci][j] = diff_encode(lists[j], resync_rate);
      all.push_back(s.diff[ci][j]);
    }
  }
  s.table = HuffmanTable::build(all);
  for (Color c : kColors)
    for (int j = 0; j < kLevelCount; ++j)
      s.bits[color_index(c)][j] = huffman_encode(s.diff[color_index(c)][j], s.table);
  return s;
}

EncodeResult encode_images(std::span<const RgbImage> images, const EncodeOptions& options,
                           std::span<const std::string> names) {
  if (images.empty()) throw DataError("nothing to encode");
  if (images.size() > (std::size_t{1} << kAddressLayout.image_bits))
    throw DataError("too many images for the address space (max 16)");

  EncodeResult r;
  r.manifest.resync_rate = options.resync_rate;
  r.manifest.primer_seed = options.primer_seed;
  r.manifest.primers = design_primers(options.primer_seed);
  const std::uint32_t max_blocks = 1u << kAddressLayout.block_bits;

  for (std::uint32_t i = 0; i < images.size(); ++i) {
    const RgbImage& img = images[i];
    ImageStreams streams = encode_image_streams(img, options.resync_rate);
    ImageEntry entry;
    entry.index = i;
    entry.width = img.width();
    entry.height = img.height();
    entry.name = i < names.size() ? names[i] : "";
    entry.table = streams.table;

    for (Color c : kColors) {
      for (int j = 0; j < kLevelCount; ++j) {
        BitBuffer bits = streams.bits[color_index(c)][j];
        const std::uint64_t raw_bits = bits.size();
        bits.pad_to_multiple(kPayloadBits);
        const auto blocks = static_cast<std::uint32_t>(bits.size() / kPayloadBits);
        if (blocks > max_blocks)
          throw DataError("image " + std::to_string(i) + " stream " + color_letter(c) + std::to_string(j) +
                          " needs " + std::to_string(blocks) + " blocks; the address space holds 2048");
        entry.stream(c, j) = {c, static_cast<std::uint8_t>(j), raw_bits, blocks};
        r.stats.huffman_bits += raw_bits;
        const PrimerPair& primers = r.manifest.primers.pairs[static_cast<std::size_t>(j)];
        for (std::uint32_t b = 0; b < blocks; ++b) {
          const AddressFields fields{i, static_cast<std::uint32_t>(j), b};
          r.pool.push_back({oligo_id(i, c, j, b),
                            assemble_oligo(primers, address_string(c, fields), bits.slice(b * kPayloadBits, kPayloadBits))});
        }
      }
    }
    r.stats.source_bits += 24ull * img.pixel_count();
    r.manifest.images.push_back(std::move(entry));
    r.images.push_back(std::move(streams));
  }
  r.stats.oligos = r.pool.size();
  r.stats.payload_nt = r.stats.oligos * kPayloadLength;
  r.stats.total_nt = r.stats.oligos * kOligoLength;
  return r;
}

}  // namespace dnaimg
