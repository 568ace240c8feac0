#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dnaimg/dna_layer.hpp"
#include "dnaimg/huffman.hpp"

namespace dnaimg {

struct StreamInfo {
  Color color = Color::R;
  std::uint8_t level = 0;
  std::uint64_t bits = 0;    // Huffman bits before padding
  std::uint32_t blocks = 0;  // ceil(bits / 242)
  friend bool operator==(const StreamInfo&, const StreamInfo&) = default;
};

struct ImageEntry {
  std::uint32_t index = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string name;
  HuffmanTable table;
  std::array<StreamInfo, 3 * kLevelCount> streams;

  StreamInfo& stream(Color c, int level) { return streams[color_index(c) * kLevelCount + static_cast<std::size_t>(level)]; }
  const StreamInfo& stream(Color c, int level) const {
    return streams[color_index(c) * kLevelCount + static_cast<std::size_t>(level)];
  }
  friend bool operator==(const ImageEntry&, const ImageEntry&) = default;
};

/// Sidecar metadata the decoder needs next to the pool: dimensions, code
/// tables, layouts, primers and stream sizes.
struct Manifest {
  static constexpr int kVersion = 1;
  int version = kVersion;
  double resync_rate = kDefaultResyncRate;
  AddressLayout address_layout = kAddressLayout;
  std::uint64_t primer_seed = kDefaultPrimerSeed;
  PrimerSet primers;
  std::vector<ImageEntry> images;

  std::size_t expected_oligo_count() const noexcept;
  friend bool operator==(const Manifest&, const Manifest&) = default;
};

std::string serialize_manifest(const Manifest& manifest);
/// Throws DataError on malformed or unsupported documents.
Manifest parse_manifest(std::string_view json_text);

Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace dnaimg
