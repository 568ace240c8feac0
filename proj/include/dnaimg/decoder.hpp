#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dnaimg/fasta.hpp"
#include "dnaimg/level_codec.hpp"
#include "dnaimg/manifest.hpp"

namespace dnaimg {

struct StreamKey {
  std::uint32_t image = 0;
  Color color = Color::R;
  std::uint8_t level = 0;
  friend auto operator<=>(const StreamKey&, const StreamKey&) = default;
};

struct AddressTarget {
  StreamKey key;
  std::uint32_t block = 0;
  friend bool operator==(const AddressTarget&, const AddressTarget&) = default;
};

/// All addresses the manifest says were emitted.
class AddressBook {
public:
  explicit AddressBook(const Manifest& manifest);
  std::size_t size() const noexcept { return addresses_.size(); }
  const std::vector<std::string>& addresses() const noexcept { return addresses_; }
  const AddressTarget& target(std::size_t i) const { return targets_[i]; }
  std::optional<std::size_t> find_exact(std::string_view address) const;

private:
  std::vector<std::string> addresses_;
  std::vector<AddressTarget> targets_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

struct IdentifierMatch {
  std::optional<AddressTarget> target;  // empty when the nearest is tied
  unsigned distance = 0;
  bool corrected = false;
};

/// Unique nearest expected address by Hamming distance.
IdentifierMatch correct_identifier(std::string_view address, const AddressBook& book);

struct RecoveredBlock {
  BitBuffer bits;  // 242 bits
  unsigned corrected_blocks = 0;
};

struct RecoveredStream {
  StreamKey key;
  std::uint64_t bits = 0;                         // from the manifest
  std::vector<std::optional<RecoveredBlock>> blocks;  // empty slot = gap
  std::size_t gaps() const noexcept;
  std::size_t corrected_blocks() const noexcept;
};

struct RoutingStats {
  std::size_t records = 0;
  std::size_t routed = 0;
  std::size_t identifiers_corrected = 0;
  std::size_t discarded_ambiguous = 0;
  std::size_t discarded_malformed = 0;
  std::size_t duplicates = 0;
  std::size_t primer_mismatches = 0;  // primer level disagrees with address level
};

struct RecoveredStreams {
  std::map<StreamKey, RecoveredStream> streams;
  RoutingStats stats;
  std::size_t total_gaps() const noexcept;
};

/// Routes consensus oligos to their streams; loss-tolerant.
RecoveredStreams recover_streams(const Pool& pool, const Manifest& manifest);

inline constexpr std::size_t kRealignProbeBudget = 4096;

struct StreamDecodeReport {
  std::size_t gaps = 0;
  std::size_t realign_attempts = 0;
  std::size_t realign_successes = 0;
  std::size_t realign_failures = 0;  // segments skipped without a lock
  std::size_t premature_terminators = 0;
  std::size_t dropped_symbols = 0;
  std::size_t retracted_indices = 0;
  bool terminated = false;
};

struct StreamDecodeResult {
  LevelIndexList list;
  StreamDecodeReport report;
};

/// Huffman + differential decoding with realignment after gaps. `limit`
/// bounds indices (pixel count).
StreamDecodeResult decode_stream_with_realignment(const RecoveredStream& stream, const HuffmanTable& table,
                                                  std::uint64_t limit, double resync_rate);

struct DecodedImage {
  std::uint32_t index = 0;
  std::string name;
  std::array<QuantizedChannel, 3> channels;
  std::array<PixelMask, 3> masks;  // unassigned or conflicting pixels
  std::array<std::array<StreamDecodeReport, kLevelCount>, 3> streams;
  std::array<std::array<LevelIndexList, kLevelCount>, 3> lists;
};

DecodedImage reconstruct_image(const ImageEntry& entry,
                               const std::array<std::array<LevelIndexList, kLevelCount>, 3>& lists);

struct DecodeResult {
  std::vector<DecodedImage> images;
  RoutingStats routing;
  std::size_t gaps = 0;
};

DecodeResult decode_pool(const Pool& pool, const Manifest& manifest);

std::string decode_report_json(const DecodeResult& result);

}  // namespace dnaimg
