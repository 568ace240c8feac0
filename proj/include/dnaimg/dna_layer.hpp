#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnaimg/bitstream.hpp"
#include "dnaimg/image.hpp"

namespace dnaimg {

inline constexpr std::string_view kNucleotides = "ACGT";  // lexicographic order

inline constexpr std::size_t kPrimerLength = 20;
inline constexpr std::size_t kColorCodeLength = 3;
inline constexpr std::size_t kPackedAddressLength = 10;
inline constexpr std::size_t kAddressLength = kColorCodeLength + kPackedAddressLength;
inline constexpr std::size_t kPayloadBlocks = 11;
inline constexpr std::size_t kPayloadBlockLength = 13;
inline constexpr std::size_t kPayloadBlockBits = 22;
inline constexpr std::size_t kPayloadLength = kPayloadBlocks * kPayloadBlockLength;  // 143
inline constexpr std::size_t kPayloadBits = kPayloadBlocks * kPayloadBlockBits;      // 242
inline constexpr std::size_t kOligoLength = 2 * kPrimerLength + kAddressLength + kPayloadLength;  // 196

std::size_t hamming_distance(std::string_view a, std::string_view b) noexcept;
/// GC fraction of the string.
std::size_t gc_count(std::string_view s) noexcept;
/// Longest homopolymer run of nucleotide `n` in `s`.
std::size_t longest_run(std::string_view s, char n) noexcept;

struct BlockGeometry {
  unsigned payload_bits;
  unsigned length;
  friend bool operator==(const BlockGeometry&, const BlockGeometry&) = default;
};
inline constexpr BlockGeometry kAddressGeometry{18, 10};
inline constexpr BlockGeometry kPayloadGeometry{22, 13};

struct BlockDecode {
  std::uint32_t value;
  bool corrected;     // input was not a codeword
  unsigned distance;  // Hamming distance to the returned codeword
};

/// Enumerative constrained code over nucleotide words of fixed length.
///
/// Valid words have GC count in [ceil(0.4 L), floor(0.6 L)] and no run of
/// C or of G longer than 3. Index i maps to the i-th valid word in
/// lexicographic order (A < C < G < T); the first 2^payload_bits valid
/// words form the code. Ranking and unranking walk a completion-count
/// table, so the word list is never materialized.
class ConstrainedCodebook {
public:
  static constexpr std::size_t kMaxRun = 3;

  /// Throws DataError if fewer than 2^payload_bits valid words exist.
  explicit ConstrainedCodebook(BlockGeometry geometry);

  BlockGeometry geometry() const noexcept { return geometry_; }
  unsigned gc_min() const noexcept { return gc_min_; }
  unsigned gc_max() const noexcept { return gc_max_; }
  std::uint64_t valid_word_count() const noexcept { return total_; }
  std::uint64_t capacity() const noexcept { return std::uint64_t{1} << geometry_.payload_bits; }

  bool satisfies_constraints(std::string_view word) const noexcept;
  /// Lexicographic rank among valid words; nullopt for invalid words.
  std::optional<std::uint64_t> rank(std::string_view word) const;
  /// Inverse of rank; index must be below valid_word_count().
  std::string unrank(std::uint64_t index) const;

  /// Throws DataError if value does not fit in payload_bits.
  std::string encode(std::uint64_t value) const;
  /// Nearest codeword by Hamming distance, ties to the lexicographically
  /// smallest. Total over all strings of the right length over ACGT;
  /// other inputs throw DataError.
  BlockDecode decode(std::string_view word) const;

private:
  // Run state: 0 = last symbol not C/G, 1..3 = C run, 4..6 = G run.
  static constexpr int kStates = 7;
  static int next_state(int state, char n) noexcept;
  std::uint64_t completions(unsigned remaining, unsigned gc, int state) const noexcept;

  BlockGeometry geometry_;
  unsigned gc_min_;
  unsigned gc_max_;
  std::vector<std::uint64_t> table_;  // [remaining][gc][state]
  std::uint64_t total_ = 0;
};

/// The two codebooks used by oligos; built once and shared read-only.
struct Codebooks {
  ConstrainedCodebook address{kAddressGeometry};
  ConstrainedCodebook payload{kPayloadGeometry};
};
const Codebooks& codebooks();

// Color code: R = ATC, G = TCG, B = GAT.
inline constexpr std::array<std::string_view, 3> kColorCodewords{"ATC", "TCG", "GAT"};

std::string_view encode_color(Color c) noexcept;

struct ColorDecode {
  std::optional<Color> color;  // empty when ambiguous
  bool corrected = false;
  unsigned distance = 0;
};
/// Nearest color codeword; equidistant inputs decode as ambiguous.
ColorDecode decode_color(std::string_view nt3);
/// Minimum pairwise Hamming distance of the color code.
unsigned color_code_min_distance() noexcept;

struct AddressLayout {
  unsigned image_bits = 4;
  unsigned level_bits = 3;
  unsigned block_bits = 11;
  unsigned total() const noexcept { return image_bits + level_bits + block_bits; }
  friend bool operator==(const AddressLayout&, const AddressLayout&) = default;
};
inline constexpr AddressLayout kAddressLayout{};

struct AddressFields {
  std::uint32_t image = 0;
  std::uint32_t level = 0;
  std::uint32_t block = 0;
  friend bool operator==(const AddressFields&, const AddressFields&) = default;
};

/// image | level | block, most significant first. Throws DataError on overflow.
std::uint32_t pack_address(const AddressFields& fields);
AddressFields unpack_address(std::uint32_t packed);

/// 13-nt address: color code followed by the packed 10-nt codeword.
std::string address_string(Color color, const AddressFields& fields);

struct PrimerPair {
  std::string forward;
  std::string reverse;
  friend bool operator==(const PrimerPair&, const PrimerPair&) = default;
};

struct PrimerSet {
  std::array<PrimerPair, kLevelCount> pairs;  // indexed by level
  friend bool operator==(const PrimerSet&, const PrimerSet&) = default;
};

/// Tm = 2 (A + T) + 4 (G + C).
int wallace_tm(std::string_view s) noexcept;

/// Seeded random search with rejection: GC 40-60%, runs <= 3, pairwise
/// distance >= 10 across all 16 primers, |dTm| <= 2 within a pair.
/// Throws DataError when the attempt budget runs out.
PrimerSet design_primers(std::uint64_t seed, std::size_t attempt_budget = 1'000'000);
inline constexpr std::uint64_t kDefaultPrimerSeed = 20200501;
inline constexpr std::size_t kPrimerMinDistance = 10;

/// Assembles prefix + address + 11 payload blocks + suffix. Throws
/// DataError unless the payload holds exactly 242 bits and the address 13 nt.
std::string assemble_oligo(const PrimerPair& primers, std::string_view address, const BitBuffer& payload);

struct ParsedOligo {
  std::string prefix_primer;
  std::string address;
  std::string suffix_primer;
  std::optional<std::uint8_t> primer_level;  // empty for an unknown primer
  unsigned primer_distance = 0;
  BitBuffer payload;
  std::array<bool, kPayloadBlocks> corrected{};
  unsigned corrected_blocks() const noexcept;
};

/// Splits fields positionally and decodes each payload block with
/// nearest-codeword fallback. Throws DataError on a wrong length.
ParsedOligo parse_oligo(std::string_view oligo, const PrimerSet& primers);

}  // namespace dnaimg
