#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dnaimg/bitstream.hpp"
#include "dnaimg/level_codec.hpp"

namespace dnaimg {

/// Canonical prefix code over differential symbols.
///
/// Only the code lengths are stored; codewords follow from sorting
/// symbols by (length, value) and counting upward. This is also the
/// serialized form.
class HuffmanTable {
public:
  struct Entry {
    Symbol symbol;
    unsigned length;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  HuffmanTable() = default;

  /// Optimal lengths for the given frequencies. A one-symbol alphabet
  /// gets a 1-bit code. Throws DataError on an empty alphabet.
  static HuffmanTable build(const std::map<Symbol, std::uint64_t>& frequencies);
  static HuffmanTable build(std::span<const DiffStream> streams);
  /// Throws DataError if the lengths violate Kraft's inequality.
  static HuffmanTable from_lengths(std::vector<Entry> entries);

  /// Entries in canonical order.
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool contains(Symbol s) const { return codes_.count(s) != 0; }
  /// Codeword (right-aligned) and length. Throws DataError for unknown symbols.
  std::pair<std::uint64_t, unsigned> code(Symbol s) const;
  unsigned max_length() const noexcept { return max_length_; }
  double kraft_sum() const;

  /// Decodes one symbol at `pos`, advancing it. Returns nullopt when the
  /// buffer ends before a codeword completes (or no codeword matches).
  std::optional<Symbol> decode_one(const BitBuffer& bits, std::size_t& pos, std::size_t end) const;

  friend bool operator==(const HuffmanTable& a, const HuffmanTable& b) { return a.entries_ == b.entries_; }

private:
  void assign_codes();

  std::vector<Entry> entries_;
  std::unordered_map<Symbol, std::pair<std::uint64_t, unsigned>> codes_;
  // Canonical decoding tables indexed by length.
  std::vector<std::uint64_t> first_code_;
  std::vector<std::uint32_t> first_index_;
  std::vector<std::uint32_t> count_;
  unsigned max_length_ = 0;
};

std::map<Symbol, std::uint64_t> symbol_frequencies(std::span<const DiffStream> streams);

/// Mean code length weighted by `frequencies`.
double mean_code_length(const HuffmanTable& table, const std::map<Symbol, std::uint64_t>& frequencies);
/// Empirical entropy in bits per symbol.
double empirical_entropy(const std::map<Symbol, std::uint64_t>& frequencies);

BitBuffer huffman_encode(const DiffStream& stream, const HuffmanTable& table);

struct HuffmanDecodeResult {
  DiffStream stream;
  std::size_t bits_consumed = 0;
  bool terminated = false;  // false if bits ran out before -2
};

/// Greedy prefix decoding that stops after -2; trailing bits are padding.
HuffmanDecodeResult huffman_decode(const BitBuffer& bits, const HuffmanTable& table, Color color = Color::R,
                                   std::uint8_t level = 0);

}  // namespace dnaimg
