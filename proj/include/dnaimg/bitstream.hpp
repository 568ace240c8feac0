#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dnaimg {

/// Growable bit string, most-significant bit first within each byte.
class BitBuffer {
public:
  BitBuffer() = default;

  std::size_t size() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }

  void push_bit(bool bit) {
    if ((bits_ & 7) == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ & 7));
    ++bits_;
  }

  /// Appends the low `count` bits of `value`, highest first.
  void push_bits(std::uint64_t value, unsigned count) {
    for (unsigned i = count; i-- > 0;) push_bit(((value >> i) & 1u) != 0);
  }

  void append(const BitBuffer& other) {
    for (std::size_t i = 0; i < other.size(); ++i) push_bit(other.bit(i));
  }

  bool bit(std::size_t i) const noexcept { return ((bytes_[i >> 3] >> (7 - (i & 7))) & 1u) != 0; }

  /// Reads `count` bits starting at `pos` as an unsigned integer.
  std::uint64_t read_bits(std::size_t pos, unsigned count) const noexcept {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint64_t>(bit(pos + i));
    return v;
  }

  BitBuffer slice(std::size_t pos, std::size_t count) const {
    BitBuffer out;
    for (std::size_t i = 0; i < count; ++i) out.push_bit(bit(pos + i));
    return out;
  }

  /// Pads with zero bits up to a multiple of `boundary`.
  void pad_to_multiple(std::size_t boundary) {
    while (bits_ % boundary != 0) push_bit(false);
  }

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

  friend bool operator==(const BitBuffer&, const BitBuffer&) = default;

private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

}  // namespace dnaimg
