#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dnaimg/hilbert_scan.hpp"
#include "dnaimg/image.hpp"

namespace dnaimg {

using Symbol = std::int64_t;
inline constexpr Symbol kResyncMarker = -1;
inline constexpr Symbol kTerminator = -2;
inline constexpr double kDefaultResyncRate = 0.03;

/// Positions (in scan order) of one intensity level, strictly increasing.
struct LevelIndexList {
  Color color = Color::R;
  std::uint8_t level = 0;
  std::vector<std::uint32_t> indices;
  friend bool operator==(const LevelIndexList&, const LevelIndexList&) = default;
};

/// Differential symbols: -1 precedes an absolute index, -2 terminates.
struct DiffStream {
  Color color = Color::R;
  std::uint8_t level = 0;
  std::vector<Symbol> symbols;
  friend bool operator==(const DiffStream&, const DiffStream&) = default;
};

std::array<LevelIndexList, kLevelCount> partition_levels(const LevelVector& vector, Color color);

struct MergedLevels {
  LevelVector values;
  std::vector<std::uint8_t> unknown;  // 1 where no level, or more than one, claimed the position
};

/// Total inverse of partition_levels. Unclaimed positions become level 0,
/// multiply-claimed positions take the lowest claiming level; both are
/// flagged unknown. Out-of-range indices are ignored.
MergedLevels merge_levels(std::span<const LevelIndexList> lists, std::size_t length);

/// Values between resync markers: ceil(1 / rate). Throws UsageError unless
/// 0 < rate <= 1.
std::size_t resync_period(double rate);

/// Emits -1 + absolute before value 0 and every resync_period values after,
/// differences elsewhere, and a trailing -2. Throws DataError if the list
/// is not strictly increasing.
DiffStream diff_encode(const LevelIndexList& list, double resync_rate);

/// Incremental decoder for differential symbols. Indices must be strictly
/// increasing and below `limit`. A difference that breaks either rule
/// starts a dropped run that lasts until the next marker. A marker whose
/// absolute value is not above the last accepted index retracts the
/// accepted indices it contradicts.
class DiffRunDecoder {
public:
  explicit DiffRunDecoder(std::optional<std::uint64_t> limit = std::nullopt) : limit_(limit) {}

  /// Returns false once the terminator has been consumed.
  bool feed(Symbol s);
  /// Enter the state following a (trusted) marker without a symbol.
  void expect_absolute() noexcept { state_ = State::ExpectAbsolute; }

  bool finished() const noexcept { return finished_; }
  const std::vector<std::uint32_t>& indices() const noexcept { return out_; }
  std::vector<std::uint32_t> take_indices() { return std::move(out_); }
  std::size_t dropped_symbols() const noexcept { return dropped_; }
  std::size_t retracted_indices() const noexcept { return retracted_; }
  std::optional<std::uint32_t> last_index() const noexcept {
    return out_.empty() ? std::nullopt : std::optional<std::uint32_t>(out_.back());
  }

private:
  enum class State { Start, ExpectAbsolute, InRun, Dropping };

  bool within_limit(std::int64_t v) const noexcept {
    return v >= 0 && (!limit_ || static_cast<std::uint64_t>(v) < *limit_);
  }

  std::optional<std::uint64_t> limit_;
  State state_ = State::Start;
  std::vector<std::uint32_t> out_;
  std::int64_t current_ = -1;
  std::size_t dropped_ = 0;
  std::size_t retracted_ = 0;
  bool finished_ = false;
};

struct DiffDecodeResult {
  LevelIndexList list;
  std::size_t dropped_symbols = 0;
  std::size_t retracted_indices = 0;
  bool terminated = false;
};

DiffDecodeResult diff_decode(const DiffStream& stream, std::optional<std::uint64_t> limit = std::nullopt);

}  // namespace dnaimg
