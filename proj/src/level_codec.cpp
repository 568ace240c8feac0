#include "dnaimg/level_codec.hpp"

#include <cmath>

namespace dnaimg {

std::array<LevelIndexList, kLevelCount> partition_levels(const LevelVector& vector, Color color) {
  std::array<LevelIndexList, kLevelCount> lists;
  for (int j = 0; j < kLevelCount; ++j) {
    lists[j].color = color;
    lists[j].level = static_cast<std::uint8_t>(j);
  }
  for (std::size_t k = 0; k < vector.size(); ++k) {
    if (vector[k] >= kLevelCount) throw DataError("level value out of range");
    lists[vector[k]].indices.push_back(static_cast<std::uint32_t>(k));
  }
  return lists;
}

MergedLevels merge_levels(std::span<const LevelIndexList> lists, std::size_t length) {
  MergedLevels out{LevelVector(length, 0), std::vector<std::uint8_t>(length, 0)};
  std::vector<std::uint8_t> claims(length, 0);
  for (const auto& list : lists) {
    for (auto idx : list.indices) {
      if (idx >= length) continue;
      if (claims[idx] == 0 || list.level < out.values[idx]) out.values[idx] = list.level;
      if (claims[idx] < 255) ++claims[idx];
    }
  }
  for (std::size_t k = 0; k < length; ++k) out.unknown[k] = claims[k] != 1;
  return out;
}

std::size_t resync_period(double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) throw UsageError("resync rate must lie in (0, 1]");
  const double inv = 1.0 / rate;
  // Guard against 1/0.25 = 4.000000000000001 style rounding.
  const double rounded = std::round(inv);
  return static_cast<std::size_t>(std::fabs(inv - rounded) < 1e-9 ? rounded : std::ceil(inv));
}

DiffStream diff_encode(const LevelIndexList& list, double resync_rate) {
  const std::size_t period = resync_period(resync_rate);
  DiffStream s{list.color, list.level, {}};
  s.symbols.reserve(list.indices.size() + list.indices.size() / period * 2 + 3);
  for (std::size_t k = 0; k < list.indices.size(); ++k) {
    if (k > 0 && list.indices[k] <= list.indices[k - 1]) throw DataError("level index list not increasing");
    if (k % period == 0) {
      s.symbols.push_back(kResyncMarker);
      s.symbols.push_back(list.indices[k]);
    } else {
      s.symbols.push_back(static_cast<Symbol>(list.indices[k]) - list.indices[k - 1]);
    }
  }
  s.symbols.push_back(kTerminator);
  return s;
}

bool DiffRunDecoder::feed(Symbol s) {
  if (finished_) return false;
  if (s == kTerminator) {
    finished_ = true;
    return false;
  }
  if (s == kResyncMarker) {
    state_ = State::ExpectAbsolute;
    return true;
  }
  if (s < 0) {
    ++dropped_;
    state_ = State::Dropping;
    return true;
  }
  switch (state_) {
    case State::ExpectAbsolute:
      if (!within_limit(s)) {
        ++dropped_;
        state_ = State::Dropping;
        break;
      }
      while (!out_.empty() && out_.back() >= s) {
        out_.pop_back();
        ++retracted_;
      }
      out_.push_back(static_cast<std::uint32_t>(s));
      current_ = s;
      state_ = State::InRun;
      break;
    case State::InRun:
      if (s > 0 && within_limit(current_ + s)) {
        current_ += s;
        out_.push_back(static_cast<std::uint32_t>(current_));
      } else {
        ++dropped_;
        state_ = State::Dropping;
      }
      break;
    case State::Start:
    case State::Dropping:
      ++dropped_;
      break;
  }
  return true;
}

DiffDecodeResult diff_decode(const DiffStream& stream, std::optional<std::uint64_t> limit) {
  DiffRunDecoder dec(limit);
  for (Symbol s : stream.symbols)
    if (!dec.feed(s)) break;
  DiffDecodeResult r;
  r.dropped_symbols = dec.dropped_symbols();
  r.retracted_indices = dec.retracted_indices();
  r.terminated = dec.finished();
  r.list = {stream.color, stream.level, dec.take_indices()};
  return r;
}

}  // namespace dnaimg
