#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dnaimg/image.hpp"

namespace dnaimg {

struct Cell {
  std::uint32_t row;
  std::uint32_t col;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Generalized Hilbert traversal of an arbitrary height x width grid.
///
/// Built by recursive rectangle decomposition (the "gilbert" scheme). The
/// walk starts at (0,0) and its major axis is the longer side (columns on
/// a tie, so the 2x2 walk steps down first). When the major side is odd
/// and the minor side even, a walk ending on the far corner of the major
/// side cannot use only unit steps, so the walk is rooted along the even
/// side instead. With that choice every shape, odd x odd included, is
/// covered with unit steps.
struct ScanOrder {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<Cell> coords;
};

/// Throws DataError on a zero dimension.
ScanOrder scan_order(std::size_t height, std::size_t width);

/// Memoized scan order; safe for concurrent callers.
std::shared_ptr<const ScanOrder> cached_scan_order(std::size_t height, std::size_t width);

using LevelVector = std::vector<std::uint8_t>;

LevelVector linearize(const QuantizedChannel& channel);
LevelVector linearize(const QuantizedChannel& channel, const ScanOrder& order);

/// Throws DataError on a length mismatch.
QuantizedChannel delinearize(const LevelVector& vector, std::size_t height, std::size_t width, Color color);

}  // namespace dnaimg
