#include "dnaimg/hilbert_scan.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>

namespace dnaimg {
namespace {

constexpr long sgn(long v) { return (v > 0) - (v < 0); }

// Walks the rectangle spanned by the major vector (ax, ay) and the minor
// vector (bx, by) from corner (x, y); x is the column and y the row.
void generate(long x, long y, long ax, long ay, long bx, long by, std::vector<Cell>& out) {
  const long w = std::labs(ax + ay);
  const long h = std::labs(bx + by);
  const long dax = sgn(ax), day = sgn(ay);
  const long dbx = sgn(bx), dby = sgn(by);

  if (h == 1) {
    for (long i = 0; i < w; ++i, x += dax, y += day)
      out.push_back({static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x)});
    return;
  }
  if (w == 1) {
    for (long i = 0; i < h; ++i, x += dbx, y += dby)
      out.push_back({static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x)});
    return;
  }

  long ax2 = ax / 2, ay2 = ay / 2;
  long bx2 = bx / 2, by2 = by / 2;
  const long w2 = std::labs(ax2 + ay2);
  const long h2 = std::labs(bx2 + by2);

  if (2 * w > 3 * h) {
    if ((w2 % 2) != 0 && w > 2) {
      ax2 += dax;
      ay2 += day;
    }
    generate(x, y, ax2, ay2, bx, by, out);
    generate(x + ax2, y + ay2, ax - ax2, ay - ay2, bx, by, out);
  } else {
    if ((h2 % 2) != 0 && h > 2) {
      bx2 += dbx;
      by2 += dby;
    }
    generate(x, y, bx2, by2, ax2, ay2, out);
    generate(x + bx2, y + by2, ax, ay, bx - bx2, by - by2, out);
    generate(x + (ax - dax) + (bx2 - dbx), y + (ay - day) + (by2 - dby), -bx2, -by2, -(ax - ax2),
             -(ay - ay2), out);
  }
}

}  // namespace

ScanOrder scan_order(std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) throw DataError("scan order needs positive dimensions");
  ScanOrder order{height, width, {}};
  order.coords.reserve(height * width);
  const long w = static_cast<long>(width);
  const long h = static_cast<long>(height);

  bool along_cols = w >= h;  // ties run along the columns first
  const long major = along_cols ? w : h;
  const long minor = along_cols ? h : w;
  if (major % 2 == 1 && minor % 2 == 0) along_cols = !along_cols;

  if (along_cols)
    generate(0, 0, w, 0, 0, h, order.coords);
  else
    generate(0, 0, 0, h, w, 0, order.coords);
  return order;
}

std::shared_ptr<const ScanOrder> cached_scan_order(std::size_t height, std::size_t width) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const ScanOrder>> cache;
  const auto key = std::make_pair(height, width);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto order = std::make_shared<const ScanOrder>(scan_order(height, width));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(order)).first->second;
}

LevelVector linearize(const QuantizedChannel& channel, const ScanOrder& order) {
  if (order.height != channel.height() || order.width != channel.width())
    throw DataError("scan order does not match channel shape");
  LevelVector out;
  out.reserve(order.coords.size());
  for (const Cell& c : order.coords) out.push_back(channel.levels.at(c.row, c.col));
  return out;
}

LevelVector linearize(const QuantizedChannel& channel) {
  return linearize(channel, *cached_scan_order(channel.height(), channel.width()));
}

QuantizedChannel delinearize(const LevelVector& vector, std::size_t height, std::size_t width, Color color) {
  if (vector.size() != height * width) throw DataError("level vector length does not match shape");
  const auto order = cached_scan_order(height, width);
  QuantizedChannel q{color, Plane<std::uint8_t>(height, width)};
  for (std::size_t k = 0; k < vector.size(); ++k) q.levels.at(order->coords[k].row, order->coords[k].col) = vector[k];
  return q;
}

}  // namespace dnaimg
