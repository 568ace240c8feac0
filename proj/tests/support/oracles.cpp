#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace oracle {

WalkCheck check_walk(const dnaimg::ScanOrder& order) {
  WalkCheck out;
  const std::size_t h = order.height, w = order.width;
  std::vector<int> seen(h * w, 0);
  bool ok = order.coords.size() == h * w;
  for (const auto& c : order.coords) {
    if (c.row >= h || c.col >= w || seen[c.row * w + c.col]++) ok = false;
  }
  out.covers_grid = ok;
  out.chebyshev_one = true;
  for (std::size_t k = 1; k < order.coords.size(); ++k) {
    const long dr = std::labs(long(order.coords[k].row) - long(order.coords[k - 1].row));
    const long dc = std::labs(long(order.coords[k].col) - long(order.coords[k - 1].col));
    if (std::max(dr, dc) != 1) out.chebyshev_one = false;
    if (dr == 1 && dc == 1) ++out.diagonal_steps;
  }
  return out;
}

Locality scan_locality(const dnaimg::ScanOrder& order) {
  const std::size_t h = order.height, w = order.width;
  std::vector<long> index(h * w, 0);
  for (std::size_t k = 0; k < order.coords.size(); ++k) index[order.coords[k].row * w + order.coords[k].col] = long(k);
  Locality l;
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (c + 1 < w) {
        l.sum += double(std::labs(index[r * w + c] - index[r * w + c + 1]));
        ++l.pairs;
      }
      if (r + 1 < h) {
        l.sum += double(std::labs(index[r * w + c] - index[(r + 1) * w + c]));
        ++l.pairs;
      }
    }
  }
  return l;
}

Locality row_major_locality(std::size_t h, std::size_t w) {
  Locality l;
  const std::uint64_t horizontal = h * (w - 1), vertical = (h - 1) * w;
  l.sum = double(horizontal) * 1.0 + double(vertical) * double(w);
  l.pairs = horizontal + vertical;
  return l;
}

std::string word_string(std::uint32_t code, unsigned length) {
  static const char kBases[] = "ACGT";
  std::string s(length, 'A');
  for (unsigned i = length; i-- > 0;) {
    s[i] = kBases[code & 3u];
    code >>= 2;
  }
  return s;
}

bool word_valid(const std::string& word) {
  const auto L = word.size();
  const auto gc = std::count_if(word.begin(), word.end(), [](char c) { return c == 'G' || c == 'C'; });
  // 40% and 60% bounds in integer arithmetic.
  if (5 * std::size_t(gc) < 2 * L || 5 * std::size_t(gc) > 3 * L) return false;
  std::size_t run = 0;
  for (std::size_t i = 0; i < L; ++i) {
    run = (i > 0 && word[i] == word[i - 1]) ? run + 1 : 1;
    if ((word[i] == 'C' || word[i] == 'G') && run > 3) return false;
  }
  return true;
}

std::vector<std::uint32_t> enumerate_valid_words(unsigned length) {
  std::vector<std::uint32_t> out;
  const std::uint64_t total = std::uint64_t{1} << (2 * length);
  for (std::uint64_t code = 0; code < total; ++code)
    if (word_valid(word_string(std::uint32_t(code), length))) out.push_back(std::uint32_t(code));
  return out;
}

dnaimg::PlanarImageF bilateral(const dnaimg::RgbImage& img, double sigma_d2, double sigma_r2, int window) {
  const int h = int(img.height()), w = int(img.width()), r = window / 2;
  dnaimg::PlanarImageF out{{dnaimg::Plane<double>(h, w), dnaimg::Plane<double>(h, w), dnaimg::Plane<double>(h, w)}};
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double num[3] = {0, 0, 0}, den = 0;
      for (int k = i - r; k <= i + r; ++k) {
        for (int l = j - r; l <= j + r; ++l) {
          if (k < 0 || l < 0 || k >= h || l >= w) continue;
          double norm2 = 0;
          for (int c = 0; c < 3; ++c) {
            const double d = double(img.at(i, j, c)) - double(img.at(k, l, c));
            norm2 += d * d;
          }
          const double wgt = std::exp(-double((i - k) * (i - k) + (j - l) * (j - l)) / (2 * sigma_d2) -
                                      norm2 / (2 * sigma_r2));
          for (int c = 0; c < 3; ++c) num[c] += wgt * img.at(k, l, c);
          den += wgt;
        }
      }
      for (int c = 0; c < 3; ++c) out.planes[c].at(i, j) = num[c] / den;
    }
  }
  return out;
}

dnaimg::RgbImage adaptive_median(const dnaimg::RgbImage& img, const dnaimg::PixelMask& region, int max_window) {
  dnaimg::RgbImage out = img;
  const int h = int(img.height()), w = int(img.width());
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!region.test(y, x)) continue;
        const int z = img.at(y, x, c);
        int value = z;
        for (int size = 3; size <= max_window; size += 2) {
          std::vector<int> v;
          for (int dy = -size / 2; dy <= size / 2; ++dy)
            for (int dx = -size / 2; dx <= size / 2; ++dx) {
              const int yy = y + dy, xx = x + dx;
              if (yy >= 0 && xx >= 0 && yy < h && xx < w) v.push_back(img.at(yy, xx, c));
            }
          std::sort(v.begin(), v.end());
          const int zmin = v.front(), zmax = v.back(), zmed = v[(v.size() - 1) / 2];
          value = zmed;
          if (zmed - zmin > 0 && zmax - zmed > 0) {
            value = (z - zmin > 0 && zmax - z > 0) ? z : zmed;
            break;
          }
        }
        out.at(y, x, c) = std::uint8_t(value);
      }
    }
  }
  return out;
}

double consensus_error_probability(unsigned depth, double e, char truth) {
  static const std::string kOrder = "ACGT";
  const int t = int(kOrder.find(truth));
  double wrong = 0.0;
  // Enumerate counts (n0..n3) summing to depth with multinomial weights.
  std::vector<double> fact(depth + 1, 1.0);
  for (unsigned i = 1; i <= depth; ++i) fact[i] = fact[i - 1] * i;
  const double p_other = e / 3.0;
  for (unsigned a = 0; a <= depth; ++a)
    for (unsigned b = 0; a + b <= depth; ++b)
      for (unsigned c = 0; a + b + c <= depth; ++c) {
        const unsigned d = depth - a - b - c;
        const unsigned n[4] = {a, b, c, d};
        double p = fact[depth];
        for (int k = 0; k < 4; ++k) {
          p /= fact[n[k]];
          p *= std::pow(k == t ? 1.0 - e : p_other, double(n[k]));
        }
        int winner = 0;
        for (int k = 1; k < 4; ++k)
          if (n[k] > n[winner]) winner = k;
        if (winner != t) wrong += p;
      }
  return wrong;
}

double psnr(const dnaimg::RgbImage& a, const dnaimg::RgbImage& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.bytes().size(); ++i) {
    const double d = double(a.bytes()[i]) - double(b.bytes()[i]);
    s += d * d;
  }
  const double mse = s / double(a.bytes().size());
  if (mse == 0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace oracle
