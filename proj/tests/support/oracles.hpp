#pragma once

// Independent reference implementations used as test oracles. None of
// these call into the library code they check.

#include <cstdint>
#include <string>
#include <vector>

#include "dnaimg/hilbert_scan.hpp"
#include "dnaimg/image.hpp"
#include "dnaimg/restoration.hpp"

namespace oracle {

struct WalkCheck {
  bool covers_grid = false;
  bool chebyshev_one = false;
  std::size_t diagonal_steps = 0;
};
WalkCheck check_walk(const dnaimg::ScanOrder& order);

struct Locality {
  double sum = 0.0;
  std::uint64_t pairs = 0;
  double mean() const { return pairs ? sum / double(pairs) : 0.0; }
};
/// |index difference| over all horizontally and vertically adjacent pairs.
Locality scan_locality(const dnaimg::ScanOrder& order);
Locality row_major_locality(std::size_t height, std::size_t width);

/// Every word of the given length, as base-4 digits over ACGT, that meets
/// the GC window and the C/G run limit, in lexicographic order.
std::vector<std::uint32_t> enumerate_valid_words(unsigned length);
std::string word_string(std::uint32_t code, unsigned length);
bool word_valid(const std::string& word);

/// Direct double loop over the bilateral weight and normalization.
dnaimg::PlanarImageF bilateral(const dnaimg::RgbImage& image, double sigma_d2, double sigma_r2, int window);

/// Gonzalez adaptive median on one channel at flagged pixels.
dnaimg::RgbImage adaptive_median(const dnaimg::RgbImage& image, const dnaimg::PixelMask& region, int max_window);

/// Probability that plurality voting over `depth` reads, each base wrong
/// with probability e (uniform over the other three), miscalls `truth`,
/// with ties resolved toward A < C < G < T.
double consensus_error_probability(unsigned depth, double e, char truth);

/// 10 log10(255^2 / MSE) by direct summation.
double psnr(const dnaimg::RgbImage& a, const dnaimg::RgbImage& b);

}  // namespace oracle
