#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnaimg/image.hpp"

namespace fixtures {

std::string data_path(const std::string& name);
/// astronaut (512x512), coffee (400x600), chelsea (300x451).
dnaimg::RgbImage natural(const std::string& name);
dnaimg::RgbImage crop(const dnaimg::RgbImage& img, std::size_t rows, std::size_t cols);

dnaimg::RgbImage random_image(std::size_t h, std::size_t w, std::uint64_t seed);
/// Smooth luminance field shared by all channels plus small per-channel
/// offsets, so pairwise level differences concentrate in a few bins.
dnaimg::RgbImage smooth_image(std::size_t h, std::size_t w, std::uint64_t seed);
dnaimg::RgbImage uniform_image(std::size_t h, std::size_t w, std::uint8_t r, std::uint8_t g, std::uint8_t b);

}  // namespace fixtures
