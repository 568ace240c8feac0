#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "dnaimg/image.hpp"

namespace dnaimg {

/// Parses binary PPM (P6, maxval 255). Binary PGM (P5) is accepted and
/// promoted to RGB by replicating the gray plane.
RgbImage decode_pnm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_ppm(const RgbImage& image);

RgbImage read_image(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const RgbImage& image);

/// White where the mask is set, black elsewhere.
RgbImage mask_to_image(const PixelMask& mask);
PixelMask image_to_mask(const RgbImage& image);

}  // namespace dnaimg
