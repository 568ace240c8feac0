#include "dnaimg/image_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace dnaimg {
namespace {

class HeaderReader {
public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) throw DataError("malformed PNM header");
    std::size_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > (1u << 28)) throw DataError("PNM header value too large");
      ++pos_;
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw DataError("malformed PNM header");
    return pos_ + 1;
  }

private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

RgbImage decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '6' && bytes[1] != '5'))
    throw DataError("not a binary PPM/PGM file");
  const bool gray = bytes[1] == '5';
  HeaderReader header(bytes);
  const std::size_t width = header.next_number();
  const std::size_t height = header.next_number();
  const std::size_t maxval = header.next_number();
  if (width == 0 || height == 0) throw DataError("PNM image has zero dimension");
  if (maxval != 255) throw DataError("only maxval 255 is supported");
  const std::size_t start = header.raster_start();
  const std::size_t channels = gray ? 1 : 3;
  const std::size_t need = width * height * channels;
  if (bytes.size() - start < need) throw DataError("PNM raster truncated");

  RgbImage image(height, width);
  auto out = image.bytes();
  if (gray) {
    for (std::size_t i = 0; i < width * height; ++i)
      out[3 * i] = out[3 * i + 1] = out[3 * i + 2] = bytes[start + i];
  } else {
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(start), need, out.begin());
  }
  return image;
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.bytes().begin(), image.bytes().end());
  return out;
}

RgbImage read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_pnm(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write image: " + path.string());
  const auto bytes = encode_ppm(image);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

RgbImage mask_to_image(const PixelMask& mask) {
  RgbImage image(mask.height(), mask.width());
  auto out = image.bytes();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const std::uint8_t v = mask[i] ? 255 : 0;
    out[3 * i] = out[3 * i + 1] = out[3 * i + 2] = v;
  }
  return image;
}

PixelMask image_to_mask(const RgbImage& image) {
  PixelMask mask(image.height(), image.width());
  const auto in = image.bytes();
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = in[3 * i] >= 128 ? 1 : 0;
  return mask;
}

}  // namespace dnaimg
