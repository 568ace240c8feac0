#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, where the target supports it, an AVX2 variant.
// The active table is chosen once at startup from CPU features; the
// DNAIMG_ISA environment variable ("scalar" or "avx2") overrides it.
//
// Contract shared by every variant: identical results, bit for bit.
// Floating-point kernels accumulate in the same order across lanes as
// the scalar loop does across pixels, and the library is compiled with
// -ffp-contract=off so no variant fuses multiply-adds.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace dnaimg::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Inputs to one bilateral output row. Planes are double copies of 8-bit
/// data so that squared range distances are exact integers.
struct BilateralRowArgs {
  const double* planes[3];
  std::size_t width;
  std::size_t height;
  int radius;
  const double* spatial_weights;  // (2r+1)^2, row-major over (dy, dx)
  const double* range_weights;    // indexed by squared RGB distance, 0..3*255^2
  double* out[3];                 // row-sized outputs
};

/// Padded (width+2)x(height+2) buffers for one Jacobi diffusion sweep.
/// `known` holds 0.0/1.0; `target` is 1 where the pixel is updated.
/// Returns the max |change| over targets that were already known, or
/// +inf when some target had no value before the sweep.
struct DiffusionSweepArgs {
  const double* value;
  const double* known;
  const std::uint8_t* target;
  double* next_value;
  double* next_known;
  std::size_t width;   // unpadded
  std::size_t height;  // unpadded
};

struct KernelTable {
  Isa isa;
  void (*quantize_u8)(const std::uint8_t* in, std::uint8_t* out, std::size_t n);
  std::uint64_t (*sum_squared_diff_u8)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
  void (*bilateral_row)(const BilateralRowArgs& args, std::size_t row);
  double (*diffusion_sweep)(const DiffusionSweepArgs& args);
};

const KernelTable& scalar_table() noexcept;
bool isa_supported(Isa isa) noexcept;
/// Throws UsageError if the variant is not compiled in or not supported.
const KernelTable& table_for(Isa isa);
const KernelTable& active() noexcept;

}  // namespace dnaimg::kernels
