#pragma once

#include "dnaimg/kernels.hpp"

namespace dnaimg::kernels::detail {

// Per-pixel bilateral accumulation shared by every variant for border
// pixels (and by the scalar kernel for all pixels).
void bilateral_pixel(const BilateralRowArgs& args, std::size_t row, std::size_t col);

// Scalar update of one padded index for a diffusion sweep; returns the
// change contribution (0 if not a target).
double diffusion_update(const DiffusionSweepArgs& args, std::size_t padded_index);

#if defined(DNAIMG_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace dnaimg::kernels::detail
