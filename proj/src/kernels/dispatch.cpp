#include <cstdlib>
#include <string>

#include "dnaimg/error.hpp"
#include "internal.hpp"

namespace dnaimg::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(DNAIMG_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_supported(isa)) throw UsageError("kernel variant not available: " + std::string(isa_name(isa)));
#if defined(DNAIMG_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::avx2_table();
#endif
  return scalar_table();
}

namespace {

const KernelTable& select() noexcept {
  if (const char* env = std::getenv("DNAIMG_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return scalar_table();
    if (want == "avx2" && isa_supported(Isa::Avx2)) return table_for(Isa::Avx2);
  }
  if (isa_supported(Isa::Avx2)) return table_for(Isa::Avx2);
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace dnaimg::kernels
