#include <stdexcept>
#include <string>

#include "wngf/simd/triad_kernel.hpp"

namespace wngf::simd {

bool isa_available(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return true;
  case Isa::Avx2:
#if defined(WNGF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  case Isa::Neon:
    // Advanced SIMD is mandatory on AArch64.
#if defined(WNGF_HAVE_NEON)
    return true;
#else
    return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (isa_available(isa))
      out.push_back(isa);
  return out;
}

Isa best_isa() {
  if (isa_available(Isa::Avx2))
    return Isa::Avx2;
  if (isa_available(Isa::Neon))
    return Isa::Neon;
  return Isa::Scalar;
}

TriadKernel kernel_for(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("kernel '" + std::string(isa_name(isa)) +
                                "' is not available on this machine");
  switch (isa) {
#if defined(WNGF_HAVE_AVX2)
  case Isa::Avx2:
    return &tally_avx2;
#endif
#if defined(WNGF_HAVE_NEON)
  case Isa::Neon:
    return &tally_neon;
#endif
  default:
    return &tally_scalar;
  }
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return "scalar";
  case Isa::Avx2:
    return "avx2";
  case Isa::Neon:
    return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (name == isa_name(isa))
      return isa;
  return std::nullopt;
}

} // namespace wngf::simd
