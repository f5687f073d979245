#include "bdivisor/simd/kernels.hpp"

#include <stdexcept>

namespace bdivisor::simd {

namespace {

std::optional<Isa>& forced() {
  static std::optional<Isa> isa;
  return isa;
}

bool cpu_has_avx2() {
#if defined(BDIVISOR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

} // namespace

const char* name(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return "scalar";
  case Isa::Avx2:
    return "avx2";
  }
  return "?";
}

bool isa_available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

Isa detected_isa() { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return forced().value_or(detected_isa()); }

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) throw std::invalid_argument(std::string("ISA not available: ") + name(*isa));
  forced() = isa;
}

const KernelTable& kernels(Isa isa) {
#if defined(BDIVISOR_HAVE_AVX2)
  if (isa == Isa::Avx2) {
    if (!cpu_has_avx2()) throw std::invalid_argument("AVX2 kernels requested on a CPU without AVX2");
    return detail::kAvx2Table;
  }
#endif
  if (isa != Isa::Scalar) throw std::invalid_argument(std::string("no kernels for ") + name(isa));
  return detail::kScalarTable;
}

} // namespace bdivisor::simd
