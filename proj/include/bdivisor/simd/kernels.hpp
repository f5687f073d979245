#pragma once

// Double-precision inner loops of the numeric checks. Every kernel has a
// scalar reference and an AVX2 variant chosen at runtime. Both perform the
// same IEEE operations in the same order (no FMA, no contraction), so their
// results are bit-identical; the tests assert exact equality.

#include <cstdint>
#include <optional>
#include <span>

namespace bdivisor::simd {

enum class Isa { Scalar, Avx2 };

const char* name(Isa isa);
bool isa_available(Isa isa);
/// Best ISA supported by this CPU and build.
Isa detected_isa();
/// ISA used by the dispatching entry points below.
Isa active_isa();
/// Pins the ISA (tests); std::nullopt restores detection. Not thread-safe.
void force_isa(std::optional<Isa> isa);

struct GaussKronrodOut {
  std::span<double> kronrod;
  std::span<double> gauss;
};

struct KernelTable {
  /// Points with x, y >= 0, x + y <= 1 and sqrt(x) + sqrt(y) >= 1.
  std::uint64_t (*count_delta_sing)(std::span<const double> xs, std::span<const double> ys);
  /// Composite 4-point Gauss-Legendre over `panels` equal panels of [0, 1] for
  /// 2 Vol(Delta_sing) = int_0^1 4 s w(s^2) ds, w(x) = (1 - x) - (1 - sqrt x)^2.
  double (*toric_gl4)(std::int64_t panels);
  /// Gauss-Kronrod 7/15 of 2 a^2 t / (t + a)^4 on each panel [lo_i, hi_i].
  void (*residue_gk15)(double a, std::span<const double> lo, std::span<const double> hi, GaussKronrodOut out);
};

const KernelTable& kernels(Isa isa);

inline std::uint64_t count_delta_sing(std::span<const double> xs, std::span<const double> ys) {
  return kernels(active_isa()).count_delta_sing(xs, ys);
}
inline double toric_gl4(std::int64_t panels) { return kernels(active_isa()).toric_gl4(panels); }
inline void residue_gk15(double a, std::span<const double> lo, std::span<const double> hi, GaussKronrodOut out) {
  kernels(active_isa()).residue_gk15(a, lo, hi, out);
}

namespace detail {

// QUADPACK 15-point Kronrod abscissae (descending, last is the centre) and
// weights, plus the embedded 7-point Gauss weights at xgk[1], [3], [5], [7].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// 4-point Gauss-Legendre on [-1, 1].
inline constexpr double kGl4Nodes[4] = {-0.861136311594052575223946488892809, -0.339981043584856264802665759103245,
                                        0.339981043584856264802665759103245, 0.861136311594052575223946488892809};
inline constexpr double kGl4Weights[4] = {0.347854845137453857373063949221999, 0.652145154862546142626936050778001,
                                          0.652145154862546142626936050778001, 0.347854845137453857373063949221999};

extern const KernelTable kScalarTable;
#if defined(BDIVISOR_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

} // namespace detail

} // namespace bdivisor::simd
