#include "bdivisor/simd/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bdivisor::simd::detail {

namespace {

std::uint64_t count_delta_sing(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("count_delta_sing: length mismatch");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double y = ys[i];
    if (x >= 0.0 && y >= 0.0 && x + y <= 1.0 && std::sqrt(x) + std::sqrt(y) >= 1.0) ++count;
  }
  return count;
}

// Lane l of the AVX2 accumulator holds node l of every panel.
double toric_gl4(std::int64_t panels) {
  if (panels < 1) throw std::invalid_argument("toric_gl4: panels must be >= 1");
  const double step = 1.0 / static_cast<double>(panels);
  const double half = 0.5 * step;
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::int64_t p = 0; p < panels; ++p) {
    const double centre = (static_cast<double>(p) + 0.5) * step;
    for (int l = 0; l < 4; ++l) {
      const double s = centre + half * kGl4Nodes[l];
      const double x = s * s;
      const double r = 1.0 - std::sqrt(x);
      const double width = (1.0 - x) - r * r;
      const double g = (4.0 * s) * width;
      acc[l] = acc[l] + kGl4Weights[l] * g;
    }
  }
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) * half;
}

inline double residue_integrand(double k2, double a, double t) {
  const double u = t + a;
  const double u2 = u * u;
  return (k2 * t) / (u2 * u2);
}

void residue_gk15(double a, std::span<const double> lo, std::span<const double> hi, GaussKronrodOut out) {
  if (lo.size() != hi.size() || out.kronrod.size() < lo.size() || out.gauss.size() < lo.size()) {
    throw std::invalid_argument("residue_gk15: span size mismatch");
  }
  const double k2 = 2.0 * a * a;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double centre = 0.5 * (lo[i] + hi[i]);
    const double half = 0.5 * (hi[i] - lo[i]);
    const double fc = residue_integrand(k2, a, centre);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      const double f1 = residue_integrand(k2, a, centre - dx);
      const double f2 = residue_integrand(k2, a, centre + dx);
      const double sum = f1 + f2;
      kron = kron + kWgk[j] * sum;
      if (j % 2 == 1) gauss = gauss + kWg[j / 2] * sum;
    }
    out.kronrod[i] = kron * half;
    out.gauss[i] = gauss * half;
  }
}

} // namespace

const KernelTable kScalarTable{&count_delta_sing, &toric_gl4, &residue_gk15};

} // namespace bdivisor::simd::detail
