#include "bdivisor/simd/kernels.hpp"

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bdivisor::simd::detail {

namespace {

std::uint64_t count_delta_sing(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("count_delta_sing: length mismatch");
  const std::size_t n = xs.size();
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::uint64_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + i);
    const __m256d y = _mm256_loadu_pd(ys.data() + i);
    __m256d in = _mm256_and_pd(_mm256_cmp_pd(x, zero, _CMP_GE_OQ), _mm256_cmp_pd(y, zero, _CMP_GE_OQ));
    in = _mm256_and_pd(in, _mm256_cmp_pd(_mm256_add_pd(x, y), one, _CMP_LE_OQ));
    const __m256d roots = _mm256_add_pd(_mm256_sqrt_pd(x), _mm256_sqrt_pd(y));
    in = _mm256_and_pd(in, _mm256_cmp_pd(roots, one, _CMP_GE_OQ));
    count += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(in))));
  }
  for (; i < n; ++i) {
    const double x = xs[i];
    const double y = ys[i];
    if (x >= 0.0 && y >= 0.0 && x + y <= 1.0 && std::sqrt(x) + std::sqrt(y) >= 1.0) ++count;
  }
  return count;
}

double toric_gl4(std::int64_t panels) {
  if (panels < 1) throw std::invalid_argument("toric_gl4: panels must be >= 1");
  const double step = 1.0 / static_cast<double>(panels);
  const double half = 0.5 * step;
  const __m256d nodes = _mm256_loadu_pd(kGl4Nodes);
  const __m256d weights = _mm256_loadu_pd(kGl4Weights);
  const __m256d vhalf = _mm256_set1_pd(half);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  __m256d acc = _mm256_setzero_pd();
  for (std::int64_t p = 0; p < panels; ++p) {
    const __m256d centre = _mm256_set1_pd((static_cast<double>(p) + 0.5) * step);
    const __m256d s = _mm256_add_pd(centre, _mm256_mul_pd(vhalf, nodes));
    const __m256d x = _mm256_mul_pd(s, s);
    const __m256d r = _mm256_sub_pd(one, _mm256_sqrt_pd(x));
    const __m256d width = _mm256_sub_pd(_mm256_sub_pd(one, x), _mm256_mul_pd(r, r));
    const __m256d g = _mm256_mul_pd(_mm256_mul_pd(four, s), width);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(weights, g));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) * half;
}

inline __m256d residue_integrand(__m256d k2, __m256d a, __m256d t) {
  const __m256d u = _mm256_add_pd(t, a);
  const __m256d u2 = _mm256_mul_pd(u, u);
  return _mm256_div_pd(_mm256_mul_pd(k2, t), _mm256_mul_pd(u2, u2));
}

inline double residue_integrand(double k2, double a, double t) {
  const double u = t + a;
  const double u2 = u * u;
  return (k2 * t) / (u2 * u2);
}

// Four panels per vector; lane i follows exactly the scalar sequence for panel i.
void residue_gk15(double a, std::span<const double> lo, std::span<const double> hi, GaussKronrodOut out) {
  if (lo.size() != hi.size() || out.kronrod.size() < lo.size() || out.gauss.size() < lo.size()) {
    throw std::invalid_argument("residue_gk15: span size mismatch");
  }
  const double k2s = 2.0 * a * a;
  const __m256d k2 = _mm256_set1_pd(k2s);
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vhalf = _mm256_set1_pd(0.5);
  const std::size_t n = lo.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(lo.data() + i);
    const __m256d h = _mm256_loadu_pd(hi.data() + i);
    const __m256d centre = _mm256_mul_pd(vhalf, _mm256_add_pd(l, h));
    const __m256d half = _mm256_mul_pd(vhalf, _mm256_sub_pd(h, l));
    const __m256d fc = residue_integrand(k2, va, centre);
    __m256d kron = _mm256_mul_pd(_mm256_set1_pd(kWgk[7]), fc);
    __m256d gauss = _mm256_mul_pd(_mm256_set1_pd(kWg[3]), fc);
    for (int j = 0; j < 7; ++j) {
      const __m256d dx = _mm256_mul_pd(half, _mm256_set1_pd(kXgk[j]));
      const __m256d f1 = residue_integrand(k2, va, _mm256_sub_pd(centre, dx));
      const __m256d f2 = residue_integrand(k2, va, _mm256_add_pd(centre, dx));
      const __m256d sum = _mm256_add_pd(f1, f2);
      kron = _mm256_add_pd(kron, _mm256_mul_pd(_mm256_set1_pd(kWgk[j]), sum));
      if (j % 2 == 1) gauss = _mm256_add_pd(gauss, _mm256_mul_pd(_mm256_set1_pd(kWg[j / 2]), sum));
    }
    _mm256_storeu_pd(out.kronrod.data() + i, _mm256_mul_pd(kron, half));
    _mm256_storeu_pd(out.gauss.data() + i, _mm256_mul_pd(gauss, half));
  }
  for (; i < n; ++i) {
    const double centre = 0.5 * (lo[i] + hi[i]);
    const double half = 0.5 * (hi[i] - lo[i]);
    const double fc = residue_integrand(k2s, a, centre);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      const double sum = residue_integrand(k2s, a, centre - dx) + residue_integrand(k2s, a, centre + dx);
      kron = kron + kWgk[j] * sum;
      if (j % 2 == 1) gauss = gauss + kWg[j / 2] * sum;
    }
    out.kronrod[i] = kron * half;
    out.gauss[i] = gauss * half;
  }
}

} // namespace

const KernelTable kAvx2Table{&count_delta_sing, &toric_gl4, &residue_gk15};

} // namespace bdivisor::simd::detail
