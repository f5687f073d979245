#include "bdivisor/analysis.hpp"

#include "bdivisor/lattice.hpp"
#include "bdivisor/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace bdivisor::analysis {

namespace {

template <class T>
T f_nm_real(std::int64_t n, std::int64_t m, T log_uu, T log_vv) {
  const T denom = static_cast<T>(n) * log_uu + static_cast<T>(m) * log_vv;
  if (denom == 0) throw std::domain_error("f_nm: n log|u|^2 + m log|v|^2 vanishes");
  return log_uu * log_vv / (static_cast<T>(n * m) * denom);
}

double log_abs_sq(Complex z) { return std::log(std::norm(z)); }

} // namespace

PuncturedBidisk::PuncturedBidisk(Complex u, Complex v) : u_(u), v_(v) {
  if (u == Complex{} || v == Complex{}) throw std::invalid_argument("PuncturedBidisk: u and v must be nonzero");
  if (!(std::abs(u * v) < 1.0)) throw std::invalid_argument("PuncturedBidisk: |uv| must be < 1");
}

double f_nm(std::int64_t n, std::int64_t m, const PuncturedBidisk& p) {
  if (n < 1 || m < 1) throw std::invalid_argument("f_nm needs n, m >= 1");
  return f_nm_real<double>(n, m, log_abs_sq(p.u()), log_abs_sq(p.v()));
}

double pullback_identity_residual(std::int64_t n, std::int64_t m, Complex s, Complex t) {
  const PuncturedBidisk before(s * t, t);
  const PuncturedBidisk after(s, t);
  const double exceptional = log_abs_sq(t) / static_cast<double>(n * m * (n + m));
  return f_nm(n, m, before) - exceptional - f_nm(n, n + m, after);
}

WedgeResidual wedge_vanishing_residual(std::int64_t n, std::int64_t m, const PuncturedBidisk& p, double h) {
  using LD = long double;
  const LD h1 = static_cast<LD>(h) * std::abs(p.u());
  const LD h2 = static_cast<LD>(h) * std::abs(p.v());
  if (!(h1 > 0) || !(h2 > 0) || h1 < 1e-15L || h2 < 1e-15L) {
    throw std::underflow_error("wedge_vanishing_residual: finite-difference step underflow");
  }
  const LD base[4] = {p.u().real(), p.u().imag(), p.v().real(), p.v().imag()};
  const LD step[4] = {h1, h1, h2, h2};
  auto g = [&](int i, int si, int j, int sj) {
    LD x[4] = {base[0], base[1], base[2], base[3]};
    x[i] += si * step[i];
    x[j] += sj * step[j];
    const LD luu = std::log(x[0] * x[0] + x[1] * x[1]);
    const LD lvv = std::log(x[2] * x[2] + x[3] * x[3]);
    return f_nm_real<LD>(n, m, luu, lvv);
  };
  const LD centre = g(0, 0, 0, 0);
  auto second = [&](int i) { return (g(i, 1, i, 0) - 2 * centre + g(i, -1, i, 0)) / (step[i] * step[i]); };
  auto mixed = [&](int i, int j) {
    return (g(i, 1, j, 1) - g(i, 1, j, -1) - g(i, -1, j, 1) + g(i, -1, j, -1)) / (4 * step[i] * step[j]);
  };
  // Coordinates: 0 = Re u, 1 = Im u, 2 = Re v, 3 = Im v.
  const LD f_uu = (second(0) + second(1)) / 4;
  const LD f_vv = (second(2) + second(3)) / 4;
  const std::complex<LD> f_uv((mixed(0, 2) + mixed(1, 3)) / 4, (mixed(0, 3) - mixed(1, 2)) / 4);
  const std::complex<LD> f_vu = std::conj(f_uv);
  const std::complex<LD> det = f_uu * f_vv - f_uv * f_vu;
  WedgeResidual out;
  out.residual = static_cast<double>(std::abs(det));
  out.scale = static_cast<double>(std::fabs(f_uu * f_vv) + std::abs(f_uv * f_vu));
  return out;
}

GrowthProbe loglog_growth_probe(std::int64_t n, std::int64_t m, double r0, Complex v0, std::int64_t samples,
                                std::uint64_t seed) {
  if (!(r0 > 0) || samples < 1) throw std::invalid_argument("loglog_growth_probe: bad region or sample count");
  GrowthProbe out;
  const double k = std::fabs(log_abs_sq(v0));
  out.bound = 2 * k / static_cast<double>(n * n * m);
  out.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::int64_t i = 0; i < samples; ++i) {
    // Radii spread over 60 orders of magnitude below r0.
    const double r = r0 * std::exp(-140.0 * unit(rng));
    const double phi = 2 * std::numbers::pi * unit(rng);
    const double value = std::fabs(f_nm(n, m, PuncturedBidisk(std::polar(r, phi), v0)));
    out.observed_max = std::max(out.observed_max, value);
  }
  out.pass = out.observed_max <= out.bound;
  return out;
}

double residue_closed_form(double epsilon) {
  const double a = 2 * std::log(epsilon);
  const double w = 2 * a;
  return 2 * a * a * (-1 / (2 * w * w) + a / (3 * w * w * w));
}

QuadratureResult residue_integral(double epsilon, double tol) {
  if (!(epsilon > 0) || !(epsilon < std::exp(-1.0))) {
    throw std::invalid_argument("residue_integral needs 0 < eps < 1/e");
  }
  const double a = 2 * std::log(epsilon);
  const double abs_a = -a;
  // Dropped piece: |2 a^2 int_{-inf}^{a-T} t/(t+a)^4 dt| <= a^2/w0^2 + 2|a|^3/(3|w0|^3), |w0| = T + 2|a|.
  const double span = 2.0e4 * abs_a;
  const double w0 = span + 2 * abs_a;
  QuadratureResult out;
  out.truncation_bound = abs_a * abs_a / (w0 * w0) + 2 * abs_a * abs_a * abs_a / (3 * w0 * w0 * w0);

  // Panels graded geometrically in the distance d from t = a.
  constexpr int kInitial = 32;
  std::vector<double> lo;
  std::vector<double> hi;
  for (int i = 0; i < kInitial; ++i) {
    auto edge = [&](int k) { return a - abs_a * (std::pow(1 + span / abs_a, static_cast<double>(k) / kInitial) - 1); };
    lo.push_back(edge(i + 1));
    hi.push_back(edge(i));
  }
  const double length = span;
  std::vector<std::pair<double, double>> accepted; // (lo, value)
  double error = 0;
  for (int round = 0; !lo.empty(); ++round) {
    std::vector<double> kron(lo.size());
    std::vector<double> gauss(lo.size());
    simd::residue_gk15(a, lo, hi, {kron, gauss});
    std::vector<double> next_lo;
    std::vector<double> next_hi;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const double panel_err = std::fabs(kron[i] - gauss[i]);
      const double allowance = tol * (hi[i] - lo[i]) / length;
      if (panel_err <= allowance || panel_err < 1e-18 || round >= 48) {
        accepted.emplace_back(lo[i], kron[i]);
        error += panel_err;
      } else {
        const double mid = 0.5 * (lo[i] + hi[i]);
        next_lo.push_back(lo[i]);
        next_hi.push_back(mid);
        next_lo.push_back(mid);
        next_hi.push_back(hi[i]);
      }
    }
    lo = std::move(next_lo);
    hi = std::move(next_hi);
  }
  std::sort(accepted.begin(), accepted.end());
  double value = 0;
  for (const auto& [x, v] : accepted) value += v;
  out.value = value;
  out.error_estimate = error + out.truncation_bound;
  out.panels = static_cast<std::int64_t>(accepted.size());
  return out;
}

double residue_face_contribution(const Level& level, double epsilon) {
  const double n = static_cast<double>(level.n());
  return 16.0 / (n * n) * residue_integral(epsilon).value;
}

ResidueConsistency residue_consistency(const Level& level, double epsilon) {
  ResidueConsistency out;
  const std::int64_t n = level.n();
  const std::int64_t points = n * surface::cusp_count(level);
  const auto tower = lattice::start_tower(level);
  out.cc = tower.self_int;
  // Per double point: two faces, each (16/N^2)(-1/6).
  const Rational per_point = Rational(2) * make_rational(16, n * n) * make_rational(-1, 6);
  out.exact_residue_total = Rational(points) * per_point;
  out.exact_residue_total.canonicalize();
  out.limit = lattice::limit_self_intersection(level);
  out.exact_identity = (out.cc + out.exact_residue_total == out.limit);

  out.quadrature_total = static_cast<double>(points) * 2 * residue_face_contribution(level, epsilon);
  out.quadrature_budget = static_cast<double>(points) * 1e-6;
  out.quadrature_match =
      std::fabs(out.quadrature_total - out.exact_residue_total.get_d()) <= out.quadrature_budget;
  return out;
}

double psi_can(double u, double v) { return std::min({0.0, u, v}); }

double psi_sing(double u, double v) {
  if (u >= 0 && v >= 0) {
    if (u + v == 0) return 0;
    return u * v / (u + v);
  }
  return u <= std::min(0.0, v) ? u : v;
}

bool delta_sing_membership(double x, double y) {
  return x >= 0 && y >= 0 && x + y <= 1 && std::sqrt(x) + std::sqrt(y) >= 1;
}

bool delta_sing_membership(const Rational& x, const Rational& y) {
  if (x < 0 || y < 0 || x + y > 1) return false;
  // sqrt x + sqrt y >= 1  <=>  2 sqrt x >= 1 + x - y when sqrt x <= 1.
  const Rational rhs = 1 + x - y;
  if (rhs <= 0) return true;
  return 4 * x >= rhs * rhs;
}

const char* to_string(VolumeMethod method) {
  switch (method) {
  case VolumeMethod::Exact:
    return "exact";
  case VolumeMethod::Quadrature:
    return "quadrature";
  case VolumeMethod::MonteCarlo:
    return "montecarlo";
  }
  return "?";
}

std::optional<VolumeMethod> parse_volume_method(const std::string& text) {
  if (text == "exact") return VolumeMethod::Exact;
  if (text == "quadrature") return VolumeMethod::Quadrature;
  if (text == "montecarlo") return VolumeMethod::MonteCarlo;
  return std::nullopt;
}

Rational toric_defect_exact() {
  // Antiderivative of (1 - sqrt x)^2 is x - (4/3) x^{3/2} + x^2/2.
  const Rational at_one = Rational(1) - make_rational(4, 3) + make_rational(1, 2);
  return 2 * at_one;
}

ToricVolume toric_volume(VolumeMethod method, std::int64_t budget, std::uint64_t seed) {
  if (budget <= 0) throw std::invalid_argument("toric_volume needs a positive budget");
  ToricVolume out;
  out.method = method;
  out.budget = budget;
  const double target = 2.0 / 3.0;
  switch (method) {
  case VolumeMethod::Exact: {
    // 2 Vol(Delta) = 1.
    Rational v = 1 - toric_defect_exact();
    v.canonicalize();
    out.exact = v;
    out.value = v.get_d();
    out.tolerance = 0;
    out.pass = (v == make_rational(2, 3));
    out.abs_error = std::fabs(out.value - target);
    return out;
  }
  case VolumeMethod::Quadrature:
    out.value = simd::toric_gl4(budget);
    out.tolerance = 1e-8;
    break;
  case VolumeMethod::MonteCarlo: {
    out.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr std::int64_t kBatch = 1 << 16;
    std::vector<double> xs;
    std::vector<double> ys;
    std::uint64_t hits = 0;
    for (std::int64_t done = 0; done < budget; done += kBatch) {
      const std::int64_t len = std::min(kBatch, budget - done);
      xs.resize(static_cast<std::size_t>(len));
      ys.resize(static_cast<std::size_t>(len));
      for (std::int64_t i = 0; i < len; ++i) {
        xs[static_cast<std::size_t>(i)] = unit(rng);
        ys[static_cast<std::size_t>(i)] = unit(rng);
      }
      hits += simd::count_delta_sing(xs, ys);
    }
    const double p = static_cast<double>(hits) / static_cast<double>(budget);
    out.value = 2 * p;
    out.tolerance = 3 * 2 * std::sqrt(p * (1 - p) / static_cast<double>(budget));
    break;
  }
  }
  out.abs_error = std::fabs(out.value - target);
  out.pass = out.abs_error <= out.tolerance;
  return out;
}

bool support_dominates(double x, double y, int directions) {
  for (int i = 0; i < directions; ++i) {
    const double angle = 2 * std::numbers::pi * i / directions;
    const double u = std::cos(angle);
    const double v = std::sin(angle);
    if (x * u + y * v < psi_sing(u, v) - 1e-15) return false;
  }
  return true;
}

} // namespace bdivisor::analysis
