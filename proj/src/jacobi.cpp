#include "bdivisor/jacobi.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>

namespace bdivisor::jacobi {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

// Shared by the long double and MPFR paths; T needs exp, cos, sin via ADL or std.
template <class T>
std::pair<T, T> theta_sum(const T& x, const T& eta, const T& s, const T& y, std::int64_t k_max, const T& pi) {
  using std::cos;
  using std::exp;
  using std::sin;
  T re = 0;
  T im = 0;
  const T half = T(1) / 2;
  for (std::int64_t n = -k_max - 1; n <= k_max; ++n) {
    const T k = T(n) + half;
    const T log_mag = -pi * eta * k * k - 2 * pi * y * k;
    const T phase = pi * x * k * k + 2 * pi * (s + half) * k;
    const T mag = exp(log_mag);
    re += mag * cos(phase);
    im += mag * sin(phase);
  }
  return {re, im};
}

numbers::Real to_mp(long double v) { return numbers::Real(static_cast<long double>(v)); }

} // namespace

ModularPoint::ModularPoint(Complex tau, Complex z) : tau_(tau), z_(z) {
  if (!(tau.imag() > 0)) throw std::invalid_argument("ModularPoint needs Im(tau) > 0");
}

bool GroupElement::in_gamma(std::int64_t level) const {
  auto mod = [level](std::int64_t v) { return ((v % level) + level) % level; };
  return is_valid() && mod(a) == 1 % level && mod(d) == 1 % level && mod(b) == 0 && mod(c) == 0;
}

ModularPoint GroupElement::act(const ModularPoint& pt) const {
  if (!is_valid()) throw std::invalid_argument("group element has determinant != 1");
  const Complex tau = pt.tau();
  const Complex z = pt.z() + static_cast<long double>(lambda) * tau + static_cast<long double>(mu);
  const Complex denom = static_cast<long double>(c) * tau + static_cast<long double>(d);
  const Complex tau2 = (static_cast<long double>(a) * tau + static_cast<long double>(b)) / denom;
  return ModularPoint(tau2, z / denom);
}

DimensionReport dim_cusp(const Level& level, std::int64_t ell, numbers::HurwitzConvention convention) {
  const std::int64_t n = level.n();
  if (ell < 1) throw std::invalid_argument("dim_cusp needs ell >= 1");
  if ((4 * ell) % n != 0) {
    throw std::invalid_argument("dim_cusp needs N | 4 ell (N = " + std::to_string(n) +
                                ", ell = " + std::to_string(ell) + ")");
  }
  const std::int64_t p = surface::cusp_count(level);
  const std::int64_t big_m = 16 * ell / n;

  Rational hurwitz_sum = 0;
  for (std::int64_t d : divisors(big_m)) {
    if (!numbers::is_squarefree(big_m / d)) continue;
    hurwitz_sum += numbers::hurwitz_at(-d, convention);
  }
  const Rational nr(n);
  const Rational lr(ell);
  Rational inner = Rational(8) * nr * lr * lr / 3 - nr * lr - nr / 4 * Rational(numbers::square_part(big_m)) -
                   nr / 2 * hurwitz_sum;
  Rational dim = Rational(p) * inner;
  dim.canonicalize();
  if (!is_integer(dim) || dim < 0) {
    throw ConventionError("dimension formula gave " + to_string(dim) + " for N = " + std::to_string(n) +
                          ", ell = " + std::to_string(ell) + "; Hurwitz convention does not fit");
  }
  DimensionReport out;
  out.level = n;
  out.ell = ell;
  out.dim = dim;
  out.ratio = dim / (lr * lr / 2);
  out.ratio.canonicalize();
  out.gap = out.ratio - make_rational(16 * n * p, 3);
  out.gap.canonicalize();
  return out;
}

HilbertSamuelResult hilbert_samuel_check(const Level& level, const std::vector<std::int64_t>& ells,
                                         numbers::HurwitzConvention convention) {
  if (ells.empty()) throw std::invalid_argument("hilbert_samuel_check needs at least one ell");
  HilbertSamuelResult out;
  const std::int64_t p = surface::cusp_count(level);
  out.target = make_rational(16 * level.n() * p, 3);
  for (std::int64_t ell : ells) out.rows.push_back(dim_cusp(level, ell, convention));

  out.gaps_shrink = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (!(abs(out.rows[i].gap) < abs(out.rows[i - 1].gap))) out.gaps_shrink = false;
  }
  out.final_bound = make_rational(4 * level.n() * p, out.rows.back().ell);
  out.final_bound.canonicalize();
  out.pass = out.gaps_shrink && abs(out.rows.back().gap) <= out.final_bound;
  return out;
}

std::int64_t theta_truncation(const ModularPoint& pt, long double tol) {
  if (!(tol > 0)) throw std::invalid_argument("theta tolerance must be positive");
  const long double eta = pt.eta();
  const long double ay = std::fabs(pt.y());
  auto exponent = [&](long double k) { return -kPi * eta * k * k + 2 * kPi * ay * k; };
  for (std::int64_t k_max = 0; k_max < 10'000'000; ++k_max) {
    const long double k0 = static_cast<long double>(k_max) + 1.5L;
    if (k0 <= ay / eta + 1) continue;
    // Term ratio exp(-pi eta (2k+1) + 2 pi |y|) is < 1 and decreasing past k0.
    const long double ratio = std::exp(-kPi * eta * (2 * k0 + 1) + 2 * kPi * ay);
    const long double tail = 2 * std::exp(exponent(k0)) / (1 - ratio);
    if (tail < tol) return k_max;
  }
  throw std::runtime_error("theta truncation did not converge");
}

Complex theta11(const ModularPoint& pt, long double tol) {
  const std::int64_t k_max = theta_truncation(pt, tol);
  if (pt.eta() >= 0.1L) {
    auto [re, im] = theta_sum<long double>(pt.tau().real(), pt.eta(), pt.z().real(), pt.y(), k_max, kPi);
    return {re, im};
  }
  numbers::Real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  auto [re, im] = theta_sum<numbers::Real>(to_mp(pt.tau().real()), to_mp(pt.eta()), to_mp(pt.z().real()),
                                           to_mp(pt.y()), k_max, pi);
  return {re.convert_to<long double>(), im.convert_to<long double>()};
}

long double invariant_norm_sq(Complex f, const ModularPoint& pt, WeightIndex wi) {
  const long double eta = pt.eta();
  const long double y = pt.y();
  return std::norm(f) * std::exp(-4 * kPi * wi.m * y * y / eta) * std::pow(eta, static_cast<long double>(wi.k));
}

long double log_theta8_norm_sq(const ModularPoint& pt, long double tol) {
  const Complex t = theta11(pt, tol);
  const long double eta = pt.eta();
  const long double y = pt.y();
  return 8 * std::log(std::norm(t)) - 16 * kPi * y * y / eta + 4 * std::log(eta);
}

InvarianceResult check_invariance(const GroupElement& g, const ModularPoint& pt, long double tol) {
  InvarianceResult out;
  const ModularPoint image = g.act(pt);
  if (image.eta() < 1e-3L) {
    out.status = InvarianceStatus::Overflow;
    return out;
  }
  // Theta itself is evaluated far below tol so the comparison is not limited by truncation.
  const long double theta_tol = 1e-30L;
  out.log_norm_at_point = log_theta8_norm_sq(pt, theta_tol);
  out.log_norm_at_image = log_theta8_norm_sq(image, theta_tol);
  if (!std::isfinite(out.log_norm_at_point) || !std::isfinite(out.log_norm_at_image)) {
    out.status = InvarianceStatus::Overflow;
    return out;
  }
  // ||theta^8|| < 1e-8 means log ||.||^2 < 2 log 1e-8.
  if (out.log_norm_at_point < 2 * std::log(1e-8L)) {
    out.status = InvarianceStatus::NearZero;
    return out;
  }
  out.relative_deviation = std::fabs(std::expm1(out.log_norm_at_image - out.log_norm_at_point));
  out.status = out.relative_deviation <= tol ? InvarianceStatus::Pass : InvarianceStatus::Fail;
  return out;
}

std::vector<GroupElement> sample_group_elements(std::uint64_t seed, std::size_t count, const ModularPoint& pt,
                                                long double min_eta) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word_length(1, 3);
  std::uniform_int_distribution<std::int64_t> shift(-2, 2);
  std::vector<GroupElement> out;
  while (out.size() < count) {
    GroupElement g;
    const int len = word_length(rng);
    for (int i = 0; i < len; ++i) {
      // g <- g * T^k * S, with T^k = (1 k; 0 1), S = (0 -1; 1 0).
      const std::int64_t k = shift(rng);
      const std::int64_t a = g.a, b = g.a * k + g.b, c = g.c, d = g.c * k + g.d;
      g.a = b;
      g.b = -a;
      g.c = d;
      g.d = -c;
    }
    g.lambda = shift(rng);
    g.mu = shift(rng);
    if (g.act(pt).eta() >= min_eta) out.push_back(g);
  }
  return out;
}

Rational c_correction(const Level& level, std::int64_t nu) {
  const Rational e = fractional_part(make_rational(-nu, level.n()));
  return Rational(4 * level.n()) * (e * e - e);
}

Rational vanishing_order_oracle(const Level& level, std::int64_t nu) {
  const std::int64_t n = level.n();
  const std::int64_t bound = 2 + (nu + n - 1) / n;
  std::optional<Rational> best;
  for (std::int64_t k = -bound; k <= bound; ++k) {
    Rational v = make_rational(n * k * k, 2) + make_rational(n + 2 * nu, 2) * k + make_rational(n, 8) + make_rational(nu, 2);
    v.canonicalize();
    if (!best || v < *best) best = v;
  }
  return *best;
}

Rational vanishing_order(const Level& level, std::int64_t nu) {
  const std::int64_t n = level.n();
  if (nu < 0 || nu > n) throw std::invalid_argument("vanishing_order needs 0 <= nu <= N");
  const Rational e = fractional_part(make_rational(-nu, n));
  Rational closed = make_rational(n, 2) * (e * e - e) + make_rational(n, 8) - make_rational(nu * nu, 2 * n);
  closed.canonicalize();
  const Rational oracle = vanishing_order_oracle(level, nu);
  if (closed != oracle) {
    throw std::logic_error("vanishing order closed form " + to_string(closed) + " != minimisation " +
                           to_string(oracle));
  }
  return closed;
}

Rational reconstructed_c_coefficient(const Level& level, std::int64_t nu) {
  Rational r = 8 * vanishing_order(level, nu) + make_rational(4 * nu * nu, level.n());
  r.canonicalize();
  return r;
}

} // namespace bdivisor::jacobi
