#include "bdivisor/numbers.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdivisor::numbers {

namespace {

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real term(std::int64_t n, std::int64_t m) {
  Real d = Real(n) * Real(m) * Real(n + m);
  return 1 / (d * d);
}

// Boost leaves the MPFR default at 20 digits; the library promises 50.
const bool kDefaultDigits = [] {
  Real::default_precision(50);
  return true;
}();

void check_window(std::int64_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1, got " + std::to_string(window));
}

// Sum over the square [1, W]^2 using n <-> m symmetry.
Real lattice_sum(std::int64_t window, bool coprime_only) {
  Real off_diagonal = 0;
  for (std::int64_t n = 1; n <= window; ++n) {
    Real row = 0;
    for (std::int64_t m = n + 1; m <= window; ++m) {
      if (coprime_only && std::gcd(n, m) != 1) continue;
      row += term(n, m);
    }
    off_diagonal += row;
  }
  Real diagonal = 0;
  if (coprime_only) {
    diagonal = term(1, 1);
  } else {
    for (std::int64_t n = 1; n <= window; ++n) diagonal += term(n, n);
  }
  return 2 * off_diagonal + diagonal;
}

} // namespace

void set_working_digits(unsigned digits10) {
  if (digits10 < 30) throw std::invalid_argument("working precision must be at least 30 digits");
  Real::default_precision(digits10);
}

unsigned working_digits() { return Real::default_precision(); }

Rational bernoulli(int k) {
  if (k < 0) throw std::invalid_argument("bernoulli index must be >= 0");
  std::vector<Rational> b(static_cast<std::size_t>(k) + 1);
  b[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rational acc = 0;
    BigInt binom = 1; // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += Rational(binom) * b[static_cast<std::size_t>(j)];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / Rational(m + 1);
  }
  return b[static_cast<std::size_t>(k)];
}

Real zeta_even(int s) {
  if (s < 2 || s > 12 || s % 2 != 0) {
    throw std::invalid_argument("zeta_even needs an even argument in [2, 12], got " + std::to_string(s));
  }
  const int k = s / 2;
  BigInt factorial = 1;
  for (int i = 2; i <= s; ++i) factorial *= i;
  Rational coeff = bernoulli(s) / Rational(2 * factorial);
  if (k % 2 == 0) coeff = -coeff;
  return to_real(coeff) * pow(2 * pi(), s);
}

Real tornheim_tail(std::int64_t window) {
  check_window(window);
  Real w = Real(window);
  return 2 * zeta_even(2) / (3 * w * w * w);
}

TornheimResult tornheim_222(std::int64_t window) {
  check_window(window);
  return {lattice_sum(window, false), window, tornheim_tail(window)};
}

TornheimResult coprime_tornheim(std::int64_t window) {
  check_window(window);
  return {lattice_sum(window, true), window, tornheim_tail(window)};
}

FactorizationCheck mobius_factorization(std::int64_t window) {
  check_window(window);
  const TornheimResult full = tornheim_222(window);
  const TornheimResult coprime = coprime_tornheim(window);
  const Real z6 = zeta_even(6);

  FactorizationCheck out;
  out.asymptotic_residual = abs(full.partial_sum - z6 * coprime.partial_sum);
  out.asymptotic_budget = full.tail_bound + z6 * coprime.tail_bound;

  Real inverted = 0;
  for (std::int64_t d = 1; d <= window; ++d) {
    const std::int64_t mu = mobius(d);
    if (mu == 0) continue;
    Real d6 = pow(Real(d), 6);
    inverted += Real(mu) * lattice_sum(window / d, false) / d6;
  }
  out.inversion_residual = abs(coprime.partial_sum - inverted);
  return out;
}

std::int64_t square_part(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("square_part needs n >= 1, got " + std::to_string(n));
  std::int64_t best = 1;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) best = d;
  }
  return best;
}

std::int64_t mobius(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("mobius needs n >= 1");
  std::int64_t sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

bool is_squarefree(std::int64_t n) { return mobius(n) != 0; }

Rational hurwitz_class_number(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("hurwitz_class_number needs k >= 0, got " + std::to_string(k));
  if (k == 0) return make_rational(-1, 12);
  if (k % 4 == 1 || k % 4 == 2) return 0;
  Rational total = 0;
  for (std::int64_t a = 1; 3 * a * a <= k; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + k;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a || (b < 0 && a == c)) continue;
      if (b == 0 && a == c) {
        total += make_rational(1, 2);
      } else if (b == a && a == c) {
        total += make_rational(1, 3);
      } else {
        total += 1;
      }
    }
  }
  return total;
}

Rational hurwitz_at(std::int64_t delta, HurwitzConvention convention) {
  if (delta < 0) {
    if (convention == HurwitzConvention::ZeroForNegativeArgument) return 0;
    return hurwitz_class_number(-delta);
  }
  return hurwitz_class_number(delta);
}

} // namespace bdivisor::numbers
