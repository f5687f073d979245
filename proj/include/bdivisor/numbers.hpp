#pragma once

#include "bdivisor/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>

namespace bdivisor::numbers {

/// Working real type for series work. Precision is the process-wide MPFR
/// default (50 decimal digits unless changed with set_working_digits).
using Real = boost::multiprecision::mpfr_float;

/// Changes the working precision. Call before any concurrent evaluation.
void set_working_digits(unsigned digits10);
unsigned working_digits();

/// Exact Bernoulli number B_k (B_1 = -1/2).
Rational bernoulli(int k);

/// zeta(s) for even 2 <= s <= 12 from (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!).
Real zeta_even(int s);

struct TornheimResult {
  Real partial_sum;
  std::int64_t terms_window = 0;
  /// Majorant of the terms with max(n, m) > window.
  Real tail_bound;

  bool contains(const Real& value) const { return partial_sum <= value && value <= partial_sum + tail_bound; }
};

/// 2 zeta(2) / (3 W^3), as a real.
Real tornheim_tail(std::int64_t window);

/// sum_{1 <= n, m <= window} 1 / (n^2 m^2 (n+m)^2), converging to zeta(6)/3.
TornheimResult tornheim_222(std::int64_t window);

/// Same sum restricted to gcd(n, m) = 1, converging to 1/3.
TornheimResult coprime_tornheim(std::int64_t window);

struct FactorizationCheck {
  /// |tornheim_222(W) - zeta(6) coprime_tornheim(W)|.
  Real asymptotic_residual;
  /// tail_full(W) + zeta(6) tail_coprime(W).
  Real asymptotic_budget;
  /// |coprime(W) - sum_d mu(d) d^-6 full(floor(W/d))|, exact up to rounding.
  Real inversion_residual;

  bool holds(const Real& rounding) const {
    return asymptotic_residual <= asymptotic_budget && inversion_residual <= rounding;
  }
};

/// Full sum = (sum_d d^-6) x (coprime sum), checked asymptotically and
/// through Moebius inversion at a finite window.
FactorizationCheck mobius_factorization(std::int64_t window);

/// Largest d with d^2 | n.
std::int64_t square_part(std::int64_t n);

std::int64_t mobius(std::int64_t n);

bool is_squarefree(std::int64_t n);

enum class HurwitzConvention {
  /// H(0) = -1/12, H(k) = 0 for k = 1, 2 mod 4, weighted class number otherwise;
  /// negative discriminants are evaluated at |Delta|.
  Kronecker,
  /// As Kronecker for k >= 0, but H(Delta) = 0 for Delta < 0.
  ZeroForNegativeArgument,
};

/// Hurwitz class number of k >= 0 by enumeration of reduced forms
/// ax^2 + bxy + cy^2, |b| <= a <= c, b^2 - 4ac = -k.
Rational hurwitz_class_number(std::int64_t k);

/// H at a signed argument under a convention; used by the dimension formula.
Rational hurwitz_at(std::int64_t delta, HurwitzConvention convention);

} // namespace bdivisor::numbers
