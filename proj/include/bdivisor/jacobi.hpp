#pragma once

#include "bdivisor/numbers.hpp"
#include "bdivisor/rational.hpp"
#include "bdivisor/surface.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bdivisor::jacobi {

using surface::Level;
using Complex = std::complex<long double>;

/// (tau, z) in H x C. eta = Im(tau) > 0, y = Im(z).
class ModularPoint {
public:
  ModularPoint(Complex tau, Complex z);
  const Complex& tau() const { return tau_; }
  const Complex& z() const { return z_; }
  long double eta() const { return tau_.imag(); }
  long double y() const { return z_.imag(); }

private:
  Complex tau_;
  Complex z_;
};

/// (a b; c d) in SL2(Z) together with a translation (lambda, mu) in Z^2.
/// Acts by z -> z + lambda tau + mu, then (tau, z) -> ((a tau + b)/(c tau + d), z/(c tau + d)).
struct GroupElement {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  std::int64_t lambda = 0, mu = 0;

  bool is_valid() const { return a * d - b * c == 1; }
  bool in_gamma(std::int64_t level) const;
  ModularPoint act(const ModularPoint& pt) const;
};

struct WeightIndex {
  int k = 4;
  int m = 4;
};

/// Raised when the dimension formula produces a non-integral or negative
/// value: the Hurwitz convention in use does not match the formula.
class ConventionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct DimensionReport {
  std::int64_t level = 0;
  std::int64_t ell = 0;
  Rational dim;
  /// dim / (ell^2 / 2).
  Rational ratio;
  /// ratio - 16 N p_N / 3.
  Rational gap;
};

/// Dimension of cusp Jacobi forms of weight and index 4 ell for Gamma(N),
/// N | 4 ell, from the closed formula with Q and the Hurwitz sum over
/// negative divisors Delta of 16 ell / N with squarefree cofactor.
DimensionReport dim_cusp(const Level& level, std::int64_t ell,
                         numbers::HurwitzConvention convention = numbers::HurwitzConvention::Kronecker);

struct HilbertSamuelResult {
  Rational target;
  std::vector<DimensionReport> rows;
  /// Envelope |gap| <= 4 N p_N / ell at the last ell.
  Rational final_bound;
  bool gaps_shrink = false;
  bool pass = false;
};

HilbertSamuelResult hilbert_samuel_check(const Level& level, const std::vector<std::int64_t>& ells,
                                         numbers::HurwitzConvention convention = numbers::HurwitzConvention::Kronecker);

/// Number of summation indices on each side so that the neglected tail of
/// the theta series is below `tol`.
std::int64_t theta_truncation(const ModularPoint& pt, long double tol);

/// theta_{1,1}(tau, z) = sum_n exp(pi i tau (n+1/2)^2 + 2 pi i (z+1/2)(n+1/2)),
/// absolute error below tol. Uses MPFR for eta < 0.1.
Complex theta11(const ModularPoint& pt, long double tol);

/// |f|^2 exp(-4 pi m y^2 / eta) eta^k.
long double invariant_norm_sq(Complex f, const ModularPoint& pt, WeightIndex wi);

/// log of invariant_norm_sq for f = theta_{1,1}^8 (weight 4, index 4).
long double log_theta8_norm_sq(const ModularPoint& pt, long double tol);

enum class InvarianceStatus { Pass, Fail, NearZero, Overflow };

struct InvarianceResult {
  InvarianceStatus status = InvarianceStatus::Fail;
  long double relative_deviation = 0;
  /// log ||theta^8||^2 at pt and at g.pt.
  long double log_norm_at_point = 0;
  long double log_norm_at_image = 0;
};

/// Compares ||theta^8||^2 at pt and at g.pt. Relative deviation is computed
/// from the log-norms.
InvarianceResult check_invariance(const GroupElement& g, const ModularPoint& pt, long double tol);

/// Deterministic group elements (words in S and T^k with a translation)
/// whose image of `pt` keeps Im(tau) >= min_eta.
std::vector<GroupElement> sample_group_elements(std::uint64_t seed, std::size_t count, const ModularPoint& pt,
                                                long double min_eta = 0.05L);

/// Vanishing order of theta_{1,1} along Theta_{1,nu}, closed form
/// N/2 (e^2 - e) + N/8 - nu^2/(2N) with e = frac(-nu/N). Cross-checked
/// against vanishing_order_oracle; a mismatch throws std::logic_error.
Rational vanishing_order(const Level& level, std::int64_t nu);

/// min over integers n of N/2 n^2 + (N/2 + nu) n + N/8 + nu/2.
Rational vanishing_order_oracle(const Level& level, std::int64_t nu);

/// 4N (e^2 - e) with e = frac(-nu/N).
Rational c_correction(const Level& level, std::int64_t nu);

/// 8 * vanishing order plus the metric's 4 nu^2 / N; equals the divisor coefficient.
Rational reconstructed_c_coefficient(const Level& level, std::int64_t nu);

} // namespace bdivisor::jacobi
