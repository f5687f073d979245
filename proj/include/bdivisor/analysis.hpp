#pragma once

// Local analysis near the double points: the model singular functions
// f_{n,m}, finite-difference checks of their differential identities, the
// residue integral behind the Chern-Weil computation, and the toric
// support function / stability set with its volume.

#include "bdivisor/rational.hpp"
#include "bdivisor/surface.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace bdivisor::analysis {

using surface::Level;
using Complex = std::complex<double>;

/// Point (u, v) of the punctured bidisk: u, v != 0, |uv| < 1.
class PuncturedBidisk {
public:
  PuncturedBidisk(Complex u, Complex v);
  const Complex& u() const { return u_; }
  const Complex& v() const { return v_; }

private:
  Complex u_;
  Complex v_;
};

/// f_{n,m}(u,v) = (1/nm) log(u ubar) log(v vbar) / (n log(u ubar) + m log(v vbar)).
/// Throws std::domain_error when the denominator vanishes.
double f_nm(std::int64_t n, std::int64_t m, const PuncturedBidisk& p);

/// f_{n,m}(st, t) - log(t tbar) / (nm(n+m)) - f_{n,n+m}(s, t).
double pullback_identity_residual(std::int64_t n, std::int64_t m, Complex s, Complex t);

struct WedgeResidual {
  /// |f_{u ubar} f_{v vbar} - f_{u vbar} f_{v ubar}|.
  double residual = 0;
  /// |f_{u ubar} f_{v vbar}| + |f_{u vbar} f_{v ubar}|.
  double scale = 0;
  double relative() const { return scale > 0 ? residual / scale : residual; }
};

/// Complex Hessian determinant of f_{n,m} by central differences in the four
/// real coordinates, with step h * |u| (resp. h * |v|). Computed in long double.
WedgeResidual wedge_vanishing_residual(std::int64_t n, std::int64_t m, const PuncturedBidisk& p, double h);

struct GrowthProbe {
  double observed_max = 0;
  double bound = 0;
  std::int64_t samples = 0;
  bool pass = false;
};

/// Samples |f_{n,m}| over {|u| <= r0} x {v0} and compares with 2K/(n^2 m),
/// K = |log(v0 v0bar)|.
GrowthProbe loglog_growth_probe(std::int64_t n, std::int64_t m, double r0, Complex v0, std::int64_t samples,
                                std::uint64_t seed);

struct QuadratureResult {
  double value = 0;
  /// Sum of per-panel |Kronrod - Gauss| plus the truncated tail.
  double error_estimate = 0;
  /// Analytic bound on the dropped interval (-inf, a - T).
  double truncation_bound = 0;
  std::int64_t panels = 0;
};

/// I(eps) = int_0^eps 2 (log eps^2)^2 log(r^2) 2r dr / ((log r^2 + log eps^2)^4 r^2),
/// after t = log r^2 an integral of 2 a^2 t / (t + a)^4 over (-inf, a],
/// a = log eps^2. Adaptive Gauss-Kronrod on [a - T, a]; T chosen so the
/// dropped tail is below 1e-8. Exact value -1/6.
QuadratureResult residue_integral(double epsilon, double tol = 1e-12);

/// Antiderivative oracle 2 a^2 (-1/(2w^2) + a/(3w^3)), w = t + a, between -inf and a.
double residue_closed_form(double epsilon);

/// (16 / N^2) I(eps): the contribution of one boundary face of one double point.
double residue_face_contribution(const Level& level, double epsilon);

struct ResidueConsistency {
  Rational cc;
  /// -16 p_N / (3N) from the exact bookkeeping.
  Rational exact_residue_total;
  Rational limit;
  bool exact_identity = false;
  double quadrature_total = 0;
  double quadrature_budget = 0;
  bool quadrature_match = false;
};

/// Assembles N p_N double points x 2 faces x (16/N^2) x I(eps) exactly and by quadrature.
ResidueConsistency residue_consistency(const Level& level, double epsilon = 0.01);

/// min(0, u, v).
double psi_can(double u, double v);
/// uv/(u+v) on the closed positive quadrant (0 at the origin), min(u, v) elsewhere.
double psi_sing(double u, double v);

/// x, y >= 0, x + y <= 1, sqrt(x) + sqrt(y) >= 1.
bool delta_sing_membership(double x, double y);
/// Exact predicate for rational points.
bool delta_sing_membership(const Rational& x, const Rational& y);

enum class VolumeMethod { Exact, Quadrature, MonteCarlo };

const char* to_string(VolumeMethod method);
std::optional<VolumeMethod> parse_volume_method(const std::string& text);

struct ToricVolume {
  VolumeMethod method = VolumeMethod::Exact;
  /// Value of 2 Vol(Delta_sing); exact for VolumeMethod::Exact.
  double value = 0;
  std::optional<Rational> exact;
  double abs_error = 0;
  /// Tolerance the value is judged against (3 sigma for Monte Carlo).
  double tolerance = 0;
  std::int64_t budget = 0;
  std::optional<std::uint64_t> seed;
  bool pass = false;
};

/// 2 Vol(Delta_sing) = 2/3. Budget is panels (quadrature) or samples (Monte Carlo).
ToricVolume toric_volume(VolumeMethod method, std::int64_t budget, std::uint64_t seed = 20240601);

/// 2 Vol(Delta) - 2 Vol(Delta_sing) = 2 int_0^1 (1 - sqrt x)^2 dx, exactly.
Rational toric_defect_exact();

/// Checks x u + y v >= Psi_sing(u, v) on `directions` unit vectors.
bool support_dominates(double x, double y, int directions);

} // namespace bdivisor::analysis
