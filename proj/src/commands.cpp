#include "bdivisor/commands.hpp"

#include "bdivisor/jacobi.hpp"
#include "bdivisor/lattice.hpp"
#include "bdivisor/numbers.hpp"
#include "bdivisor/surface.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace bdivisor::cli {

using report::Report;
using surface::Level;

namespace {

using Reports = std::vector<Report>;

std::string rat(const Rational& r) { return to_string(r); }

double abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return std::fabs(d.get_d());
}

// Exact check whose bound is a proven non-zero majorant: --tol replaces it.
Report interval(const RunConfig& cfg, std::string name, const Rational& target, const Rational& estimate,
                const Rational& tail) {
  if (!cfg.tolerance_value()) return report::interval_check(std::move(name), target, estimate, tail);
  const double bound = *cfg.tolerance_value();
  Report r;
  r.check_name = std::move(name);
  r.target = rat(target);
  r.computed = rat(estimate);
  r.bound = to_decimal(bound);
  r.pass = abs_diff(estimate, target) <= bound;
  return r;
}

Report rational_within(const RunConfig& cfg, std::string name, const Rational& target, const Rational& computed,
                       const Rational& bound) {
  Report r;
  r.check_name = std::move(name);
  r.target = rat(target);
  r.computed = rat(computed);
  if (cfg.tolerance_value()) {
    r.bound = to_decimal(*cfg.tolerance_value());
    r.pass = abs_diff(computed, target) <= *cfg.tolerance_value();
  } else {
    r.bound = rat(bound);
    r.pass = abs(computed - target) <= bound;
  }
  return r;
}

Report count_check(std::string name, std::int64_t failures) {
  return report::exact_check(std::move(name), Rational(0), Rational(static_cast<long>(failures)));
}

Report failed(std::string name, const std::string& why) {
  Report r;
  r.check_name = std::move(name);
  r.target = "-";
  r.computed = "error";
  r.bound = "-";
  r.pass = false;
  r.details["error"] = why;
  return r;
}

// |SL2(Z/N)| / (2N) by counting first columns (a, c) with gcd(a, c, N) = 1;
// each such column extends to exactly N matrices.
std::int64_t cusp_count_by_counting(std::int64_t n) {
  std::int64_t columns = 0;
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t c = 0; c < n; ++c) {
      if (std::gcd(std::gcd(a, c), n) == 1) ++columns;
    }
  }
  return columns * n / (2 * n);
}

// ---- surface -------------------------------------------------------------

Reports surface_invariants(const RunConfig& cfg) {
  const Level level(cfg.level);
  const std::int64_t n = level.n();
  const std::int64_t p = surface::cusp_count(level);
  Reports out;
  Report cusps = report::exact_check("surface.cusp_count", Rational(static_cast<long>(cusp_count_by_counting(n))),
                                     Rational(static_cast<long>(p)));
  cusps.details = {{"N", n}, {"index", surface::index_gamma(level)}, {"p_N", p}};
  out.push_back(cusps);
  // Riemann-Hurwitz for Gamma(N), N >= 3: no elliptic points, N p_N = index / 2.
  const Rational rh = 1 + make_rational(n * p, 12) - make_rational(p, 2);
  out.push_back(report::exact_check("surface.genus", rh, Rational(static_cast<long>(surface::genus(level)))));
  const surface::SurfaceModel model = surface::base_model(level);
  out.push_back(report::exact_check("surface.components", Rational(static_cast<long>(1 + n * p)),
                                    Rational(static_cast<long>(model.components().size()))));
  return out;
}

Reports surface_form(const RunConfig& cfg) {
  const Level level(cfg.level);
  const std::int64_t n = level.n();
  const std::int64_t p = surface::cusp_count(level);
  const surface::SurfaceModel model = surface::base_model(level);
  const auto& form = model.form();
  std::int64_t asymmetric = 0;
  for (const auto& [ab, q] : form.entries()) {
    if (form.get(ab.second, ab.first) != q) ++asymmetric;
  }
  Reports out;
  out.push_back(count_check("surface.form_symmetric", asymmetric));

  // F_j = sum_nu Theta_{j,nu} is numerically trivial on its own fiber and meets H once.
  std::int64_t nonzero = 0;
  std::int64_t bad_section = 0;
  const surface::QDivisor h = surface::component_divisor(model, surface::ComponentId::zero_section());
  for (std::int64_t j = 1; j <= p; ++j) {
    surface::QDivisor fiber{model.key(), {}};
    for (std::int64_t nu = 0; nu < n; ++nu) {
      fiber += surface::component_divisor(model, surface::ComponentId::fiber(j, nu));
    }
    if (lattice::intersect(model, fiber, fiber) != 0) ++nonzero;
    for (std::int64_t nu = 0; nu < n; ++nu) {
      const auto theta = surface::component_divisor(model, surface::ComponentId::fiber(j, nu));
      if (lattice::intersect(model, fiber, theta) != 0) ++nonzero;
    }
    if (lattice::intersect(model, fiber, h) != 1) ++bad_section;
  }
  out.push_back(count_check("surface.fiber_class_nullity", nonzero));
  out.push_back(count_check("surface.fiber_meets_section_once", bad_section));
  return out;
}

Reports surface_jacobi(const RunConfig& cfg) {
  const Level level(cfg.level);
  const auto state = lattice::start_tower(level);
  Reports out;
  out.push_back(report::exact_check("surface.jacobi_self_intersection", lattice::closed_form_cc(level), state.self_int));
  const auto h = surface::component_divisor(state.model, surface::ComponentId::zero_section());
  // 8 H.H + p_N * N from the nu = 0 components.
  Report ch = report::exact_check("surface.jacobi_dot_section",
                                  make_rational(level.n() * surface::cusp_count(level), 3),
                                  lattice::intersect(state.model, state.div, h));
  out.push_back(ch);
  return out;
}

// ---- tower ---------------------------------------------------------------

Reports tower_oracle(const RunConfig& cfg) {
  const Level level(cfg.level);
  std::int64_t mismatches = 0;
  Rational last_rec;
  Rational last_lat;
  for (std::int64_t d = 0; d <= cfg.depth; ++d) {
    last_rec = lattice::recursion_self_intersection(level, d);
    last_lat = lattice::lattice_self_intersection(level, d);
    if (last_rec != last_lat) ++mismatches;
  }
  Report r = report::exact_check("tower.oracle_match", last_rec, last_lat);
  r.pass = r.pass && mismatches == 0;
  r.details = {{"N", cfg.level}, {"depth", cfg.depth}, {"mismatched_depths", mismatches}};
  return {r};
}

Reports tower_limit(const RunConfig& cfg) {
  const Level level(cfg.level);
  const auto lim = lattice::bdv_limit(level, cfg.window);
  Report r = interval(cfg, "tower.limit", lim.target, lim.estimate, lim.tail_bound);
  r.details = {{"N", cfg.level},
               {"M", cfg.window},
               {"estimate", rat(lim.estimate)},
               {"tail_bound", rat(lim.tail_bound)},
               {"target", rat(lim.target)},
               {"pass", r.pass}};
  return {r};
}

Reports tower_identity(const RunConfig& cfg) {
  const Level level(cfg.level);
  const std::int64_t n = level.n();
  const Rational cc = lattice::start_tower(level).self_int;
  const Rational lhs = cc - make_rational(16 * surface::cusp_count(level), 3 * n);
  Reports out;
  out.push_back(report::exact_check("tower.closed_form_identity", lattice::limit_self_intersection(level), lhs));
  std::int64_t increases = 0;
  Rational prev = lattice::recursion_self_intersection(level, 0);
  for (std::int64_t d = 1; d <= cfg.depth; ++d) {
    const Rational cur = lattice::recursion_self_intersection(level, d);
    if (!(cur < prev)) ++increases;
    prev = cur;
  }
  out.push_back(count_check("tower.strictly_decreasing", increases));
  return out;
}

// ---- zeta ----------------------------------------------------------------

Report tornheim_report(const RunConfig& cfg, std::string name, const numbers::TornheimResult& t,
                       const numbers::Real& target, std::string target_text) {
  const numbers::Real deviation = abs(target - t.partial_sum);
  Report r = report::bounded_check(std::move(name), std::move(target_text), report::decimal(t.partial_sum), deviation,
                                   cfg.bound(t.tail_bound.convert_to<double>()));
  // Partial sums approach from below.
  r.pass = r.pass && t.partial_sum <= target;
  r.details = {{"window", t.terms_window}, {"tail_bound", report::decimal(t.tail_bound)}};
  return r;
}

Reports zeta_coprime(const RunConfig& cfg) {
  const auto t = numbers::coprime_tornheim(cfg.window);
  return {tornheim_report(cfg, "zeta.coprime_tornheim", t, numbers::Real(1) / 3, "1/3")};
}

Reports zeta_full(const RunConfig& cfg) {
  const auto t = numbers::tornheim_222(cfg.window);
  const numbers::Real target = numbers::zeta_even(6) / 3;
  return {tornheim_report(cfg, "zeta.tornheim_222", t, target, report::decimal(target))};
}

Reports zeta_factorization(const RunConfig& cfg) {
  const auto f = numbers::mobius_factorization(cfg.window);
  const double rounding = std::pow(10.0, -static_cast<double>(numbers::working_digits()) + 10);
  Reports out;
  out.push_back(report::bounded_check("zeta.mobius_inversion", "0", report::decimal(f.inversion_residual),
                                      f.inversion_residual, cfg.bound(rounding)));
  out.push_back(report::bounded_check("zeta.factorization", "0", report::decimal(f.asymptotic_residual),
                                      f.asymptotic_residual, cfg.bound(f.asymptotic_budget.convert_to<double>())));
  return out;
}

// ---- dim -----------------------------------------------------------------

Report dim_row(const RunConfig& cfg, const Level& level, std::int64_t ell, const Rational& bound,
               const std::string& prefix) {
  const std::string name = prefix + ".ell=" + std::to_string(ell);
  try {
    const auto row = jacobi::dim_cusp(level, ell);
    Report r = rational_within(cfg, name, row.ratio - row.gap, row.ratio, bound);
    r.details = {{"N", level.n()}, {"ell", ell}, {"dim", rat(row.dim)}, {"gap", rat(row.gap)}};
    return r;
  } catch (const std::exception& e) {
    return failed(name, e.what());
  }
}

Report gap_sequence(const Level& level, const std::vector<std::int64_t>& ells, const std::string& name) {
  try {
    const auto hs = jacobi::hilbert_samuel_check(level, ells);
    std::int64_t increases = 0;
    for (std::size_t i = 1; i < hs.rows.size(); ++i) {
      if (!(abs(hs.rows[i].gap) < abs(hs.rows[i - 1].gap))) ++increases;
    }
    return count_check(name, increases);
  } catch (const std::exception& e) {
    return failed(name, e.what());
  }
}

// ---- theta ---------------------------------------------------------------

std::vector<jacobi::ModularPoint> theta_points() {
  using C = jacobi::Complex;
  return {jacobi::ModularPoint(C(0.1L, 1.0L), C(0.23L, 0.17L)), jacobi::ModularPoint(C(-0.35L, 0.8L), C(0.41L, -0.12L)),
          jacobi::ModularPoint(C(0.2L, 1.6L), C(-0.3L, 0.35L))};
}

Reports theta_oddness(const RunConfig& cfg) {
  long double worst = 0;
  for (const auto& pt : theta_points()) {
    const auto plus = jacobi::theta11(pt, 1e-30L);
    const auto minus = jacobi::theta11(jacobi::ModularPoint(pt.tau(), -pt.z()), 1e-30L);
    worst = std::max(worst, std::abs(plus + minus) / std::abs(plus));
  }
  Report r = report::bounded_check("theta.oddness", 0.0, static_cast<double>(worst), cfg.bound(1e-9));
  r.details = {{"points", theta_points().size()}};
  return {r};
}

Reports theta_invariance(const RunConfig& cfg) {
  const double bound = cfg.bound(1e-9);
  const auto pt = theta_points().front();
  const auto elements = jacobi::sample_group_elements(cfg.seed, 20, pt);
  long double worst = 0;
  std::int64_t skipped = 0;
  std::int64_t failures = 0;
  for (const auto& g : elements) {
    const auto res = jacobi::check_invariance(g, pt, static_cast<long double>(bound));
    if (res.status == jacobi::InvarianceStatus::NearZero || res.status == jacobi::InvarianceStatus::Overflow) {
      ++skipped;
      continue;
    }
    if (res.status == jacobi::InvarianceStatus::Fail) ++failures;
    worst = std::max(worst, res.relative_deviation);
  }
  Report r = report::bounded_check("theta.invariance", 0.0, static_cast<double>(worst), bound);
  r.pass = r.pass && failures == 0 && skipped == 0;
  r.details = {{"elements", elements.size()}, {"skipped", skipped}, {"seed", cfg.seed},
               {"max_relative_deviation", to_decimal(static_cast<double>(worst))}};
  return {r};
}

// ---- residue -------------------------------------------------------------

Report residue_report(const RunConfig& cfg, double epsilon, double fallback, const std::string& name) {
  const auto q = analysis::residue_integral(epsilon);
  Report r = report::bounded_check(name, -1.0 / 6.0, q.value, cfg.bound(fallback));
  r.target = "-1/6";
  r.details = {{"method", "gauss-kronrod"},
               {"epsilon", to_decimal(epsilon)},
               {"value", to_decimal(q.value)},
               {"target", "-1/6"},
               {"abs_error", to_decimal(std::fabs(q.value + 1.0 / 6.0))},
               {"budget", q.panels},
               {"truncation_bound", to_decimal(q.truncation_bound)}};
  return r;
}

Reports residue_consistency_reports(const RunConfig& cfg, const Level& level, const std::string& prefix) {
  const auto rc = analysis::residue_consistency(level, cfg.epsilon);
  Reports out;
  out.push_back(report::exact_check(prefix + ".exact_identity", rc.limit, rc.cc + rc.exact_residue_total));
  Report q = report::bounded_check(prefix + ".quadrature_total", rc.exact_residue_total.get_d(), rc.quadrature_total,
                                   cfg.bound(rc.quadrature_budget));
  q.target = rat(rc.exact_residue_total);
  out.push_back(q);
  return out;
}

// ---- toric ---------------------------------------------------------------

Report toric_report(const RunConfig& cfg, analysis::VolumeMethod method, const std::string& name) {
  const std::int64_t budget =
      method == analysis::VolumeMethod::MonteCarlo ? cfg.monte_carlo_samples : cfg.quadrature_panels;
  const auto v = analysis::toric_volume(method, budget, cfg.seed);
  Report r;
  if (method == analysis::VolumeMethod::Exact) {
    r = report::exact_check(name, make_rational(2, 3), *v.exact);
  } else {
    r = report::bounded_check(name, 2.0 / 3.0, v.value, cfg.bound(v.tolerance));
    r.target = "2/3";
  }
  r.details = {{"method", analysis::to_string(method)},
               {"value", v.exact ? rat(*v.exact) : to_decimal(v.value)},
               {"target", "2/3"},
               {"abs_error", to_decimal(v.abs_error)},
               {"budget", v.budget}};
  if (v.seed) r.details["seed"] = *v.seed;
  return r;
}

Reports toric_tower(const RunConfig& cfg, const std::string& prefix) {
  auto state = lattice::toric_seed_tower();
  const Rational dv2 = state.self_int;
  const surface::SingularPoint seed = state.frontier.front();
  lattice::grow_tower(state, seed, cfg.depth, 1u << 16);
  Reports out;
  // Coprime Tornheim total 1/3 removed from dv(x0)^2 = 1.
  out.push_back(report::exact_check(prefix + ".tower_identity", make_rational(2, 3), dv2 - make_rational(1, 3)));
  Report d = report::exact_check(prefix + ".tower_depth", 1 - lattice::node_sum(cfg.depth), state.self_int);
  d.details = {{"depth", cfg.depth}, {"blowups", state.model.blowup_history().size()}};
  out.push_back(d);
  return out;
}

// ---- acceptance criteria -------------------------------------------------

Reports criterion1(const RunConfig&) {
  Reports out;
  out.push_back(report::exact_check("c1.cc_level4", Rational(136), lattice::start_tower(Level(4)).self_int));
  std::int64_t mismatches = 0;
  for (std::int64_t n = 3; n <= 30; ++n) {
    const Level level(n);
    const Rational expected = make_rational(16 * (n * n + 1) * surface::cusp_count(level), 3 * n);
    if (lattice::start_tower(level).self_int != expected) ++mismatches;
  }
  out.push_back(count_check("c1.cc_closed_form_N3_30", mismatches));
  return out;
}

Reports criterion2(const RunConfig&) {
  Reports out;
  for (std::int64_t n : {3, 4, 5}) {
    const Level level(n);
    std::int64_t mismatches = 0;
    for (std::int64_t d = 0; d <= 5; ++d) {
      if (lattice::recursion_self_intersection(level, d) != lattice::lattice_self_intersection(level, d)) ++mismatches;
    }
    out.push_back(count_check("c2.oracle_N" + std::to_string(n) + "_depth0_5", mismatches));
  }
  return out;
}

Reports criterion3(const RunConfig& cfg) {
  Reports out;
  const auto lim = lattice::bdv_limit(Level(4), 200);
  Report r = interval(cfg, "c3.limit_N4_M200", lim.target, lim.estimate, lim.tail_bound);
  r.pass = r.pass && lim.tail_bound < make_rational(1, 10000);
  out.push_back(r);
  std::int64_t mismatches = 0;
  for (std::int64_t n = 3; n <= 30; ++n) {
    const Level level(n);
    const std::int64_t p = surface::cusp_count(level);
    if (lattice::closed_form_cc(level) - make_rational(16 * p, 3 * n) != make_rational(16 * n * p, 3)) ++mismatches;
  }
  out.push_back(count_check("c3.limit_identity_N3_30", mismatches));
  return out;
}

Reports criterion4(const RunConfig& cfg) {
  Reports out;
  const auto coprime = numbers::coprime_tornheim(300);
  const auto full = numbers::tornheim_222(300);
  Report a = tornheim_report(cfg, "c4.coprime_tornheim_300", coprime, numbers::Real(1) / 3, "1/3");
  a.pass = a.pass && coprime.tail_bound < numbers::Real(1e-6);
  const numbers::Real z = numbers::zeta_even(6) / 3;
  Report b = tornheim_report(cfg, "c4.tornheim_222_300", full, z, report::decimal(z));
  b.pass = b.pass && full.tail_bound < numbers::Real(1e-6);
  out.push_back(a);
  out.push_back(b);
  return out;
}

Reports criterion5(const RunConfig& cfg) {
  Reports out;
  std::vector<double> values;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    out.push_back(residue_report(cfg, eps, 1e-6, "c5.residue_eps=" + to_decimal(eps)));
    values.push_back(analysis::residue_integral(eps).value);
  }
  double spread = 0;
  for (double x : values) {
    for (double y : values) spread = std::max(spread, std::fabs(x - y));
  }
  out.push_back(report::bounded_check("c5.epsilon_variation", 0.0, spread, cfg.bound(2e-6)));
  RunConfig local = cfg;
  local.epsilon = 0.01;
  for (auto& r : residue_consistency_reports(local, Level(4), "c5.consistency_N4")) out.push_back(r);
  return out;
}

Reports criterion6(const RunConfig& cfg) {
  RunConfig local = cfg;
  local.quadrature_panels = 10000;
  local.depth = 6;
  Reports out;
  out.push_back(toric_report(local, analysis::VolumeMethod::Exact, "c6.toric_exact"));
  out.push_back(toric_report(local, analysis::VolumeMethod::Quadrature, "c6.toric_quadrature"));
  for (auto& r : toric_tower(local, "c6")) out.push_back(r);
  return out;
}

Reports criterion7(const RunConfig& cfg) {
  const Level level(4);
  const std::vector<std::int64_t> ells{25, 50, 100};
  Reports out;
  for (std::int64_t ell : ells) out.push_back(dim_row(cfg, level, ell, make_rational(50, ell), "c7.dim_N4"));
  out.push_back(gap_sequence(level, ells, "c7.gap_decreasing"));
  return out;
}

Reports criterion8(const RunConfig&) {
  std::int64_t order_mismatches = 0;
  std::int64_t c_mismatches = 0;
  for (std::int64_t n = 3; n <= 12; ++n) {
    const Level level(n);
    for (std::int64_t nu = 0; nu <= n; ++nu) {
      try {
        if (jacobi::vanishing_order(level, nu) != jacobi::vanishing_order_oracle(level, nu)) ++order_mismatches;
      } catch (const std::logic_error&) {
        ++order_mismatches;
      }
      const Rational rhs = make_rational(4 * nu * nu, n) - Rational(static_cast<long>(4 * nu));
      if (jacobi::c_correction(level, nu) != rhs) ++c_mismatches;
    }
  }
  return {count_check("c8.vanishing_order_N3_12", order_mismatches),
          count_check("c8.c_coefficient_N3_12", c_mismatches)};
}

double pullback_sweep(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.05, 0.95);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  double worst = 0;
  for (std::int64_t n = 1; n <= 10; ++n) {
    for (std::int64_t m = 1; m <= 10; ++m) {
      if (std::gcd(n, m) != 1) continue;
      for (int k = 0; k < 100; ++k) {
        const analysis::Complex s = std::polar(radius(rng), angle(rng));
        const analysis::Complex t = std::polar(radius(rng), angle(rng));
        worst = std::max(worst, std::fabs(analysis::pullback_identity_residual(n, m, s, t)));
      }
    }
  }
  return worst;
}

// Observed order of the finite-difference wedge residual between h and h/2.
double wedge_order() {
  const analysis::PuncturedBidisk p({0.3, 0.1}, {0.2, -0.25});
  const double r1 = analysis::wedge_vanishing_residual(1, 2, p, 2e-3).residual;
  const double r2 = analysis::wedge_vanishing_residual(1, 2, p, 1e-3).residual;
  return std::log2(r1 / r2);
}

Reports criterion9(const RunConfig& cfg) {
  Reports out;
  Report pb = report::bounded_check("c9.pullback_identity", 0.0, pullback_sweep(cfg.seed), cfg.bound(1e-10));
  pb.details = {{"seed", cfg.seed}, {"pairs", "coprime n,m <= 10"}, {"points_per_pair", 100}};
  out.push_back(pb);
  Report wedge = report::bounded_check("c9.wedge_second_order", 2.0, wedge_order(), cfg.bound(0.25));
  out.push_back(wedge);
  for (auto& r : theta_oddness(cfg)) {
    r.check_name = "c9.theta_oddness";
    out.push_back(r);
  }
  for (auto& r : theta_invariance(cfg)) {
    r.check_name = "c9.theta_invariance";
    out.push_back(r);
  }
  return out;
}

Task task(std::string name, Reports (*fn)(const RunConfig&), const RunConfig& cfg) {
  return Task{std::move(name), [fn, cfg] { return fn(cfg); }};
}

std::string dim_csv(const RunConfig& cfg) {
  std::ostringstream out;
  out << "N,ell,dim,ratio,gap\n";
  const Level level(cfg.level);
  for (std::int64_t ell : cfg.ells) {
    const auto row = jacobi::dim_cusp(level, ell);
    out << cfg.level << ',' << ell << ',' << rat(row.dim) << ',' << rat(row.ratio) << ',' << rat(row.gap) << '\n';
  }
  return out.str();
}

} // namespace

// ---- RunConfig -----------------------------------------------------------

std::optional<double> RunConfig::tolerance_value() const {
  if (!tolerance) return std::nullopt;
  const std::string& s = *tolerance;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v) || !(v > 0)) {
    throw ConfigError("--tol must be a positive decimal, got '" + s + "'");
  }
  return v;
}

double RunConfig::bound(double fallback) const {
  const auto t = tolerance_value();
  return t ? *t : fallback;
}

void RunConfig::validate() const {
  if (level < 3) throw ConfigError("--level must be >= 3, got " + std::to_string(level));
  if (depth < 0) throw ConfigError("--depth must be >= 0");
  if (depth > 20) throw ConfigError("--depth above 20 exceeds the lattice budget");
  if (window < 2) throw ConfigError("--window must be >= 2");
  if (precision_digits < 30) throw ConfigError("--precision must be >= 30");
  if (ells.empty()) throw ConfigError("--ell needs at least one value");
  for (std::int64_t ell : ells) {
    if (ell < 1) throw ConfigError("--ell values must be >= 1");
  }
  if (!(epsilon > 0) || !(epsilon < std::exp(-1.0))) throw ConfigError("epsilon must lie in (0, 1/e)");
  if (quadrature_panels < 1 || monte_carlo_samples < 1) throw ConfigError("budgets must be positive");
  tolerance_value();
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["level"] = level;
  j["depth"] = depth;
  j["window"] = window;
  j["ell"] = ells;
  j["tol"] = tolerance ? nlohmann::json(*tolerance) : nlohmann::json(nullptr);
  j["precision"] = precision_digits;
  j["seed"] = seed;
  j["format"] = format == OutputFormat::Json ? "json" : "csv";
  j["method"] = analysis::to_string(method);
  j["epsilon"] = to_decimal(epsilon);
  j["quadrature_panels"] = quadrature_panels;
  j["monte_carlo_samples"] = monte_carlo_samples;
  return j;
}

// ---- runner --------------------------------------------------------------

std::size_t worker_budget() {
  const char* env = std::getenv("BDIVISOR_WORKERS");
  if (env == nullptr || *env == '\0') {
    const unsigned hw = std::thread::hardware_concurrency();
    return std::clamp<std::size_t>(hw == 0 ? 1 : hw, 1, 8);
  }
  std::size_t v = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0 || v > 256) {
    throw ConfigError("BDIVISOR_WORKERS must be an integer in [1, 256], got '" + s + "'");
  }
  return v;
}

std::vector<Report> run_tasks(const std::vector<Task>& tasks, std::size_t workers) {
  std::vector<Reports> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = tasks[i].run();
      } catch (const std::exception& e) {
        results[i] = {failed(tasks[i].name, e.what())};
      }
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      for (auto& r : results[i]) r.runtime_ms = ms;
    }
  };
  const std::size_t n = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<Report> out;
  for (auto& rs : results) {
    for (auto& r : rs) out.push_back(std::move(r));
  }
  return out;
}

std::vector<Task> surface_tasks(const RunConfig& cfg) {
  return {task("surface.invariants", surface_invariants, cfg), task("surface.form", surface_form, cfg),
          task("surface.jacobi", surface_jacobi, cfg)};
}

std::vector<Task> tower_tasks(const RunConfig& cfg) {
  return {task("tower.oracle", tower_oracle, cfg), task("tower.limit", tower_limit, cfg),
          task("tower.identity", tower_identity, cfg)};
}

std::vector<Task> zeta_tasks(const RunConfig& cfg) {
  return {task("zeta.coprime", zeta_coprime, cfg), task("zeta.full", zeta_full, cfg),
          task("zeta.factorization", zeta_factorization, cfg)};
}

std::vector<Task> dim_tasks(const RunConfig& cfg) {
  std::vector<Task> out;
  const Level level(cfg.level);
  const std::int64_t p = surface::cusp_count(level);
  for (std::int64_t ell : cfg.ells) {
    out.push_back(Task{"dim.ell=" + std::to_string(ell), [cfg, level, ell, p] {
                         return Reports{dim_row(cfg, level, ell, make_rational(4 * cfg.level * p, ell), "dim")};
                       }});
  }
  out.push_back(Task{"dim.gap_decreasing", [cfg, level] {
                       return Reports{gap_sequence(level, cfg.ells, "dim.gap_decreasing")};
                     }});
  return out;
}

std::vector<Task> theta_tasks(const RunConfig& cfg) {
  return {task("theta.oddness", theta_oddness, cfg), task("theta.invariance", theta_invariance, cfg)};
}

std::vector<Task> residue_tasks(const RunConfig& cfg) {
  return {Task{"residue.integral", [cfg] { return Reports{residue_report(cfg, cfg.epsilon, 1e-6, "residue.integral")}; }},
          Task{"residue.consistency",
               [cfg] { return residue_consistency_reports(cfg, Level(cfg.level), "residue.consistency"); }}};
}

std::vector<Task> toric_tasks(const RunConfig& cfg) {
  return {Task{"toric.volume", [cfg] { return Reports{toric_report(cfg, cfg.method, "toric.volume")}; }},
          Task{"toric.tower", [cfg] { return toric_tower(cfg, "toric"); }}};
}

std::vector<Task> verify_all_tasks(const RunConfig& cfg) {
  return {task("c1", criterion1, cfg), task("c2", criterion2, cfg), task("c3", criterion3, cfg),
          task("c4", criterion4, cfg), task("c5", criterion5, cfg), task("c6", criterion6, cfg),
          task("c7", criterion7, cfg), task("c8", criterion8, cfg), task("c9", criterion9, cfg)};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"surface", "tower",   "zeta",  "dim",
                                              "theta-check", "residue", "toric", "verify-all"};
  return names;
}

std::vector<Task> tasks_for(const std::string& command, const RunConfig& cfg) {
  if (command == "surface") return surface_tasks(cfg);
  if (command == "tower") return tower_tasks(cfg);
  if (command == "zeta") return zeta_tasks(cfg);
  if (command == "dim") return dim_tasks(cfg);
  if (command == "theta-check") return theta_tasks(cfg);
  if (command == "residue") return residue_tasks(cfg);
  if (command == "toric") return toric_tasks(cfg);
  if (command == "verify-all") return verify_all_tasks(cfg);
  throw ConfigError("unknown subcommand '" + command + "'");
}

int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err,
                const std::optional<std::string>& out_file) {
  std::vector<Report> reports;
  std::string text;
  try {
    cfg.validate();
    if (command == "dim") {
      for (std::int64_t ell : cfg.ells) {
        if ((4 * ell) % cfg.level != 0) {
          throw ConfigError("--ell " + std::to_string(ell) + " needs N | 4 ell");
        }
      }
    }
    const std::size_t workers = worker_budget();
    numbers::set_working_digits(cfg.precision_digits);
    reports = run_tasks(tasks_for(command, cfg), workers);
    if (cfg.format == OutputFormat::Csv) {
      if (command == "tower") {
        text = lattice::to_csv(lattice::convergence_table(Level(cfg.level), cfg.depth));
      } else if (command == "dim") {
        text = dim_csv(cfg);
      } else {
        text = report::to_csv(reports);
      }
    } else {
      text = report::document(command, cfg.to_json(), reports).dump(2) + "\n";
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (out_file) {
    std::ofstream file(*out_file);
    if (!file) {
      err << "error: cannot write " << *out_file << '\n';
      return 2;
    }
    file << text;
  } else {
    out << text;
  }
  for (const auto& r : reports) {
    if (!r.pass) err << "FAIL " << r.check_name << ": computed " << r.computed << ", target " << r.target << '\n';
  }
  return report::all_pass(reports) ? 0 : 1;
}

} // namespace bdivisor::cli
