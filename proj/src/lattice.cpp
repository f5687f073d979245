#include "bdivisor/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bdivisor::lattice {

using surface::ComponentKind;

namespace {

Rational multiplier_16p_over_n(const Level& level) {
  return make_rational(BigInt(16 * surface::cusp_count(level)), BigInt(level.n()));
}

void sync_singular_points(TowerState& state) {
  state.model.set_singular_points({state.frontier.begin(), state.frontier.end()});
}

void apply_blow_up(TowerState& state, const SingularPoint& point) {
  auto it = std::find(state.frontier.begin(), state.frontier.end(), point);
  if (it == state.frontier.end()) {
    throw std::invalid_argument("blow-up point is not in the frontier of singular points");
  }
  if (state.model.curves_meet(point.first, point.second) != 1) {
    throw std::invalid_argument("blow-up point components " + surface::to_string(point.first) + ", " +
                                surface::to_string(point.second) + " do not cross transversally");
  }
  const SingularPoint p = *it;
  state.frontier.erase(it);

  const std::int64_t serial = state.model.add_exceptional(p);
  const ComponentId e = ComponentId::exceptional(serial);
  const Rational weight(BigInt(p.n) * p.m * (p.n + p.m));
  state.div.model_key = state.model.key();
  state.div.coeffs[e] = -p.multiplicity / weight;

  const Rational expected = state.self_int - blowup_drop(p);
  const Rational actual = intersect(state.model, state.div, state.div);
  if (actual != expected) {
    throw std::logic_error("self-intersection drift after blow-up: lattice " + to_string(actual) +
                           ", recursion " + to_string(expected));
  }
  state.self_int = actual;

  state.frontier.push_back({e, p.second, p.n + p.m, p.m, p.multiplicity});
  state.frontier.push_back({p.first, e, p.n, p.n + p.m, p.multiplicity});
}

} // namespace

Rational intersect(const SurfaceModel& model, const QDivisor& d1, const QDivisor& d2) {
  if (d1.model_key != model.key() || d2.model_key != model.key()) {
    throw std::invalid_argument("intersect: divisors live on a different model");
  }
  return model.form().pair(d1.coeffs, d2.coeffs);
}

std::pair<SternBrocotNode, SternBrocotNode> SternBrocotNode::children() const {
  return {SternBrocotNode{n + m, m, depth + 1}, SternBrocotNode{n, n + m, depth + 1}};
}

Rational SternBrocotNode::contribution() const {
  BigInt d = BigInt(n) * m * (n + m);
  return make_rational(BigInt(1), d * d);
}

std::vector<SternBrocotNode> stern_brocot_nodes(std::int64_t max_depth) {
  if (max_depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (max_depth > 30) throw std::length_error("Stern-Brocot enumeration beyond depth 30");
  std::vector<SternBrocotNode> nodes{SternBrocotNode{}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].depth == max_depth) continue;
    auto [left, right] = nodes[i].children();
    nodes.push_back(left);
    nodes.push_back(right);
  }
  return nodes;
}

Rational node_sum(std::int64_t depth) {
  Rational s = 0;
  for (const auto& node : stern_brocot_nodes(depth)) s += node.contribution();
  return s;
}

Rational blowup_drop(const SingularPoint& point) {
  BigInt w = BigInt(point.n) * point.m * (point.n + point.m);
  Rational r = point.multiplicity / Rational(w);
  return r * r;
}

TowerState start_tower(const Level& level) {
  TowerState state{surface::base_model(level), {}, 0, {}};
  state.div = surface::jacobi_divisor(state.model);
  state.self_int = intersect(state.model, state.div, state.div);
  const auto& pts = state.model.singular_points();
  state.frontier.assign(pts.begin(), pts.end());
  return state;
}

TowerState toric_seed_tower() {
  TowerState state{surface::toric_seed_model(), {}, 0, {}};
  state.div = surface::component_divisor(state.model, ComponentId::toric_line(0));
  state.self_int = intersect(state.model, state.div, state.div);
  const auto& pts = state.model.singular_points();
  state.frontier.assign(pts.begin(), pts.end());
  return state;
}

TowerState blow_up(const TowerState& state, const SingularPoint& point) {
  TowerState next = state;
  apply_blow_up(next, point);
  sync_singular_points(next);
  return next;
}

void blow_up_in_place(TowerState& state, const SingularPoint& point) {
  apply_blow_up(state, point);
  sync_singular_points(state);
}

TowerState mild_blow_up(const TowerState& state, const ComponentId& a, const ComponentId& b) {
  for (const auto& p : state.frontier) {
    if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) {
      throw std::invalid_argument("mild_blow_up: the crossing is a singular point");
    }
  }
  if (state.model.curves_meet(a, b) != 1) {
    throw std::invalid_argument("mild_blow_up: components do not cross transversally");
  }
  TowerState next = state;
  next.model.add_exceptional(SingularPoint{a, b, 0, 0, Rational(0)});
  next.div.model_key = next.model.key();
  if (intersect(next.model, next.div, next.div) != state.self_int) {
    throw std::logic_error("mild blow-up changed the self-intersection");
  }
  return next;
}

Rational recursion_self_intersection(const Level& level, std::int64_t depth) {
  const Rational mu = make_rational(4, level.n());
  const std::int64_t points = level.n() * surface::cusp_count(level);
  Rational value = closed_form_cc(level);
  for (const auto& node : stern_brocot_nodes(depth)) {
    SingularPoint p{ComponentId{}, ComponentId{}, node.n, node.m, mu};
    value -= Rational(points) * blowup_drop(p);
  }
  return value;
}

std::size_t grow_tower(TowerState& state, const SingularPoint& seed, std::int64_t depth, std::size_t budget) {
  std::deque<std::pair<SingularPoint, std::int64_t>> queue{{seed, 0}};
  std::size_t done = 0;
  while (!queue.empty()) {
    auto [point, d] = queue.front();
    queue.pop_front();
    if (d > depth) continue;
    if (done == budget) {
      throw std::length_error("lattice tower exceeded its budget of " + std::to_string(budget) + " blow-ups");
    }
    apply_blow_up(state, point);
    ++done;
    const SingularPoint right = state.frontier.back();
    const SingularPoint left = state.frontier[state.frontier.size() - 2];
    queue.emplace_back(left, d + 1);
    queue.emplace_back(right, d + 1);
  }
  sync_singular_points(state);
  return done;
}

Rational lattice_self_intersection(const Level& level, std::int64_t depth, const LatticeOptions& options) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  TowerState state = start_tower(level);
  const Rational base = state.self_int;
  const std::vector<SingularPoint> seeds(state.frontier.begin(), state.frontier.end());

  if (options.mode == SeedMode::Single) {
    grow_tower(state, seeds.front(), depth, options.budget);
    const Rational single = intersect(state.model, state.div, state.div);
    const Rational copies(static_cast<long>(seeds.size()));
    return base - copies * (base - single);
  }
  std::size_t used = 0;
  for (const auto& seed : seeds) {
    used += grow_tower(state, seed, depth, options.budget - used);
  }
  return intersect(state.model, state.div, state.div);
}

Rational coprime_sum_exact(std::int64_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  Rational total = 0;
  for (std::int64_t n = 1; n <= window; ++n) {
    Rational row = 0;
    for (std::int64_t m = 1; m <= window; ++m) {
      if (std::gcd(n, m) != 1) continue;
      BigInt d = BigInt(n) * m * (n + m);
      row += make_rational(BigInt(1), d * d);
    }
    total += row;
  }
  return total;
}

Rational tail_majorant(std::int64_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  BigInt w(window);
  // sum_{max(n,m) > W} <= 2 sum_{n > W} n^-4 sum_m m^-2 <= 2 zeta(2) / (3 W^3).
  return make_rational(BigInt(329), BigInt(300) * w * w * w);
}

bool LimitInterval::contains_target() const { return estimate - tail_bound <= target && target <= estimate; }

Rational limit_self_intersection(const Level& level) {
  return make_rational(BigInt(16 * level.n() * surface::cusp_count(level)), BigInt(3));
}

Rational closed_form_cc(const Level& level) {
  const std::int64_t n = level.n();
  return make_rational(BigInt(16) * (n * n + 1) * surface::cusp_count(level), BigInt(3 * n));
}

LimitInterval bdv_limit(const Level& level, std::int64_t tail_window) {
  if (tail_window < 2) throw std::invalid_argument("bdv_limit needs tail window >= 2");
  const TowerState base = start_tower(level);
  const Rational scale = multiplier_16p_over_n(level);
  LimitInterval out;
  out.estimate = base.self_int - scale * coprime_sum_exact(tail_window);
  out.tail_bound = scale * tail_majorant(tail_window);
  out.target = limit_self_intersection(level);
  return out;
}

Rational curve_pairing(const Level& level, const ComponentId& curve) {
  if (curve.kind == ComponentKind::FiberComponent) {
    throw std::invalid_argument("curve_pairing: " + surface::to_string(curve) + " lies in the boundary divisor");
  }
  if (curve.kind != ComponentKind::ZeroSection) {
    throw std::invalid_argument("curve_pairing: only the zero section is supported");
  }
  const SurfaceModel model = surface::base_model(level);
  return intersect(model, surface::jacobi_divisor(model), surface::component_divisor(model, curve));
}

Rational curve_pairing(const Level& level, const QDivisor& curve_class) {
  const SurfaceModel model = surface::base_model(level);
  for (const auto& [id, c] : curve_class.coeffs) {
    if (id.kind != ComponentKind::ZeroSection) {
      throw std::invalid_argument("curve_pairing: class has support on " + surface::to_string(id));
    }
  }
  QDivisor cls = curve_class;
  cls.model_key = model.key();
  return intersect(model, surface::jacobi_divisor(model), cls);
}

std::vector<ConvergenceRow> convergence_table(const Level& level, std::int64_t max_depth) {
  const auto nodes = stern_brocot_nodes(max_depth);
  const Rational cc = closed_form_cc(level);
  const Rational scale = multiplier_16p_over_n(level);
  const Rational limit = limit_self_intersection(level);
  std::vector<ConvergenceRow> rows;
  Rational s = 0;
  std::int64_t count = 0;
  std::size_t i = 0;
  for (std::int64_t d = 0; d <= max_depth; ++d) {
    for (; i < nodes.size() && nodes[i].depth == d; ++i) {
      s += nodes[i].contribution();
      ++count;
    }
    Rational self_int = cc - scale * s;
    rows.push_back({d, count, s, self_int, self_int - limit});
  }
  return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "depth,nodes,S(depth),self_int,gap_to_limit\n";
  for (const auto& r : rows) {
    out << r.depth << ',' << r.nodes << ',' << to_string(r.node_sum) << ',' << to_string(r.self_int) << ','
        << to_string(r.gap_to_limit) << '\n';
  }
  return out.str();
}

} // namespace bdivisor::lattice
