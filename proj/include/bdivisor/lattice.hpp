#pragma once

// Blow-up towers over the singular points of the theta^8 divisor, the
// Stern-Brocot tree of point types, and the limit self-intersection of the
// resulting b-divisor. The limit is computed twice: by the scalar drop
// recursion and by materialising every blow-up in the intersection lattice.

#include "bdivisor/rational.hpp"
#include "bdivisor/surface.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

namespace bdivisor::lattice {

using surface::ComponentId;
using surface::Level;
using surface::QDivisor;
using surface::SingularPoint;
using surface::SurfaceModel;

/// Exact intersection number on `model`. Both divisors must live on it.
Rational intersect(const SurfaceModel& model, const QDivisor& d1, const QDivisor& d2);

struct SternBrocotNode {
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::int64_t depth = 0;

  /// (n+m, m) first, then (n, n+m).
  std::pair<SternBrocotNode, SternBrocotNode> children() const;
  /// 1 / (n^2 m^2 (n+m)^2).
  Rational contribution() const;
};

/// All nodes of depth <= max_depth, breadth first, deterministic child order.
std::vector<SternBrocotNode> stern_brocot_nodes(std::int64_t max_depth);

/// S(depth): sum of contribution() over nodes of depth <= `depth`.
Rational node_sum(std::int64_t depth);

/// Self-intersection drop mu^2 / (n^2 m^2 (n+m)^2) of one blow-up.
Rational blowup_drop(const SingularPoint& point);

struct TowerState {
  SurfaceModel model;
  QDivisor div;
  Rational self_int;
  std::deque<SingularPoint> frontier;
};

/// Base model of E(N) with C, C.C and all N p_N crossings in the frontier.
TowerState start_tower(const Level& level);

/// P^2 with div(x0) = L0, self-intersection 1 and one (1,1) point of multiplicity 1.
TowerState toric_seed_tower();

/// Blow-up at a frontier point: new exceptional E with E.E = -1, divisor
/// pi^*D - mu/(nm(n+m)) E, point replaced by its two children. The running
/// self-intersection is re-derived from the lattice and checked against the
/// expected drop; a mismatch throws std::logic_error.
TowerState blow_up(const TowerState& state, const SingularPoint& point);
void blow_up_in_place(TowerState& state, const SingularPoint& point);

/// Blow-up at a point where the metric is already log-log. Divisor and
/// self-intersection are unchanged; only the model grows. Not used in towers.
TowerState mild_blow_up(const TowerState& state, const ComponentId& a, const ComponentId& b);

/// C.C - (16 p_N / N) S(depth), from the scalar drop recursion alone.
Rational recursion_self_intersection(const Level& level, std::int64_t depth);

enum class SeedMode { Single, Full };

struct LatticeOptions {
  SeedMode mode = SeedMode::Single;
  /// Maximum number of blow-ups materialised before giving up.
  std::size_t budget = 1u << 16;
};

/// Same value as recursion_self_intersection, but from intersect(div, div)
/// after materialising the tower. In single-seed mode only the first base
/// point is blown up and the other N p_N - 1 copies enter through a
/// multiplier. Throws std::length_error when the budget is exceeded.
Rational lattice_self_intersection(const Level& level, std::int64_t depth, const LatticeOptions& options = {});

/// Runs the tower from `state` on every descendant of `seed` up to `depth`.
/// Returns the number of blow-ups performed.
std::size_t grow_tower(TowerState& state, const SingularPoint& seed, std::int64_t depth, std::size_t budget);

/// Exact sum of 1/(n^2 m^2 (n+m)^2) over coprime 1 <= n, m <= window.
Rational coprime_sum_exact(std::int64_t window);

/// Rational majorant of sum over max(n,m) > window of 1/(n^2 m^2 (n+m)^2):
/// 2 zeta(2) / (3 window^3) with zeta(2) <= 329/200.
Rational tail_majorant(std::int64_t window);

struct LimitInterval {
  Rational estimate;
  Rational tail_bound;
  Rational target;
  /// estimate - tail_bound <= target <= estimate.
  bool contains_target() const;
};

/// Truncated b-divisor self-intersection with its proven tail bound.
LimitInterval bdv_limit(const Level& level, std::int64_t tail_window);

/// 16 N p_N / 3.
Rational limit_self_intersection(const Level& level);

/// C.C = 16 (N^2 + 1) p_N / (3 N), closed form.
Rational closed_form_cc(const Level& level);

/// Pairing of the theta^8 b-divisor with a curve class supported on the zero
/// section. H misses the double points of the boundary, so the base model
/// already computes it. Fiber and exceptional curves are rejected.
Rational curve_pairing(const Level& level, const ComponentId& curve);
Rational curve_pairing(const Level& level, const QDivisor& curve_class);

struct ConvergenceRow {
  std::int64_t depth = 0;
  std::int64_t nodes = 0;
  Rational node_sum;
  Rational self_int;
  Rational gap_to_limit;
};

std::vector<ConvergenceRow> convergence_table(const Level& level, std::int64_t max_depth);

/// depth,nodes,S(depth),self_int,gap_to_limit with rationals as "p/q".
std::string to_csv(const std::vector<ConvergenceRow>& rows);

} // namespace bdivisor::lattice
