#pragma once

// Combinatorial model of the universal elliptic surface E(N) over the
// modular curve X(N): level invariants, boundary N-gons, the zero section
// and an exact rational intersection form.

#include "bdivisor/rational.hpp"

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bdivisor::surface {

/// Level N >= 3 of the principal congruence subgroup.
class Level {
public:
  explicit Level(std::int64_t n);
  std::int64_t n() const { return n_; }
  friend bool operator==(const Level&, const Level&) = default;

private:
  std::int64_t n_;
};

/// [SL2(Z) : Gamma(N)] = N^3 prod_{p | N} (1 - 1/p^2).
std::int64_t index_gamma(const Level& level);
/// Number of cusps p_N = index / (2N).
std::int64_t cusp_count(const Level& level);
/// Genus of X(N): 1 + (N - 6) p_N / 12.
std::int64_t genus(const Level& level);
/// Arithmetic genus of E(N): N p_N / 12 - 1.
std::int64_t arithmetic_genus(const Level& level);

enum class ComponentKind : std::uint8_t { ZeroSection, FiberComponent, Exceptional, ToricLine };

/// Structural component tag. FiberComponent uses (a, b) = (cusp j, position nu);
/// Exceptional uses a = serial; ToricLine uses a = coordinate index.
struct ComponentId {
  ComponentKind kind = ComponentKind::ZeroSection;
  std::int64_t a = 0;
  std::int64_t b = 0;

  static ComponentId zero_section() { return {}; }
  static ComponentId fiber(std::int64_t cusp, std::int64_t position) {
    return {ComponentKind::FiberComponent, cusp, position};
  }
  static ComponentId exceptional(std::int64_t serial) { return {ComponentKind::Exceptional, serial, 0}; }
  static ComponentId toric_line(std::int64_t index) { return {ComponentKind::ToricLine, index, 0}; }

  auto operator<=>(const ComponentId&) const = default;
};

/// "H", "Theta/j/nu", "E/k", "L/i".
std::string to_string(const ComponentId& id);
ComponentId parse_component(const std::string& tag);

/// Sparse formal sum of components with rational coefficients.
using Cycle = std::map<ComponentId, Rational>;

/// Q-divisor on a specific model, identified by the model's key. Coefficients
/// are on the model's orthogonal basis (pullbacks plus exceptionals).
struct QDivisor {
  std::uint64_t model_key = 0;
  Cycle coeffs;

  Rational coefficient(const ComponentId& id) const;
  QDivisor& operator+=(const QDivisor& other);
  QDivisor& operator*=(const Rational& factor);
  friend QDivisor operator+(QDivisor a, const QDivisor& b) { return a += b; }
  friend QDivisor operator*(const Rational& f, QDivisor d) { return d *= f; }
};

/// Sparse symmetric bilinear form on component classes.
class IntersectionForm {
public:
  void set(const ComponentId& a, const ComponentId& b, const Rational& value);
  Rational get(const ComponentId& a, const ComponentId& b) const;
  /// Nonzero entries q(a, .) keyed by the second argument.
  const std::map<ComponentId, Rational>& row(const ComponentId& a) const;
  /// Bilinear extension to cycles.
  Rational pair(const Cycle& x, const Cycle& y) const;
  /// Each unordered pair once, a <= b.
  std::vector<std::pair<std::pair<ComponentId, ComponentId>, Rational>> entries() const;
  bool is_symmetric() const;

private:
  std::map<ComponentId, std::map<ComponentId, Rational>> rows_;
};

/// Point of the boundary where the metric is worse than log-log. The type
/// (n, m) is ordered like the pair (first, second): weight n belongs to the
/// local coordinate cutting out `first`.
struct SingularPoint {
  ComponentId first;
  ComponentId second;
  std::int64_t n = 1;
  std::int64_t m = 1;
  Rational multiplicity;

  bool operator==(const SingularPoint& o) const {
    return first == o.first && second == o.second && n == o.n && m == o.m && multiplicity == o.multiplicity;
  }
};

struct BlowupRecord {
  SingularPoint point;
  std::int64_t serial = 0;
};

/// A birational model of E(N) (or of the toric seed). The intersection form
/// lives on a basis of classes: base components together with one class per
/// exceptional divisor, orthogonal to everything pulled back. Every actual
/// curve of the model carries its class in that basis, so strict transforms
/// stay explicit.
class SurfaceModel {
public:
  const std::optional<Level>& level() const { return level_; }
  const std::vector<ComponentId>& components() const { return components_; }
  const IntersectionForm& form() const { return form_; }
  const std::vector<SingularPoint>& singular_points() const { return singular_points_; }
  const std::vector<BlowupRecord>& blowup_history() const { return history_; }
  /// Identity of this model within its tower; changes with every blow-up.
  std::uint64_t key() const { return key_; }

  bool is_base() const { return level_.has_value() && history_.empty(); }
  bool has_component(const ComponentId& id) const;
  /// Class of the actual curve `id` in the orthogonal basis.
  const Cycle& curve_class(const ComponentId& id) const;
  /// Intersection number of two actual curves.
  Rational curves_meet(const ComponentId& a, const ComponentId& b) const;

  /// Adds the exceptional curve over `point` and updates strict transforms.
  /// Returns the new serial. Singular-point bookkeeping is left to the caller.
  std::int64_t add_exceptional(const SingularPoint& point);
  void set_singular_points(std::vector<SingularPoint> points) { singular_points_ = std::move(points); }

  friend SurfaceModel base_model(const Level& level);
  friend SurfaceModel toric_seed_model();

private:
  std::optional<Level> level_;
  std::vector<ComponentId> components_;
  IntersectionForm form_;
  std::map<ComponentId, Cycle> classes_;
  std::vector<SingularPoint> singular_points_;
  std::vector<BlowupRecord> history_;
  std::uint64_t key_ = 0;
};

/// H plus the N-gons over each cusp, with the N p_N crossings of type (1,1)
/// and multiplicity 4/N.
SurfaceModel base_model(const Level& level);

/// P^2 with its three coordinate lines; one singular point of type (1,1),
/// multiplicity 1, at L1 cap L2.
SurfaceModel toric_seed_model();

/// Coefficient N - 4 nu + 4 nu^2 / N of Theta_{j,nu} in the divisor of theta^8.
Rational jacobi_coefficient(const Level& level, std::int64_t nu);

/// C = 8H + sum_{j,nu} (N - 4 nu + 4 nu^2/N) Theta_{j,nu}. Base models only.
QDivisor jacobi_divisor(const SurfaceModel& model);

/// The class of a single component as a divisor on `model`.
QDivisor component_divisor(const SurfaceModel& model, const ComponentId& id);

nlohmann::json to_json(const SurfaceModel& model);

} // namespace bdivisor::surface
