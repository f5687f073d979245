#include "bdivisor/surface.hpp"

#include <stdexcept>

namespace bdivisor::surface {

namespace {

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

std::uint64_t fnv1a(std::uint64_t seed, const std::string& text) {
  std::uint64_t h = seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;

std::int64_t as_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("level invariant overflows int64");
  return z.get_si();
}

} // namespace

Level::Level(std::int64_t n) : n_(n) {
  if (n < 3) {
    throw std::invalid_argument("level N must be >= 3 (Gamma(N) acts freely only for N >= 3), got " +
                                std::to_string(n));
  }
}

std::int64_t index_gamma(const Level& level) {
  const std::int64_t n = level.n();
  Rational idx = Rational(BigInt(n) * n * n);
  for (std::int64_t p : distinct_prime_factors(n)) {
    idx *= make_rational(BigInt(p * p - 1), BigInt(p * p));
  }
  return as_int64(require_integer(idx, "index [SL2(Z):Gamma(N)]"));
}

std::int64_t cusp_count(const Level& level) {
  Rational p = make_rational(BigInt(index_gamma(level)), BigInt(2 * level.n()));
  return as_int64(require_integer(p, "cusp count"));
}

std::int64_t genus(const Level& level) {
  Rational g = 1 + make_rational(BigInt(level.n() - 6), BigInt(12)) * cusp_count(level);
  return as_int64(require_integer(g, "genus"));
}

std::int64_t arithmetic_genus(const Level& level) {
  Rational pa = make_rational(BigInt(level.n() * cusp_count(level)), BigInt(12)) - 1;
  return as_int64(require_integer(pa, "arithmetic genus"));
}

std::string to_string(const ComponentId& id) {
  switch (id.kind) {
  case ComponentKind::ZeroSection:
    return "H";
  case ComponentKind::FiberComponent:
    return "Theta/" + std::to_string(id.a) + "/" + std::to_string(id.b);
  case ComponentKind::Exceptional:
    return "E/" + std::to_string(id.a);
  case ComponentKind::ToricLine:
    return "L/" + std::to_string(id.a);
  }
  return "?";
}

ComponentId parse_component(const std::string& tag) {
  auto fields = [&](std::size_t from) {
    std::vector<std::int64_t> out;
    std::size_t pos = from;
    while (pos <= tag.size()) {
      std::size_t next = tag.find('/', pos);
      if (next == std::string::npos) next = tag.size();
      out.push_back(std::stoll(tag.substr(pos, next - pos)));
      pos = next + 1;
    }
    return out;
  };
  try {
    if (tag == "H") return ComponentId::zero_section();
    if (tag.rfind("Theta/", 0) == 0) {
      auto f = fields(6);
      if (f.size() == 2) return ComponentId::fiber(f[0], f[1]);
    } else if (tag.rfind("E/", 0) == 0) {
      auto f = fields(2);
      if (f.size() == 1) return ComponentId::exceptional(f[0]);
    } else if (tag.rfind("L/", 0) == 0) {
      auto f = fields(2);
      if (f.size() == 1) return ComponentId::toric_line(f[0]);
    }
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument("bad component tag '" + tag + "'");
}

Rational QDivisor::coefficient(const ComponentId& id) const {
  auto it = coeffs.find(id);
  return it == coeffs.end() ? Rational(0) : it->second;
}

QDivisor& QDivisor::operator+=(const QDivisor& other) {
  if (other.model_key != model_key) throw std::invalid_argument("adding divisors on different models");
  for (const auto& [id, c] : other.coeffs) {
    Rational& slot = coeffs[id];
    slot += c;
    if (slot == 0) coeffs.erase(id);
  }
  return *this;
}

QDivisor& QDivisor::operator*=(const Rational& factor) {
  if (factor == 0) {
    coeffs.clear();
    return *this;
  }
  for (auto& [id, c] : coeffs) c *= factor;
  return *this;
}

void IntersectionForm::set(const ComponentId& a, const ComponentId& b, const Rational& value) {
  if (value == 0) {
    if (auto it = rows_.find(a); it != rows_.end()) it->second.erase(b);
    if (auto it = rows_.find(b); it != rows_.end()) it->second.erase(a);
    return;
  }
  rows_[a][b] = value;
  rows_[b][a] = value;
}

Rational IntersectionForm::get(const ComponentId& a, const ComponentId& b) const {
  auto it = rows_.find(a);
  if (it == rows_.end()) return 0;
  auto jt = it->second.find(b);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

const std::map<ComponentId, Rational>& IntersectionForm::row(const ComponentId& a) const {
  static const std::map<ComponentId, Rational> empty;
  auto it = rows_.find(a);
  return it == rows_.end() ? empty : it->second;
}

Rational IntersectionForm::pair(const Cycle& x, const Cycle& y) const {
  Rational total = 0;
  const Cycle& small = x.size() <= y.size() ? x : y;
  const Cycle& large = x.size() <= y.size() ? y : x;
  for (const auto& [a, ca] : small) {
    for (const auto& [b, q] : row(a)) {
      auto it = large.find(b);
      if (it != large.end()) total += ca * q * it->second;
    }
  }
  return total;
}

std::vector<std::pair<std::pair<ComponentId, ComponentId>, Rational>> IntersectionForm::entries() const {
  std::vector<std::pair<std::pair<ComponentId, ComponentId>, Rational>> out;
  for (const auto& [a, r] : rows_) {
    for (const auto& [b, q] : r) {
      if (!(b < a)) out.push_back({{a, b}, q});
    }
  }
  return out;
}

bool IntersectionForm::is_symmetric() const {
  for (const auto& [a, r] : rows_) {
    for (const auto& [b, q] : r) {
      if (get(b, a) != q) return false;
    }
  }
  return true;
}

bool SurfaceModel::has_component(const ComponentId& id) const { return classes_.contains(id); }

const Cycle& SurfaceModel::curve_class(const ComponentId& id) const {
  auto it = classes_.find(id);
  if (it == classes_.end()) throw std::invalid_argument("no component " + to_string(id) + " on model");
  return it->second;
}

Rational SurfaceModel::curves_meet(const ComponentId& a, const ComponentId& b) const {
  return form_.pair(curve_class(a), curve_class(b));
}

std::int64_t SurfaceModel::add_exceptional(const SingularPoint& point) {
  const Cycle first = curve_class(point.first);
  const Cycle second = curve_class(point.second);
  std::int64_t serial = static_cast<std::int64_t>(history_.size()) + 1;
  ComponentId e = ComponentId::exceptional(serial);
  if (classes_.contains(e)) throw std::logic_error("exceptional serial reused");

  components_.push_back(e);
  form_.set(e, e, -1);
  classes_[e] = Cycle{{e, Rational(1)}};
  classes_[point.first][e] -= 1;
  classes_[point.second][e] -= 1;

  history_.push_back({point, serial});
  key_ = fnv1a(key_, to_string(point.first) + "," + to_string(point.second) + ":" + std::to_string(point.n) +
                         "," + std::to_string(point.m) + "#" + std::to_string(serial));
  return serial;
}

SurfaceModel base_model(const Level& level) {
  const std::int64_t n = level.n();
  const std::int64_t cusps = cusp_count(level);
  SurfaceModel model;
  model.level_ = level;
  model.key_ = fnv1a(kFnvOffset, "E(" + std::to_string(n) + ")");

  const ComponentId h = ComponentId::zero_section();
  model.components_.push_back(h);
  model.form_.set(h, h, -make_rational(BigInt(n * cusps), BigInt(12)));

  const Rational multiplicity = make_rational(4, n);
  for (std::int64_t j = 1; j <= cusps; ++j) {
    for (std::int64_t nu = 0; nu < n; ++nu) {
      const ComponentId theta = ComponentId::fiber(j, nu);
      model.components_.push_back(theta);
      model.form_.set(theta, theta, -2);
      // One entry per unordered neighbouring pair; for N = 3 the two cyclic
      // neighbours of nu are the other two components.
      model.form_.set(theta, ComponentId::fiber(j, (nu + 1) % n), 1);
      if (nu == 0) model.form_.set(h, theta, 1);
      model.singular_points_.push_back({theta, ComponentId::fiber(j, (nu + 1) % n), 1, 1, multiplicity});
    }
  }
  for (const auto& id : model.components_) model.classes_[id] = Cycle{{id, Rational(1)}};
  return model;
}

SurfaceModel toric_seed_model() {
  SurfaceModel model;
  model.key_ = fnv1a(kFnvOffset, "P2");
  for (std::int64_t i = 0; i < 3; ++i) model.components_.push_back(ComponentId::toric_line(i));
  for (std::int64_t i = 0; i < 3; ++i) {
    for (std::int64_t k = i; k < 3; ++k) {
      model.form_.set(ComponentId::toric_line(i), ComponentId::toric_line(k), 1);
    }
  }
  for (const auto& id : model.components_) model.classes_[id] = Cycle{{id, Rational(1)}};
  model.singular_points_.push_back({ComponentId::toric_line(1), ComponentId::toric_line(2), 1, 1, Rational(1)});
  return model;
}

Rational jacobi_coefficient(const Level& level, std::int64_t nu) {
  const std::int64_t n = level.n();
  return Rational(n - 4 * nu) + make_rational(BigInt(4 * nu * nu), BigInt(n));
}

QDivisor jacobi_divisor(const SurfaceModel& model) {
  if (!model.is_base()) {
    throw std::invalid_argument("jacobi_divisor needs a base model; blown-up models get theirs from the tower");
  }
  const Level& level = *model.level();
  QDivisor c{model.key(), {}};
  c.coeffs[ComponentId::zero_section()] = 8;
  for (const auto& id : model.components()) {
    if (id.kind != ComponentKind::FiberComponent) continue;
    Rational coeff = jacobi_coefficient(level, id.b);
    if (coeff != 0) c.coeffs[id] = coeff;
  }
  return c;
}

QDivisor component_divisor(const SurfaceModel& model, const ComponentId& id) {
  return QDivisor{model.key(), model.curve_class(id)};
}

nlohmann::json to_json(const SurfaceModel& model) {
  nlohmann::json out;
  if (model.level()) out["N"] = model.level()->n();
  auto& comps = out["components"] = nlohmann::json::array();
  for (const auto& id : model.components()) comps.push_back(to_string(id));
  auto& form = out["intersection"] = nlohmann::json::array();
  for (const auto& [ab, q] : model.form().entries()) {
    form.push_back({to_string(ab.first), to_string(ab.second), bdivisor::to_string(q)});
  }
  auto& pts = out["singular_points"] = nlohmann::json::array();
  for (const auto& p : model.singular_points()) {
    pts.push_back({{"components", {to_string(p.first), to_string(p.second)}},
                   {"type", {p.n, p.m}},
                   {"multiplicity", bdivisor::to_string(p.multiplicity)}});
  }
  auto& hist = out["blowups"] = nlohmann::json::array();
  for (const auto& rec : model.blowup_history()) {
    hist.push_back({{"serial", rec.serial},
                    {"at", {to_string(rec.point.first), to_string(rec.point.second)}},
                    {"type", {rec.point.n, rec.point.m}}});
  }
  return out;
}

} // namespace bdivisor::surface
