#include "bdivisor/rational.hpp"

#include <array>
#include <charconv>

namespace bdivisor {

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0 || r.get_den() == 0) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_den() == 1;
}

BigInt require_integer(const Rational& r, std::string_view what) {
  if (!is_integer(r)) {
    throw std::logic_error(std::string(what) + " is not integral: " + to_string(r));
  }
  Rational c = r;
  c.canonicalize();
  return c.get_num();
}

BigInt floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational fractional_part(const Rational& x) {
  Rational r = x - Rational(floor(x));
  r.canonicalize();
  return r;
}

std::string to_decimal(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

} // namespace bdivisor
