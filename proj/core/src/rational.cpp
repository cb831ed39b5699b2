#include "liegrade/rational.hpp"

#include <stdexcept>

#include "liegrade/error.hpp"

namespace liegrade {

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::uint64_t reduce_mod(const Rational& q, std::uint64_t p) {
  const mpz_class modulus(static_cast<unsigned long>(p));
  mpz_class num = q.get_num() % modulus;
  if (num < 0) num += modulus;
  mpz_class den = q.get_den() % modulus;
  if (den == 0) throw PrimeCollision("prime divides a denominator");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  mpz_class r = (num * inv) % modulus;
  return static_cast<std::uint64_t>(r.get_ui());
}

}  // namespace liegrade
