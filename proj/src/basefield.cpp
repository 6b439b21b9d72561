#include "hyperval/basefield.hpp"

#include "hyperval/errors.hpp"
#include "hyperval/rng.hpp"

#include <utility>

namespace hv {

BaseField BaseField::prime(std::uint32_t p) {
  if (p < 2) throw Error(ErrorCode::Precondition, "characteristic must be prime");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorCode::Precondition, std::to_string(p) + " is not prime");
  return {p};
}

mpq_class BaseField::norm(const mpq_class& a) const {
  if (p == 0) return a;
  if (a.get_num().fits_slong_p() && a.get_den().fits_slong_p()) {
    const long q = static_cast<long>(p);
    long num = a.get_num().get_si() % q;
    if (num < 0) num += q;
    long den = a.get_den().get_si() % q;
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator divisible by " + std::to_string(p));
    if (den != 1) {
      long r0 = q, r1 = den, s0 = 0, s1 = 1;
      while (r1 != 0) {
        long k = r0 / r1;
        r0 = std::exchange(r1, r0 - k * r1);
        s0 = std::exchange(s1, s0 - k * s1);
      }
      if (s0 < 0) s0 += q;
      num = static_cast<long>((static_cast<__int128>(num) * s0) % q);
    }
    return mpq_class(num);
  }
  mpz_class m(p);
  mpz_class den = a.get_den();
  mpz_class num = a.get_num();
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
      throw Error(ErrorCode::DivisionByZero, "denominator divisible by " + std::to_string(p));
    num *= inv;
  }
  mpz_class r;
  mpz_mod(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
  return mpq_class(r);
}

mpq_class BaseField::add(const mpq_class& a, const mpq_class& b) const { return norm(a + b); }
mpq_class BaseField::sub(const mpq_class& a, const mpq_class& b) const { return norm(a - b); }
mpq_class BaseField::mul(const mpq_class& a, const mpq_class& b) const { return norm(a * b); }
mpq_class BaseField::neg(const mpq_class& a) const { return norm(-a); }

mpq_class BaseField::inv(const mpq_class& a) const {
  if (is_zero(a)) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + name());
  if (p == 0) return 1 / a;
  return norm(mpq_class(1) / a);
}

mpq_class BaseField::div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

mpq_class BaseField::random_nonzero(Rng& rng) const {
  if (p != 0) return mpq_class(rng.uniform(1, p - 1));
  std::int64_t num = rng.uniform(1, 3);
  if (rng.chance(1, 2)) num = -num;
  mpq_class q(mpz_class(num), mpz_class(rng.uniform(1, 3)));
  q.canonicalize();
  return q;
}

std::string BaseField::str(const mpq_class& a) const { return norm(a).get_str(); }

std::string BaseField::name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

}  // namespace hv
