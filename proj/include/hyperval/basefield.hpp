#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hv {

class Rng;

// Q when p == 0, otherwise F_p with representatives 0..p-1.
struct BaseField {
  std::uint32_t p = 0;

  static BaseField rationals() { return {0}; }
  static BaseField prime(std::uint32_t p);

  mpq_class norm(const mpq_class& a) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  mpq_class inv(const mpq_class& a) const;
  bool is_zero(const mpq_class& a) const { return norm(a) == 0; }

  // Nonzero element; for Q a rational with numerator and denominator at most 3.
  mpq_class random_nonzero(Rng& rng) const;
  std::string str(const mpq_class& a) const;
  std::string name() const;
  bool operator==(const BaseField&) const = default;
};

}  // namespace hv
