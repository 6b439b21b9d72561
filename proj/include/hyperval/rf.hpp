#pragma once

#include "hyperval/series.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hv {

class Rng;

struct RFExpr {
  enum class Op { Lit, Var, Add, Sub, Mul, Div, Pow, Neg };
  Op op = Op::Lit;
  mpq_class lit;
  std::size_t var = 0;
  std::int64_t exponent = 0;
  std::shared_ptr<const RFExpr> lhs, rhs;
};
using RFExprPtr = std::shared_ptr<const RFExpr>;

// vars are ordered most significant first; e.g. {"y", "x"} for Q(x)(y).
RFExprPtr parse_rf(std::string_view text, const std::vector<std::string>& vars);
std::string show_ast(const RFExprPtr& e, const std::vector<std::string>& vars);

// Quotient of two exact Laurent polynomials.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(FieldSeries num, FieldSeries den);
  static RatFunc poly(FieldSeries p);

  const FieldSeries& num() const { return num_; }
  const FieldSeries& den() const { return den_; }
  const BaseField& field() const { return num_.field(); }
  std::size_t rank() const { return num_.rank(); }
  bool is_zero() const { return num_.is_exact_zero(); }
  bool is_laurent() const { return den_.terms().size() == 1; }
  GroupElem val() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  RatFunc pow(std::int64_t k) const;
  std::string str(const std::vector<std::string>& vars) const;

 private:
  FieldSeries num_, den_;
};

RatFunc eval_rf(const RFExprPtr& e, const BaseField& F, std::size_t n);
FieldSeries expand(const RatFunc& a, const GroupElem& cut);
FieldSeries expand(const RFExprPtr& e, const BaseField& F, std::size_t n, const GroupElem& cut);

// Canonical window of a modulo 1 + m_rho as an exact Laurent polynomial.
FieldSeries theta_window(const RatFunc& a, const InitialSegment& rho);

// Coefficients of a along the most significant variable: a = sum_k t0^(m0+k) q_k,
// with q_k in the remaining variables; returns (m0 + k, q_k) for k < count.
std::vector<std::pair<std::int64_t, RatFunc>> leading_levels(const RatFunc& a, std::size_t count);

// Random rational function with small exponents and coefficients; laurent_only keeps a monomial denominator.
RatFunc random_rf(Rng& rng, const BaseField& F, std::size_t n, bool laurent_only);

}  // namespace hv
