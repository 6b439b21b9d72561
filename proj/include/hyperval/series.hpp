#pragma once

#include "hyperval/basefield.hpp"
#include "hyperval/ogroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hv {

struct Term {
  GroupElem e;
  mpq_class c;
};

// Sparse series sum c_e t^e over Z^n lex, known exactly below prec (nullopt means exact).
class FieldSeries {
 public:
  FieldSeries() = default;
  FieldSeries(BaseField F, std::size_t n) : F_(F), n_(n) {}

  static FieldSeries from_terms(BaseField F, std::size_t n, std::vector<Term> terms,
                                std::optional<GroupElem> prec = std::nullopt);
  static FieldSeries monomial(BaseField F, std::size_t n, const GroupElem& e, const mpq_class& c);
  static FieldSeries constant(BaseField F, std::size_t n, const mpq_class& c);

  const BaseField& field() const { return F_; }
  std::size_t rank() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<GroupElem>& prec() const { return prec_; }
  bool exact() const { return !prec_.has_value(); }
  bool is_exact_zero() const { return terms_.empty() && !prec_; }
  bool empty() const { return terms_.empty(); }

  // Minimum exponent; infinity for exact zero.
  GroupElem val() const;
  // Minimum exponent, or the precision when no term is known.
  GroupElem val_bound() const;
  const Term& lead() const;
  mpq_class coeff(const GroupElem& e) const;

  FieldSeries truncated(const GroupElem& cut) const;
  FieldSeries shifted(const GroupElem& e) const;
  FieldSeries scaled(const mpq_class& c) const;
  // Terms whose exponent lies in [lo, hi].
  FieldSeries slice(const GroupElem& lo, const GroupElem& hi) const;

  std::string str() const;
  std::string str(const std::vector<std::string>& vars) const;

  friend FieldSeries operator+(const FieldSeries& a, const FieldSeries& b);
  friend FieldSeries operator-(const FieldSeries& a, const FieldSeries& b);
  friend FieldSeries operator-(const FieldSeries& a);
  friend FieldSeries operator*(const FieldSeries& a, const FieldSeries& b);
  friend bool operator==(const FieldSeries& a, const FieldSeries& b);

 private:
  BaseField F_;
  std::size_t n_ = 0;
  std::vector<Term> terms_;
  std::optional<GroupElem> prec_;
};

std::optional<GroupElem> min_prec(const std::optional<GroupElem>& a, const std::optional<GroupElem>& b);

// Expansion of N/D (both exact) below cut, by cancelling lowest terms.
FieldSeries divide(const FieldSeries& num, const FieldSeries& den, const GroupElem& cut);

// Canonical window representative of the class of a modulo 1 + m_rho.
FieldSeries window(const FieldSeries& a, const InitialSegment& rho);

// Smallest exponent strictly above every element of g + rho (finite-window kinds only).
GroupElem window_cut(const GroupElem& g, const InitialSegment& rho);

std::string monomial_str(const GroupElem& e, const std::vector<std::string>& vars);

}  // namespace hv
