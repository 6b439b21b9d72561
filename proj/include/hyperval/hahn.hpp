#pragma once

#include "hyperval/report.hpp"
#include "hyperval/rvsort.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hv {

struct HahnTerm {
  GroupElem g;
  HyperElem a;  // nonzero, nu(a) == g
};

// Finite-support series sum a_g t^g over an RV-sort, known exactly below prec (or everywhere).
class HahnSeries {
 public:
  HahnSeries() = default;
  HahnSeries(SortPtr R, std::vector<HahnTerm> terms, std::optional<GroupElem> prec = std::nullopt);

  static HahnSeries zero(SortPtr R);
  static HahnSeries one(SortPtr R);
  static HahnSeries monomial(SortPtr R, const HyperElem& a);

  const SortPtr& sort() const { return R_; }
  const std::vector<HahnTerm>& terms() const { return terms_; }
  const std::optional<GroupElem>& prec() const { return prec_; }
  bool is_exact() const { return !prec_; }
  bool is_exact_zero() const { return !prec_ && terms_.empty(); }
  std::size_t rank() const { return R_->nu_rank(); }
  // Coefficient at g, or the zero of the sort.
  HyperElem coeff(const GroupElem& g) const;
  // Terms with exponent < cut, with precision min(prec, cut).
  HahnSeries truncated(const GroupElem& cut) const;
  HahnSeries with_prec(std::optional<GroupElem> p) const;

 private:
  SortPtr R_;
  std::vector<HahnTerm> terms_;
  std::optional<GroupElem> prec_;
};

HahnSeries hs_add(const HahnSeries& a, const HahnSeries& b);
HahnSeries hs_neg(const HahnSeries& a);
HahnSeries hs_sub(const HahnSeries& a, const HahnSeries& b);
HahnSeries hs_mul(const HahnSeries& a, const HahnSeries& b);
GroupElem hs_val(const HahnSeries& a);
// Equal as far as both are known.
bool hs_eq(const HahnSeries& a, const HahnSeries& b);

// +1 or -1: the sign of the correction term, fixed once on the probe a = 1 - t over (Q, Z).
int inverse_update_sign();
// b with v(a b - 1) > target; trace receives v(1 - a b) before each refinement.
HahnSeries hs_inverse(const HahnSeries& a, const GroupElem& target, std::vector<GroupElem>* trace = nullptr);
HyperElem rv_project(const HahnSeries& a);

// Random series of 1..4 terms with exponents in [-2, 2]^rank.
HahnSeries random_hahn(const SortPtr& R, Rng& rng);
Report check_rv_round_trip(const SortPtr& R, const Scope& scope);
// v(ab) = v(a) + v(b), ultrametric inequality, distributivity and precision soundness.
Report check_hahn_field(const SortPtr& R, const Scope& scope);

// f = sum_k f[k] X^k.
using HahnPoly = std::vector<HahnSeries>;
HahnSeries poly_eval(const HahnPoly& f, const HahnSeries& x);
HahnPoly poly_derivative(const HahnPoly& f);
// Newton iteration from r0; the result r satisfies v(f(r)) > target.
HahnSeries hensel_lift(const HahnPoly& f, const HahnSeries& r0, const GroupElem& target);

// "(f; g)*t^g + ... + O(t^p)"; coefficients need a split sort.
std::string show_hahn(const HahnSeries& a);
HahnSeries parse_hahn(const SortPtr& R, std::string_view text);
// Laurent polynomial in t, e.g. "1 - t + 3*t^-2", over a rank-1 split sort.
HahnSeries hahn_from_poly(const SortPtr& R, std::string_view text);
nlohmann::ordered_json hahn_to_json(const HahnSeries& a);
HahnSeries hahn_from_json(const SortPtr& R, const nlohmann::json& j);

}  // namespace hv
