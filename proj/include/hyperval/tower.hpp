#pragma once

#include "hyperval/hyperfield.hpp"
#include "hyperval/quotient.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace hv {

struct IsometricMap {
  HandlePtr source;
  HandlePtr target;
  std::function<HyperElem(const HyperElem&)> f;
  // Optional right inverse, used for surjectivity checks.
  std::function<HyperElem(const HyperElem&)> section;
  std::string name;
};

// IH1, IH2', IH3, IH2 in both directions, and agreement of IH2 with IH2'.
Report check_isometric(const IsometricMap& theta, const Scope& scope);
// The map H_N' -> H' induced by theta, with N' the target norm, verified on samples.
Report induced_iso(const IsometricMap& theta, const Scope& scope);

// N-indexed isometric system with norms rho_i and maps theta_{j,i}.
struct Tower {
  std::string name;
  std::size_t rank = 0;
  std::function<InitialSegment(std::size_t)> segment;
  // Must return the same handle for the same index.
  std::function<HandlePtr(std::size_t)> stage;
  std::function<HyperElem(std::size_t, std::size_t, const HyperElem&)> map;
  // i -> n(i) with rho_{n(i)} containing 2 rho_i; empty when none is known.
  std::function<std::size_t(std::size_t)> doubling;
  std::optional<GroundSpec> ground;
  std::optional<InitialSegment> union_norm;
  std::size_t budget = 8;
  nlohmann::ordered_json descriptor;
};

// Stages H_{rho_i}(K) of the iterated Laurent field K with window truncations as maps.
Tower canonical_tower(const GroundSpec& ground, std::function<InitialSegment(std::size_t)> rho, std::string name,
                      std::size_t budget = 8);
// "upto-0n", "upto-n0", "upto-1m", or "rank1-f<p>".
Tower builtin_tower(std::string_view name, std::size_t budget = 8);
// { "ground": "q2", "segments": { "base": [0,0], "step": [0,1] }, "budget": 8 }
Tower tower_from_json(const nlohmann::json& j);

IsometricMap tower_map(const Tower& T, std::size_t j, std::size_t i);

// Compatible sequence (a_i), resolved lazily and memoized per stage.
struct LimitNode {
  std::function<HyperElem(std::size_t)> resolve;
  mutable std::mutex mu;
  mutable std::map<std::size_t, HyperElem> memo;
};

class LimitHyperfield : public Hyperfield {
 public:
  LimitHyperfield(Tower T, std::function<std::size_t(std::size_t)> doubling);

  const Tower& tower() const { return T_; }
  std::size_t budget() const { return T_.budget; }
  // Stage at which membership and cancellation are decided.
  std::size_t decision_stage() const { return zstage_; }
  std::size_t doubling(std::size_t i) const { return n_(i); }
  HandlePtr stage(std::size_t i) const { return T_.stage(i); }
  // a_i, checked against the nearest resolved stages.
  HyperElem at(const HyperElem& a, std::size_t i) const;
  HyperElem make(std::function<HyperElem(std::size_t)> resolve) const;
  HyperElem embed(const RatFunc& a) const;
  HyperElem embed(std::string_view text) const;
  // The element of the limit whose stage-i component is t, for canonical towers.
  HyperElem lift(std::size_t i, const HyperElem& t) const;
  bool eq_up_to(const HyperElem& a, const HyperElem& b, std::size_t i) const;
  bool field_mode() const;

  std::string name() const override { return "lim " + T_.name; }
  HyperElem zero() const override;
  HyperElem one() const override;
  HyperElem mul(const HyperElem& a, const HyperElem& b) const override;
  HyperElem inv(const HyperElem& a) const override;
  HyperElem neg(const HyperElem& a) const override;
  bool eq(const HyperElem& a, const HyperElem& b) const override { return eq_up_to(a, b, budget()); }
  bool is_zero(const HyperElem& a) const override;
  SumSet add(const HyperElem& a, const HyperElem& b) const override;
  bool member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const override;

  bool valued() const override { return true; }
  GroupElem val(const HyperElem& a) const override;
  InitialSegment norm() const override { return *T_.union_norm; }
  std::size_t value_rank() const override { return T_.rank; }
  GroupElem dist(const HyperElem& a, const HyperElem& b) const override;
  bool ball_is_point(const HyperElem& w, const Floor& floor) const override;
  HyperElem monomial(const GroupElem& g) const override;

  HyperElem sample(Rng& rng) const override;
  HyperElem probe(const HyperElem& center, const Floor& floor, Rng& rng) const override;
  std::string show(const HyperElem& a) const override;

 private:
  const LimitNode& node(const HyperElem& a) const;
  HyperElem pointwise(std::function<HyperElem(std::size_t)> f) const { return make(std::move(f)); }

  Tower T_;
  std::function<std::size_t(std::size_t)> n_;
  std::size_t zstage_;
  bool laurent_only_;
};

using LimitPtr = std::shared_ptr<const LimitHyperfield>;

// Refuses towers without a valid doubling function (DoublingUnavailable).
LimitPtr limit_hyperfield(const Tower& T);

SumSet triple_sum_resolve(const LimitHyperfield& L, const HyperElem& a, const HyperElem& b, const HyperElem& c);
GroupElem limit_val(const LimitHyperfield& L, const HyperElem& a);
// Value of a - b at the first stage where they differ; Undetermined up to the budget.
GroupElem limit_d(const LimitHyperfield& L, const HyperElem& a, const HyperElem& b);

Report limit_factor_iso(const LimitPtr& L, std::size_t i, const Scope& scope);
// Every member of a_j + b_j + c_j projects to the same element at each lower stage.
Report check_triple_uniqueness(const LimitHyperfield& L, const Scope& scope);
// (a+b)+c against a+(b+c), tallied by cancellation case.
Report check_limit_associativity(const LimitHyperfield& L, const Scope& scope);

struct EmptinessReport {
  enum class Verdict { Empty, Nonempty, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::size_t m_max = 0;
  std::string witness;
  nlohmann::ordered_json to_json() const;
};

const char* verdict_name(EmptinessReport::Verdict v);

// Searches for compatible choices c_m in a_m + b_m over stages 0..m_max.
EmptinessReport detect_empty_sum(const Tower& T, const std::function<HyperElem(std::size_t)>& a,
                                 const std::function<HyperElem(std::size_t)>& b, std::size_t m_max,
                                 std::uint64_t seed = 1);
// The stagewise pair sum_{i<=m} x^i and y sum_{i<=m} x^i of a rank-2 canonical tower.
EmptinessReport detect_empty_sum_geometric_pair(const Tower& T, std::size_t m_max);

}  // namespace hv
