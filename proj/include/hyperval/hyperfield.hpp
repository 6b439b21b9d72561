#pragma once

#include "hyperval/ogroup.hpp"
#include "hyperval/report.hpp"
#include "hyperval/rng.hpp"
#include "hyperval/series.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hv {

// Element of a split sequence structure: 0, or f * t^g with f in F^x.
struct RVElem {
  bool zero = true;
  mpq_class f;
  GroupElem g;
};

struct LimitNode;

using Payload = std::variant<std::monostate, std::size_t, FieldSeries, RVElem, std::shared_ptr<const LimitNode>>;

struct HyperElem {
  std::uint64_t parent = 0;
  Payload p;
};

struct SumSet {
  enum class Kind { Empty, Singleton, Ball, ZeroBall, Enumerated };
  Kind kind = Kind::Empty;
  HyperElem witness;
  Floor floor;
  std::vector<HyperElem> elems;

  static SumSet empty() { return {}; }
  static SumSet singleton(HyperElem z) { return {Kind::Singleton, std::move(z), {}, {}}; }
  static SumSet ball(HyperElem z, Floor f) { return {Kind::Ball, std::move(z), std::move(f), {}}; }
  static SumSet zero_ball(HyperElem zero, Floor f) { return {Kind::ZeroBall, std::move(zero), std::move(f), {}}; }
  static SumSet enumerated(std::vector<HyperElem> es);
};

// Values attained on a sum: one value, or every value above a floor together with infinity.
struct SetVal {
  bool upset = false;
  std::vector<GroupElem> values;
  Floor floor;
};

class Hyperfield;
using HandlePtr = std::shared_ptr<const Hyperfield>;

class Hyperfield {
 public:
  Hyperfield();
  virtual ~Hyperfield() = default;
  Hyperfield(const Hyperfield&) = delete;
  Hyperfield& operator=(const Hyperfield&) = delete;

  std::uint64_t id() const { return id_; }
  virtual std::string name() const = 0;

  virtual HyperElem zero() const = 0;
  virtual HyperElem one() const = 0;
  virtual HyperElem mul(const HyperElem& a, const HyperElem& b) const = 0;
  virtual HyperElem inv(const HyperElem& a) const = 0;
  virtual HyperElem neg(const HyperElem& a) const = 0;
  virtual bool eq(const HyperElem& a, const HyperElem& b) const = 0;
  virtual bool is_zero(const HyperElem& a) const { return eq(a, zero()); }
  virtual SumSet add(const HyperElem& a, const HyperElem& b) const = 0;
  // z in x + y decided straight from the construction, independently of add().
  virtual bool member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const;

  virtual bool finite() const { return false; }
  virtual std::vector<HyperElem> carrier() const;

  virtual bool valued() const { return false; }
  virtual GroupElem val(const HyperElem& a) const;
  virtual InitialSegment norm() const;
  virtual std::size_t value_rank() const { return 0; }
  // Common value of the elements of a - b.
  virtual GroupElem dist(const HyperElem& a, const HyperElem& b) const;
  // True when {z : d(z, w) > floor} is the single element w.
  virtual bool ball_is_point(const HyperElem& w, const Floor& floor) const;
  virtual HyperElem monomial(const GroupElem& g) const;

  virtual HyperElem sample(Rng& rng) const;
  // Element at distance roughly floor from center; used to probe ball boundaries.
  virtual HyperElem probe(const HyperElem& center, const Floor& floor, Rng& rng) const;
  virtual std::string show(const HyperElem& a) const = 0;

  bool contains(const SumSet& s, const HyperElem& z) const;
  std::string show_set(const SumSet& s) const;
  void check(const HyperElem& a) const;

 private:
  std::uint64_t id_;
};

// Operations on sums shared by all handles.
SetVal set_val(const Hyperfield& H, const SumSet& s);
bool all_values_exceed(const SetVal& v, const Floor& f);
bool intersects(const Hyperfield& H, const SumSet& a, const SumSet& b);
bool sumset_equal(const Hyperfield& H, const SumSet& a, const SumSet& b);
SumSet scale(const Hyperfield& H, const HyperElem& x, const SumSet& s);
std::vector<HyperElem> members_for_probe(const Hyperfield& H, const SumSet& s, Rng& rng, std::size_t probes);

SumSet hypersum(const Hyperfield& H, const HyperElem& x, const HyperElem& y);
std::vector<HyperElem> setwise_sum(const Hyperfield& H, const std::vector<HyperElem>& A,
                                   const std::vector<HyperElem>& B);
SumSet nary_sum(const Hyperfield& H, const std::vector<HyperElem>& xs);
GroupElem ultrametric_d(const Hyperfield& H, const HyperElem& x, const HyperElem& y);

Report check_canonical_hypergroup(const Hyperfield& H, const Scope& scope);
Report check_hyperfield(const Hyperfield& H, const Scope& scope);
Report check_valuation(const Hyperfield& H, const Scope& scope);
Report check_val_lemma(const Hyperfield& H, const Scope& scope);

}  // namespace hv
