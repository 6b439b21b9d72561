#pragma once

#include "hyperval/finite.hpp"
#include "hyperval/hyperfield.hpp"

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace hv {

// Split sequence structure F^x -> F^x x Z^rank -> Z^rank.
struct SequenceStructure {
  BaseField F;
  std::size_t rank = 0;

  std::string name() const;
  bool operator==(const SequenceStructure&) const = default;
};

// The stringent hyperfield of a split sequence structure, with the four-case sum.
class RVHyperfield : public Hyperfield {
 public:
  explicit RVHyperfield(SequenceStructure S) : s_(S) {}

  const SequenceStructure& structure() const { return s_; }
  const RVElem& rep(const HyperElem& a) const;
  HyperElem make(const mpq_class& f, const GroupElem& g) const;
  HyperElem adopt(const RVElem& e) const { return {id(), e}; }
  // "0" or "(f; g)" with g an integer for rank 1 or a tuple.
  HyperElem parse(std::string_view text) const;

  std::string name() const override { return "RV(" + s_.name() + ")"; }
  HyperElem zero() const override;
  HyperElem one() const override;
  HyperElem mul(const HyperElem& a, const HyperElem& b) const override;
  HyperElem inv(const HyperElem& a) const override;
  HyperElem neg(const HyperElem& a) const override;
  bool eq(const HyperElem& a, const HyperElem& b) const override;
  bool is_zero(const HyperElem& a) const override { return rep(a).zero; }
  SumSet add(const HyperElem& a, const HyperElem& b) const override;
  bool member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const override;

  bool valued() const override { return true; }
  GroupElem val(const HyperElem& a) const override;
  InitialSegment norm() const override { return InitialSegment::zero(s_.rank); }
  std::size_t value_rank() const override { return s_.rank; }
  bool ball_is_point(const HyperElem& w, const Floor& floor) const override;
  HyperElem monomial(const GroupElem& g) const override { return make(1, g); }

  HyperElem sample(Rng& rng) const override;
  HyperElem probe(const HyperElem& center, const Floor& floor, Rng& rng) const override;
  std::string show(const HyperElem& a) const override;

 private:
  SequenceStructure s_;
};

using RVHyperPtr = std::shared_ptr<const RVHyperfield>;

// A structure (H, oplus, *, 0, 1); elements are those of the underlying hyperfield.
class RVSort {
 public:
  virtual ~RVSort() = default;
  virtual std::string name() const { return hyper().name(); }
  virtual const Hyperfield& hyper() const = 0;
  virtual HandlePtr handle() const = 0;
  virtual HyperElem oplus(const HyperElem& a, const HyperElem& b) const = 0;
  // Value in the recovered group; infinity for zero.
  virtual GroupElem nu(const HyperElem& a) const = 0;
  virtual std::size_t nu_rank() const = 0;

  virtual HyperElem mul(const HyperElem& a, const HyperElem& b) const { return hyper().mul(a, b); }
  virtual HyperElem inv(const HyperElem& a) const { return hyper().inv(a); }
  virtual bool eq(const HyperElem& a, const HyperElem& b) const { return hyper().eq(a, b); }
  virtual HyperElem sample(Rng& rng) const { return hyper().sample(rng); }
  // Element of value g in the recovered group; the generic version uses hyperfield monomials.
  virtual HyperElem sample_with_value(Rng& rng, const GroupElem& g) const;

  HyperElem zero() const { return hyper().zero(); }
  HyperElem one() const { return hyper().one(); }
  HyperElem neg(const HyperElem& a) const { return hyper().neg(a); }
  bool is_zero(const HyperElem& a) const { return hyper().is_zero(a); }
  std::string show(const HyperElem& a) const { return hyper().show(a); }
};

using SortPtr = std::shared_ptr<const RVSort>;

class SplitSort : public RVSort {
 public:
  explicit SplitSort(SequenceStructure S);
  const RVHyperfield& rv() const { return *h_; }
  const Hyperfield& hyper() const override { return *h_; }
  HandlePtr handle() const override { return h_; }
  HyperElem oplus(const HyperElem& a, const HyperElem& b) const override;
  GroupElem nu(const HyperElem& a) const override { return h_->val(a); }
  std::size_t nu_rank() const override { return h_->value_rank(); }
  HyperElem sample_with_value(Rng& rng, const GroupElem& g) const override;

 private:
  RVHyperPtr h_;
};

// oplus read off a stringent valued hyperfield, values taken modulo the convex subgroup delta.
class HyperfieldSort : public RVSort {
 public:
  HyperfieldSort(HandlePtr L, ConvexSubgroup delta);
  const Hyperfield& hyper() const override { return *L_; }
  HandlePtr handle() const override { return L_; }
  const ConvexSubgroup& delta() const { return d_; }
  HyperElem oplus(const HyperElem& a, const HyperElem& b) const override;
  GroupElem nu(const HyperElem& a) const override;
  std::size_t nu_rank() const override { return d_.n - d_.k; }

 private:
  HandlePtr L_;
  ConvexSubgroup d_;
};

// oplus on a finite table: singleton sums collapse, otherwise absorption of an operand first, then 0.
class TableSort : public RVSort {
 public:
  explicit TableSort(FinitePtr H) : H_(std::move(H)) {}
  const Hyperfield& hyper() const override { return *H_; }
  HandlePtr handle() const override { return H_; }
  HyperElem oplus(const HyperElem& a, const HyperElem& b) const override;
  GroupElem nu(const HyperElem& a) const override;
  std::size_t nu_rank() const override { return 0; }
  HyperElem sample_with_value(Rng& rng, const GroupElem& g) const override;

 private:
  FinitePtr H_;
};

Report check_rv_axioms(const RVSort& R, const Scope& scope);
Report derive_rv8_9_10(const RVSort& R, const Scope& scope);

// Left fold of oplus, refused unless every ordering gives the same result.
HyperElem guarded_oplus(const RVSort& R, const std::vector<HyperElem>& xs);

struct RecoveredGamma {
  std::size_t rank = 0;
  std::size_t classes = 0;  // number of classes for finite handles, 0 when infinite
  std::function<GroupElem(const HyperElem&)> nu;
  std::string description;
};

RecoveredGamma recover_gamma(const HandlePtr& H, const Scope& scope = Scope::sampled(200, 1));

HandlePtr to_stringent(const SequenceStructure& S);
SequenceStructure from_stringent(const HandlePtr& H);

SequenceStructure parse_sequence_structure(std::string_view field, std::string_view group);

}  // namespace hv
