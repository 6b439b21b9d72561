#pragma once

#include "hyperval/hyperfield.hpp"
#include "hyperval/rf.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hv {

// Iterated Laurent field over F in vars (most significant first); value group Z^vars.size().
struct GroundSpec {
  BaseField F;
  std::vector<std::string> vars;

  std::size_t rank() const { return vars.size(); }
  std::string name() const;
};

// "q" or "q<n>" for Q with n variables, "f<p>" or "f<p>r<n>" for F_p.
GroundSpec parse_ground(std::string_view text);
std::vector<std::string> default_vars(std::size_t n);

// H_rho(K): classes of K^x modulo 1 + m_rho, each stored as its canonical coefficient window.
class QuotientField : public Hyperfield {
 public:
  QuotientField(GroundSpec ground, InitialSegment rho);

  const GroundSpec& ground() const { return g_; }
  const InitialSegment& rho() const { return rho_; }
  HyperElem theta(const RatFunc& a) const;
  HyperElem theta(const FieldSeries& a) const;
  HyperElem from_window(const FieldSeries& w) const;
  // The stored window, an exact Laurent polynomial.
  const FieldSeries& rep(const HyperElem& a) const;
  HyperElem parse(std::string_view text) const;

  std::string name() const override;
  HyperElem zero() const override;
  HyperElem one() const override;
  HyperElem mul(const HyperElem& a, const HyperElem& b) const override;
  HyperElem inv(const HyperElem& a) const override;
  HyperElem neg(const HyperElem& a) const override;
  bool eq(const HyperElem& a, const HyperElem& b) const override;
  bool is_zero(const HyperElem& a) const override;
  SumSet add(const HyperElem& a, const HyperElem& b) const override;
  bool member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const override;

  bool valued() const override { return true; }
  GroupElem val(const HyperElem& a) const override;
  InitialSegment norm() const override { return rho_; }
  std::size_t value_rank() const override { return g_.rank(); }
  GroupElem dist(const HyperElem& a, const HyperElem& b) const override;
  bool ball_is_point(const HyperElem& w, const Floor& floor) const override;
  HyperElem monomial(const GroupElem& g) const override;

  HyperElem sample(Rng& rng) const override;
  HyperElem probe(const HyperElem& center, const Floor& floor, Rng& rng) const override;
  std::string show(const HyperElem& a) const override;

 private:
  GroundSpec g_;
  InitialSegment rho_;
};

using QuotientPtr = std::shared_ptr<const QuotientField>;

// H_rho of a valued handle for rho inside its norm; elements are kept as representatives.
class QuotientView : public Hyperfield {
 public:
  QuotientView(HandlePtr H, InitialSegment rho);

  const HandlePtr& base() const { return H_; }
  HyperElem wrap(const HyperElem& a) const { return {id(), a.p}; }
  HyperElem unwrap(const HyperElem& a) const;

  std::string name() const override;
  HyperElem zero() const override { return wrap(H_->zero()); }
  HyperElem one() const override { return wrap(H_->one()); }
  HyperElem mul(const HyperElem& a, const HyperElem& b) const override;
  HyperElem inv(const HyperElem& a) const override;
  HyperElem neg(const HyperElem& a) const override;
  bool eq(const HyperElem& a, const HyperElem& b) const override;
  bool is_zero(const HyperElem& a) const override { return H_->is_zero(unwrap(a)); }
  SumSet add(const HyperElem& a, const HyperElem& b) const override;
  bool member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const override;

  bool valued() const override { return true; }
  GroupElem val(const HyperElem& a) const override { return H_->val(unwrap(a)); }
  InitialSegment norm() const override { return rho_; }
  std::size_t value_rank() const override { return H_->value_rank(); }
  GroupElem dist(const HyperElem& a, const HyperElem& b) const override;
  bool ball_is_point(const HyperElem& w, const Floor& floor) const override;
  HyperElem monomial(const GroupElem& g) const override { return wrap(H_->monomial(g)); }

  HyperElem sample(Rng& rng) const override { return wrap(H_->sample(rng)); }
  HyperElem probe(const HyperElem& center, const Floor& floor, Rng& rng) const override;
  std::string show(const HyperElem& a) const override;

 private:
  HandlePtr H_;
  InitialSegment rho_;
};

QuotientPtr make_quotient(const GroundSpec& ground, const InitialSegment& rho);

// The quotient H -> H_rho together with a section back into H.
struct QuotientProjection {
  HandlePtr target;
  std::function<HyperElem(const HyperElem&)> project;
  std::function<HyperElem(const HyperElem&)> lift;
};

QuotientProjection quotient_projection(const HandlePtr& H, const InitialSegment& rho);
// H_rho of a valued handle; returns H itself when rho contains its norm.
HandlePtr quotient_valued(const HandlePtr& H, const InitialSegment& rho);

// True when windows of rational functions for rho are finite.
bool finite_window(const InitialSegment& rho);

// Offsets used to probe the boundary of a ball with the given floor.
std::vector<GroupElem> boundary_exponents(const Floor& floor, std::size_t n, Rng& rng);

}  // namespace hv
