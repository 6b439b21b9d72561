#pragma once

#include "hyperval/basefield.hpp"
#include "hyperval/hyperfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hv {

// Operation tables of a hyperfield on elements 0..size-1.
struct FiniteTable {
  std::vector<std::string> names;
  std::size_t zero = 0;
  std::size_t one = 1;
  std::vector<std::size_t> neg;
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::vector<std::vector<std::size_t>>> add;
  // Optional valuation into Z^rank; an infinite entry marks the zero element.
  std::optional<std::vector<GroupElem>> vals;
  InitialSegment norm;

  std::size_t size() const { return names.size(); }
};

class FiniteHyperfield : public Hyperfield {
 public:
  FiniteHyperfield(std::string name, FiniteTable table);

  const FiniteTable& table() const { return t_; }
  HyperElem elem(std::size_t i) const;
  std::size_t index(const HyperElem& a) const;
  // Element by printed name; Usage error when absent.
  HyperElem find(const std::string& label) const;

  std::string name() const override { return name_; }
  HyperElem zero() const override { return elem(t_.zero); }
  HyperElem one() const override { return elem(t_.one); }
  HyperElem mul(const HyperElem& a, const HyperElem& b) const override;
  HyperElem inv(const HyperElem& a) const override;
  HyperElem neg(const HyperElem& a) const override;
  bool eq(const HyperElem& a, const HyperElem& b) const override;
  SumSet add(const HyperElem& a, const HyperElem& b) const override;

  bool finite() const override { return true; }
  std::vector<HyperElem> carrier() const override;

  bool valued() const override { return t_.vals.has_value(); }
  GroupElem val(const HyperElem& a) const override;
  InitialSegment norm() const override;
  std::size_t value_rank() const override;

  std::string show(const HyperElem& a) const override;

 private:
  std::string name_;
  FiniteTable t_;
};

using FinitePtr = std::shared_ptr<const FiniteHyperfield>;

FiniteTable krasner_K_table();
FiniteTable krasner_S_table();
FinitePtr krasner_K();
FinitePtr krasner_S();
// Prime fields only; the carrier of Q is not finite.
FinitePtr field_as_hyperfield(const BaseField& F);
// Multiplicative quotient by the subgroup T of H^x, given by element indices.
FinitePtr factor_hyperfield(const FiniteHyperfield& H, const std::vector<std::size_t>& T);
// Same tables with v(0) = infinity, v(x) = 0 otherwise, and norm {0}.
FinitePtr with_trivial_valuation(const FiniteHyperfield& H);

}  // namespace hv
