#pragma once

#include "hyperval/hahn.hpp"
#include "hyperval/tower.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace hv {

struct ReconstructionResult {
  Tower tower;
  LimitPtr limit;
  ConvexSubgroup delta;
  // The limit read as an RV-sort with values in Gamma/Delta.
  SortPtr sort;
  Report report;

  // v(a) = v_H(rv(a)), with values in Gamma.
  GroupElem value(const HahnSeries& a) const;
  // Stage-i canonical form of the class of a modulo 1 + m_rho_i.
  HyperElem canonical(const HahnSeries& a, std::size_t i) const;
  // Stage-i window w = sum_k w_k, split along Gamma/Delta and sent to sum_k t^k embed(w_k).
  HahnSeries transport(std::size_t i, const HyperElem& w) const;
  nlohmann::ordered_json to_json() const;
};

// Needs limit_hyperfield(T) and a union of stage norms equal to the positive part of delta.
ReconstructionResult reconstruct(Tower T, const ConvexSubgroup& delta, std::size_t budget,
                                 const Scope& scope = Scope::sampled(100, 1));

// Stagewise isomorphism H_rho_i(K0) -> H_rho_i(K_new): canonical forms, products, sums both ways, values.
// planted replaces v by the padded Hahn value, dropping w'.
Report verify_theorem(const ReconstructionResult& R, const std::vector<std::size_t>& stages, const Scope& scope,
                      bool planted = false);

// (y^m x^k sum_{i<=n} a_i x^i)_n -> y^m sum_i a_i x^(k+i) on lim H_(0,n)(Q(x)(y)).
Report paper_example_iso(std::size_t n_max, const Scope& scope);

}  // namespace hv
