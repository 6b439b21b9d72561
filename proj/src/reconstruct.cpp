#include "hyperval/reconstruct.hpp"

#include "hyperval/errors.hpp"
#include "hyperval/rng.hpp"

#include <algorithm>
#include <map>

namespace hv {

namespace {

QuotientPtr stage_quotient(const LimitHyperfield& L, std::size_t i) {
  auto q = std::dynamic_pointer_cast<const QuotientField>(L.stage(i));
  if (!q) throw Error(ErrorCode::Unsupported, "stage " + std::to_string(i) + " is not a quotient of a ground field");
  return q;
}

bool singleton_of(const Hyperfield& H, const SumSet& s, const HyperElem& x) {
  return s.kind == SumSet::Kind::Singleton && H.eq(s.witness, x);
}

// b related to a so that cancellation and equal leading values both occur.
HahnSeries partner(const SortPtr& R, const HahnSeries& a, Rng& rng) {
  switch (rng.uniform(0, 2)) {
    case 0: {
      if (R->nu_rank() == 0) return hs_neg(a);
      HahnSeries m = random_hahn(R, rng);
      GroupElem shift = GroupElem::unit(R->nu_rank(), 0, 3 - hs_val(m)[0]);
      HahnSeries tail = hs_mul(m, HahnSeries::monomial(R, R->sample_with_value(rng, shift)));
      return hs_add(hs_neg(a), hs_mul(a, tail));
    }
    case 1: return hs_mul(HahnSeries::monomial(R, R->sample_with_value(rng, GroupElem::zero(R->nu_rank()))), a);
    default: return random_hahn(R, rng);
  }
}

struct XLevel {
  std::int64_t m = 0;
  FieldSeries f;
  bool operator==(const XLevel&) const = default;
};

std::string level_str(const std::optional<XLevel>& l) {
  if (!l) return "0";
  return "y^" + std::to_string(l->m) + " (" + l->f.str({"x"}) + ")";
}

}  // namespace

GroupElem ReconstructionResult::value(const HahnSeries& a) const {
  if (a.is_exact_zero()) return GroupElem::infinity(tower.rank);
  return limit->val(rv_project(a));
}

HyperElem ReconstructionResult::canonical(const HahnSeries& a, std::size_t i) const {
  if (a.is_exact_zero()) return limit->stage(i)->zero();
  return limit->at(rv_project(a), i);
}

HahnSeries ReconstructionResult::transport(std::size_t i, const HyperElem& w) const {
  auto q = stage_quotient(*limit, i);
  const FieldSeries& win = q->rep(w);
  std::map<GroupElem, std::vector<Term>> levels;
  for (const auto& t : win.terms()) levels[quotient_map(t.e, delta)].push_back(t);
  std::vector<HahnTerm> out;
  for (auto& [g, ts] : levels) {
    HyperElem c = limit->embed(RatFunc::poly(FieldSeries::from_terms(win.field(), win.rank(), ts)));
    out.push_back({g, c});
  }
  return HahnSeries(sort, std::move(out));
}

nlohmann::ordered_json ReconstructionResult::to_json() const {
  nlohmann::ordered_json j;
  j["pipeline"] = {"tower " + tower.name, "limit " + limit->name(),
                   "sort over Gamma/Delta, Delta = {0}^" + std::to_string(delta.n - delta.k) + " x Z^" +
                       std::to_string(delta.k),
                   "Hahn field with v(a) = v_H(rv(a))"};
  j["tower"] = tower.descriptor;
  j["budget"] = tower.budget;
  j["report"] = report.to_json();
  return j;
}

ReconstructionResult reconstruct(Tower T, const ConvexSubgroup& delta, std::size_t budget, const Scope& scope) {
  T.budget = budget;
  if (delta.n != T.rank || delta.k > delta.n)
    throw Error(ErrorCode::Usage, "Delta of rank " + std::to_string(delta.n) + " for a rank " + std::to_string(T.rank) +
                                      " tower");
  LimitPtr L = limit_hyperfield(T);
  if (!seg_set_equal(*T.union_norm, delta.positive_part()))
    throw Error(ErrorCode::HypothesisMismatch, "union of stage norms " + T.union_norm->str() +
                                                   " differs from the positive part " +
                                                   delta.positive_part().str() + " of Delta");
  ReconstructionResult R{T, L, delta, std::make_shared<HyperfieldSort>(L, delta), {"reconstruct " + T.name, {}}};
  const SortPtr& S = R.sort;
  const Hyperfield& H = *L;
  Rng rng(scope.seed);
  AxiomTally vz("v-zero", scope.seed), vm("v-multiplicative", scope.seed), u1("v-ultrametric rv(a) != -rv(b)", scope.seed),
      u2("v-ultrametric rv(a) = -rv(b)", scope.seed), wc("w'-compatible", scope.seed), sim("sim-is-Delta", scope.seed);
  std::size_t n = scope.samples ? scope.samples : 100;
  for (std::size_t s = 0; s < n; ++s) {
    HahnSeries a = random_hahn(S, rng);
    HahnSeries b = partner(S, a, rng);
    std::string w = show_hahn(a) + " ; " + show_hahn(b);
    vz.check(!R.value(a).is_inf() && R.value(hs_sub(a, a)).is_inf(), [&] { return show_hahn(a); });
    if (b.is_exact_zero()) continue;
    vm.check(R.value(hs_mul(a, b)) == R.value(a) + R.value(b), w);
    wc.check(quotient_map(R.value(a), delta) == hs_val(a), [&] { return show_hahn(a); });
    HyperElem ra = rv_project(a), rb = rv_project(b);
    HahnSeries sum = hs_add(a, b);
    GroupElem lo = std::min(R.value(a), R.value(b));
    if (H.eq(ra, H.neg(rb))) {
      u2.check(lo < R.value(sum), w);
    } else {
      u1.check(lo <= R.value(sum) && singleton_of(H, H.add(ra, rb), rv_project(sum)), w);
    }
    HyperElem p = H.sample(rng), q = H.sample(rng);
    if (H.is_zero(p) || H.is_zero(q)) continue;
    GroupElem gap = H.val(p) - H.val(q);
    if (gap < GroupElem::zero(gap.rank())) gap = -gap;
    if (delta.contains(gap) && !seg_contains(T.segment(budget), gap)) continue;
    SumSet pq = H.add(p, q);
    bool related = !singleton_of(H, pq, p) && !singleton_of(H, pq, q);
    sim.check(related == delta.contains(H.val(p) - H.val(q)), [&] { return H.show(p) + " ~ " + H.show(q); });
  }
  for (auto* t : {&vz, &vm, &u1, &u2, &wc, &sim}) R.report.results.push_back(t->done());
  R.report.append(check_rv_round_trip(S, scope));
  return R;
}

Report verify_theorem(const ReconstructionResult& R, const std::vector<std::size_t>& stages, const Scope& scope,
                      bool planted) {
  Report rep{std::string(planted ? "planted " : "") + "H_rho(K_new) vs H_rho(" + R.tower.name + ")", {}};
  auto v = [&](const HahnSeries& a) {
    if (!planted) return R.value(a);
    return a.is_exact_zero() ? GroupElem::infinity(R.tower.rank) : hs_val(a).padded(R.tower.rank);
  };
  AxiomTally canon("canonical-form", scope.seed), mult("multiplicative", scope.seed),
      fwd("sum-membership stage => K_new", scope.seed), bwd("sum-membership K_new => stage", scope.seed),
      val("value", scope.seed);
  std::size_t n = scope.samples ? scope.samples : 100;
  for (std::size_t i : stages) {
    HandlePtr Hi = R.limit->stage(i);
    const InitialSegment rho = R.tower.segment(i);
    Rng rng(scope.seed + 7919 * i);
    std::string at = " @" + std::to_string(i);
    for (std::size_t s = 0; s < n; ++s) {
      HyperElem x = Hi->sample(rng), y = Hi->sample(rng);
      HahnSeries px = R.transport(i, x), py = R.transport(i, y);
      canon.check(Hi->eq(R.canonical(px, i), x), [&] { return Hi->show(x) + at; });
      GroupElem vx = Hi->is_zero(x) ? GroupElem::infinity(R.tower.rank) : Hi->val(x);
      val.check(v(px) == vx, [&] { return Hi->show(x) + at; });
      mult.check(Hi->eq(R.canonical(hs_mul(px, py), i), Hi->mul(x, y)), [&] { return Hi->show(x) + " * " + Hi->show(y) + at; });

      SumSet S = Hi->add(x, y);
      std::vector<HyperElem> zs = members_for_probe(*Hi, S, rng, scope.probes);
      zs.push_back(Hi->sample(rng));
      if (!Hi->is_zero(x)) zs.push_back(Hi->probe(x, Floor{rho, Hi->val(x)}, rng));
      GroupElem lo = std::min(v(px), v(py));
      for (const auto& z : zs) {
        bool in_stage = Hi->contains(S, z);
        HahnSeries d = hs_sub(hs_sub(R.transport(i, z), px), py);
        bool in_new = d.is_exact_zero() || (!lo.is_inf() && Floor{rho, lo}.exceeded_by(v(d)));
        std::string w = Hi->show(z) + " in " + Hi->show(x) + " + " + Hi->show(y) + at;
        if (in_stage) fwd.check(in_new, w);
        if (in_new) bwd.check(in_stage, w);
      }
    }
  }
  for (auto* t : {&canon, &mult, &fwd, &bwd, &val}) rep.results.push_back(t->done());
  return rep;
}

Report paper_example_iso(std::size_t n_max, const Scope& scope) {
  Report rep{"lim H_(0,n)(Q(x)(y)) -> H_Delta(Q((x))((y))), n <= " + std::to_string(n_max), {}};
  Tower T = builtin_tower("upto-0n", std::max<std::size_t>(n_max, 1));
  LimitPtr L = limit_hyperfield(T);
  auto q = stage_quotient(*L, n_max);
  const BaseField F = BaseField::rationals();

  auto psi = [&](const HyperElem& a) -> std::optional<XLevel> {
    if (L->is_zero(a)) return std::nullopt;
    HyperElem an = L->at(a, n_max);
    const FieldSeries& w = q->rep(an);
    XLevel out{w.terms().front().e[0], {}};
    std::vector<Term> ts;
    for (const auto& t : w.terms()) ts.push_back({GroupElem{t.e[1]}, t.c});
    std::int64_t k = w.terms().front().e[1];
    out.f = FieldSeries::from_terms(F, 1, ts, GroupElem{k + static_cast<std::int64_t>(n_max) + 1});
    return out;
  };
  auto psi_exact = [&](const RatFunc& r) -> std::optional<XLevel> {
    if (r.is_zero()) return std::nullopt;
    auto lv = leading_levels(r, 1);
    const RatFunc& c = lv.front().second;
    GroupElem cut{c.val()[0] + static_cast<std::int64_t>(n_max) + 1};
    return XLevel{lv.front().first, expand(c, cut).truncated(cut)};
  };

  AxiomTally wd("well-defined", scope.seed), mult("multiplicative", scope.seed), add("additive", scope.seed),
      iso("isometric", scope.seed), inj("injective", scope.seed);
  Rng rng(scope.seed);
  std::size_t n = scope.samples ? scope.samples : 100;
  for (std::size_t s = 0; s < n; ++s) {
    RatFunc ra = random_rf(rng, F, 2, false);
    RatFunc rb = rng.chance(1, 3) ? -ra + random_rf(rng, F, 2, false) * ra * RatFunc::poly(FieldSeries::monomial(F, 2, GroupElem{1, 0}, 1))
                                  : random_rf(rng, F, 2, false);
    HyperElem a = L->embed(ra), b = L->embed(rb);
    auto pa = psi(a);
    wd.check(pa == psi_exact(ra), [&] { return level_str(pa) + " vs " + level_str(psi_exact(ra)); });
    GroupElem expect = pa ? GroupElem{pa->m, pa->f.val()[0]} : GroupElem::infinity(2);
    iso.check(L->is_zero(a) ? expect.is_inf() : L->val(a) == expect, [&] { return level_str(pa); });
    mult.check(psi(L->mul(a, b)) == psi_exact(ra * rb), [&] { return level_str(pa) + " * " + level_str(psi(b)); });

    RatFunc rc = ra + rb;
    SumSet S = L->add(a, b);
    auto pb = psi(b);
    bool cancels = rc.is_zero() || (pa && pb && pa->m == pb->m && pa->m < rc.val()[0]);
    std::string w = level_str(pa) + " + " + level_str(pb);
    if (cancels)
      add.check(S.kind == SumSet::Kind::ZeroBall && L->contains(S, L->embed(rc)), w);
    else
      add.check(S.kind == SumSet::Kind::Singleton && psi(S.witness) == psi_exact(rc), w);
    inj.check((psi(a) == psi(b)) == L->eq_up_to(a, b, n_max), w);
  }
  for (auto* t : {&wd, &mult, &add, &iso, &inj}) rep.results.push_back(t->done());
  return rep;
}

}  // namespace hv
