#include "hyperval/tower.hpp"

#include "hyperval/errors.hpp"

#include <algorithm>

namespace hv {

namespace {

const HyperElem& pick(const SumSet& s) { return s.kind == SumSet::Kind::Enumerated ? s.elems.front() : s.witness; }

// Sum of stage elements; zero summands are dropped.
SumSet stage_sum(const Hyperfield& H, const std::vector<HyperElem>& xs) {
  std::vector<HyperElem> nz;
  for (const auto& x : xs)
    if (!H.is_zero(x)) nz.push_back(x);
  if (nz.empty()) return SumSet::zero_ball(H.zero(), Floor{H.norm(), GroupElem::infinity(H.value_rank())});
  if (nz.size() == 1) return SumSet::singleton(nz.front());
  if (nz.size() == 2) return H.add(nz[0], nz[1]);
  return nary_sum(H, nz);
}

QuotientPtr as_quotient(const HandlePtr& H) {
  auto q = std::dynamic_pointer_cast<const QuotientField>(H);
  if (!q) throw Error(ErrorCode::Unsupported, H->name() + " is not a stage of a canonical tower");
  return q;
}

std::string pair_str(std::size_t j, std::size_t i) { return std::to_string(j) + "," + std::to_string(i); }

GroupElem from_json_coords(const nlohmann::json& j) {
  GroupElem::Coords c;
  for (const auto& v : j) c.push_back(v.get<std::int64_t>());
  return GroupElem(c);
}

nlohmann::json coords_json(const GroupElem& g) {
  auto a = nlohmann::json::array();
  for (auto v : g.coords()) a.push_back(v);
  return a;
}

InitialSegment upto_or_zero(const GroupElem& g) {
  if (g.is_zero()) return InitialSegment::zero(g.rank());
  return InitialSegment::upto(g);
}

// Union of an increasing family of bounded segments, when it is a cone.
std::optional<InitialSegment> infer_union(const std::function<InitialSegment(std::size_t)>& rho, std::size_t n,
                                          std::size_t far) {
  InitialSegment r0 = rho(0), r1 = rho(far);
  if (r1.kind() == InitialSegment::Kind::Cone) return r1;
  if (r1 == r0) return r1;
  if (r1.kind() != InitialSegment::Kind::UpTo) return std::nullopt;
  GroupElem b0 = r0.kind() == InitialSegment::Kind::UpTo ? r0.bound() : GroupElem::zero(n);
  GroupElem b1 = r1.bound();
  std::size_t p = 0;
  while (p < n && b0[p] == b1[p]) ++p;
  for (std::size_t q = 0; q < p; ++q)
    if (b1[q] != 0) return std::nullopt;
  return InitialSegment::cone(n, n - p);
}

}  // namespace

Report check_isometric(const IsometricMap& theta, const Scope& scope) {
  const Hyperfield& S = *theta.source;
  const Hyperfield& T = *theta.target;
  Rng rng(scope.seed);
  AxiomTally ih1("IH1", scope.seed), ih2p("IH2'", scope.seed), ih3("IH3", scope.seed), ih2("IH2", scope.seed);
  const auto& f = theta.f;
  auto pair = [&](const HyperElem& x, const HyperElem& y, const std::vector<HyperElem>& extra) {
    HyperElem fx = f(x), fy = f(y);
    HyperElem fxy = f(S.mul(x, y));
    ih1.check(T.eq(fxy, T.mul(fx, fy)), [&] { return "theta(" + S.show(x) + "*" + S.show(y) + ")=" + T.show(fxy); });
    if (S.is_zero(x))
      ih3.check(T.is_zero(fx), [&] { return "theta(0)=" + T.show(fx); });
    else
      ih3.check(T.valued() && T.val(fx) == S.val(x), [&] { return "v(" + S.show(x) + ")=" + S.val(x).str() + " but v(theta)=" + T.val(fx).str(); });
    SumSet sxy = S.add(x, y);
    SumSet txy = T.add(fx, fy);
    auto members = members_for_probe(S, sxy, rng, scope.exhaustive ? 0 : 2);
    for (const auto& z : members)
      ih2p.check(T.contains(txy, f(z)), [&] { return "theta(" + S.show(z) + ") not in theta(" + S.show(x) + ")+theta(" +
                                             S.show(y) + ")"; });
    std::vector<HyperElem> zs = members;
    zs.insert(zs.end(), extra.begin(), extra.end());
    for (const auto& z : zs) {
      bool lhs = T.contains(txy, f(z));
      // The summand of smaller value is recovered from z minus the other one.
      bool swap = T.valued() && T.val(fx) > T.val(fy);
      const HyperElem& other = swap ? x : y;
      const HyperElem& want = swap ? fy : fx;
      auto ws = members_for_probe(S, S.add(z, S.neg(other)), rng, scope.exhaustive ? 0 : 1);
      bool any = false, all = true;
      for (const auto& w : ws) {
        bool m = T.eq(f(w), want);
        any = any || m;
        all = all && m;
      }
      ih2.check(lhs == any && (!lhs || all), [&] { return "z=" + S.show(z) + " x=" + S.show(x) + " y=" + S.show(y) +
                                                (lhs ? ": theta(z) in the image sum, preimage sum misses z"
                                                     : ": z in the preimage sum, theta(z) outside"); });
    }
  };
  if (scope.exhaustive && S.finite()) {
    auto c = S.carrier();
    for (const auto& x : c)
      for (const auto& y : c) pair(x, y, c);
  } else {
    for (std::size_t t = 0; t < scope.samples; ++t) {
      HyperElem x = S.sample(rng);
      HyperElem y = S.sample(rng);
      if (t % 4 == 1) y = S.neg(x);
      if (t % 4 == 2 && !S.is_zero(x)) y = S.probe(S.neg(x), Floor{T.norm(), S.val(x)}, rng);
      std::vector<HyperElem> extra{S.sample(rng)};
      SumSet s = S.add(x, y);
      if (s.kind != SumSet::Kind::Empty && S.valued() && !S.is_zero(x))
        extra.push_back(S.probe(pick(s), Floor{T.norm(), S.val(x)}, rng));
      pair(x, y, extra);
    }
  }
  Report r{"isometric " + theta.name, {ih1.done(), ih2p.done(), ih3.done(), ih2.done()}};
  AxiomTally eqv("IH2<=>IH2'", scope.seed);
  eqv.check(ih2.failed() == ih2p.failed(), "IH2 and IH2' disagree");
  r.results.push_back(eqv.done());
  return r;
}

Report induced_iso(const IsometricMap& theta, const Scope& scope) {
  const Hyperfield& S = *theta.source;
  const Hyperfield& T = *theta.target;
  QuotientProjection P = quotient_projection(theta.source, T.norm());
  const Hyperfield& Q = *P.target;
  auto phi = [&](const HyperElem& c) { return theta.f(P.lift(c)); };
  Rng rng(scope.seed);
  AxiomTally wd("well-defined", scope.seed), inj("injective", scope.seed), sur("surjective", scope.seed),
      mul("multiplicative", scope.seed), add("additive", scope.seed), iso("isometric", scope.seed);
  const std::size_t n = scope.exhaustive ? 64 : scope.samples;
  for (std::size_t t = 0; t < n; ++t) {
    HyperElem a = S.sample(rng);
    HyperElem b = S.sample(rng);
    if (t % 3 == 1 && !S.is_zero(a)) b = S.probe(a, Floor{T.norm(), S.val(a)}, rng);
    HyperElem pa = P.project(a), pb = P.project(b);
    wd.check(T.eq(phi(pa), theta.f(a)), [&] { return "phi([" + S.show(a) + "]) differs from theta"; });
    inj.check(Q.eq(pa, pb) == T.eq(phi(pa), phi(pb)), [&] { return Q.show(pa) + " vs " + Q.show(pb); });
    mul.check(T.eq(phi(Q.mul(pa, pb)), T.mul(phi(pa), phi(pb))), [&] { return Q.show(pa) + "*" + Q.show(pb); });
    if (Q.is_zero(pa))
      iso.check(T.is_zero(phi(pa)), "zero not preserved");
    else
      iso.check(Q.val(pa) == T.val(phi(pa)), [&] { return "v(" + Q.show(pa) + ") changes"; });
    SumSet qs = Q.add(pa, pb);
    SumSet ts = T.add(phi(pa), phi(pb));
    auto zs = members_for_probe(Q, qs, rng, 1);
    zs.push_back(P.project(S.sample(rng)));
    if (!Q.is_zero(pa)) zs.push_back(Q.probe(pick(qs), Floor{Q.norm(), Q.val(pa)}, rng));
    for (const auto& z : zs) {
      bool lhs = Q.contains(qs, z), rhs = T.contains(ts, phi(z));
      add.check(lhs == rhs, [&] { return Q.show(z) + (lhs ? " in " : " not in ") + Q.show(pa) + "+" + Q.show(pb) +
                                " but its image " + (rhs ? "is" : "is not") + " in the image sum"; });
    }
    HyperElem tgt = T.sample(rng);
    std::optional<HyperElem> pre;
    if (theta.section) {
      pre = theta.section(tgt);
    } else {
      for (int k = 0; k < 64 && !pre; ++k) {
        HyperElem s = S.sample(rng);
        if (T.eq(theta.f(s), tgt)) pre = s;
      }
      if (!pre) throw Error(ErrorCode::NotSurjective, "no preimage found for " + T.show(tgt));
    }
    sur.check(T.eq(theta.f(*pre), tgt), [&] { return "section misses " + T.show(tgt); });
  }
  return {"induced " + theta.name + ": " + Q.name() + " -> " + T.name(),
          {wd.done(), inj.done(), sur.done(), mul.done(), add.done(), iso.done()}};
}

Tower canonical_tower(const GroundSpec& ground, std::function<InitialSegment(std::size_t)> rho, std::string name,
                      std::size_t budget) {
  const std::size_t n = ground.rank();
  const std::size_t far = 4 * budget + 8;
  for (std::size_t i = 0; i < far; ++i) {
    InitialSegment a = rho(i), b = rho(i + 1);
    if (a.rank() != n) throw Error(ErrorCode::Usage, "segment rank differs from the ground rank");
    if (!seg_subset(a, b))
      throw Error(ErrorCode::SegmentsNotIncreasing,
                  "rho_" + std::to_string(i) + "=" + a.str() + " is not inside rho_" + std::to_string(i + 1) + "=" + b.str());
  }
  struct Cache {
    std::mutex mu;
    std::map<std::size_t, QuotientPtr> stages;
  };
  auto cache = std::make_shared<Cache>();
  auto typed = [cache, ground, rho](std::size_t i) {
    std::lock_guard lk(cache->mu);
    auto it = cache->stages.find(i);
    if (it == cache->stages.end()) it = cache->stages.emplace(i, make_quotient(ground, rho(i))).first;
    return it->second;
  };
  Tower T;
  T.name = std::move(name);
  T.rank = n;
  T.segment = rho;
  T.stage = [typed](std::size_t i) -> HandlePtr { return typed(i); };
  T.map = [typed](std::size_t j, std::size_t i, const HyperElem& a) {
    if (j < i) throw Error(ErrorCode::Precondition, "tower maps go from higher to lower stages");
    if (j == i) return a;
    return typed(i)->theta(typed(j)->rep(a));
  };
  T.ground = ground;
  T.union_norm = infer_union(rho, n, far);
  T.budget = budget;
  T.descriptor = {{"ground", ground.name()}, {"name", T.name}, {"budget", budget}};
  return T;
}

Tower builtin_tower(std::string_view name, std::size_t budget) {
  auto twice = [](std::size_t i) { return 2 * i; };
  if (name == "upto-0n" || name == "upto-n0" || name == "upto-1m") {
    GroundSpec g = parse_ground("q2");
    std::function<InitialSegment(std::size_t)> rho;
    GroupElem base, step;
    if (name == "upto-0n") base = {0, 0}, step = {0, 1};
    if (name == "upto-n0") base = {0, 0}, step = {1, 0};
    if (name == "upto-1m") base = {1, 0}, step = {0, 1};
    rho = [base, step](std::size_t i) { return upto_or_zero(base + static_cast<std::int64_t>(i) * step); };
    Tower T = canonical_tower(g, rho, std::string(name), budget);
    if (name != "upto-1m") T.doubling = twice;
    T.descriptor["segments"] = {{"base", coords_json(base)}, {"step", coords_json(step)}};
    return T;
  }
  if (name.starts_with("rank1-")) {
    GroundSpec g = parse_ground(name.substr(6));
    if (g.rank() != 1) throw Error(ErrorCode::Usage, "rank1 towers need a one-variable ground field");
    Tower T = canonical_tower(g, [](std::size_t i) { return upto_or_zero(GroupElem{static_cast<std::int64_t>(i)}); },
                              std::string(name), budget);
    T.doubling = twice;
    T.descriptor["segments"] = {{"base", {0}}, {"step", {1}}};
    return T;
  }
  throw Error(ErrorCode::Usage, "unknown tower '" + std::string(name) + "'");
}

Tower tower_from_json(const nlohmann::json& j) {
  try {
    std::size_t budget = j.value("budget", 8);
    if (j.contains("builtin")) return builtin_tower(j.at("builtin").get<std::string>(), budget);
    GroundSpec g = parse_ground(j.at("ground").get<std::string>());
    const auto& seg = j.at("segments");
    GroupElem base = from_json_coords(seg.at("base"));
    GroupElem step = from_json_coords(seg.at("step"));
    if (base.rank() != g.rank() || step.rank() != g.rank())
      throw Error(ErrorCode::Usage, "segment coordinates must have rank " + std::to_string(g.rank()));
    auto rho = [base, step](std::size_t i) { return upto_or_zero(base + static_cast<std::int64_t>(i) * step); };
    Tower T = canonical_tower(g, rho, j.value("name", std::string("custom")), budget);
    T.descriptor["segments"] = {{"base", coords_json(base)}, {"step", coords_json(step)}};
    return T;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Usage, std::string("tower descriptor: ") + e.what());
  }
}

IsometricMap tower_map(const Tower& T, std::size_t j, std::size_t i) {
  IsometricMap m;
  m.source = T.stage(j);
  m.target = T.stage(i);
  m.f = [T, j, i](const HyperElem& a) { return T.map(j, i, a); };
  if (T.ground) {
    auto src = as_quotient(m.source);
    auto tgt = as_quotient(m.target);
    m.section = [src, tgt](const HyperElem& t) { return src->theta(tgt->rep(t)); };
  }
  m.name = "theta_" + pair_str(j, i);
  return m;
}

LimitHyperfield::LimitHyperfield(Tower T, std::function<std::size_t(std::size_t)> doubling)
    : T_(std::move(T)), n_(std::move(doubling)) {
  zstage_ = n_(T_.budget);
  laurent_only_ = false;
  for (std::size_t i = 0; i <= zstage_; ++i)
    if (!finite_window(T_.segment(i))) laurent_only_ = true;
}

const LimitNode& LimitHyperfield::node(const HyperElem& a) const {
  check(a);
  return *std::get<std::shared_ptr<const LimitNode>>(a.p);
}

HyperElem LimitHyperfield::make(std::function<HyperElem(std::size_t)> resolve) const {
  auto n = std::make_shared<LimitNode>();
  n->resolve = std::move(resolve);
  return {id(), std::shared_ptr<const LimitNode>(std::move(n))};
}

HyperElem LimitHyperfield::at(const HyperElem& a, std::size_t i) const {
  const LimitNode& n = node(a);
  {
    std::lock_guard lk(n.mu);
    auto it = n.memo.find(i);
    if (it != n.memo.end()) return it->second;
  }
  HyperElem v = n.resolve(i);
  stage(i)->check(v);
  std::optional<std::pair<std::size_t, HyperElem>> lower, upper;
  {
    std::lock_guard lk(n.mu);
    auto [it, inserted] = n.memo.emplace(i, v);
    if (!inserted) return it->second;
    if (it != n.memo.begin()) lower = *std::prev(it);
    if (std::next(it) != n.memo.end()) upper = *std::next(it);
  }
  if (lower && !stage(lower->first)->eq(T_.map(i, lower->first, v), lower->second))
    throw Error(ErrorCode::Incompatible, "stage " + std::to_string(i) + " does not project onto stage " +
                                             std::to_string(lower->first));
  if (upper && !stage(i)->eq(T_.map(upper->first, i, upper->second), v))
    throw Error(ErrorCode::Incompatible, "stage " + std::to_string(upper->first) + " does not project onto stage " +
                                             std::to_string(i));
  return v;
}

HyperElem LimitHyperfield::embed(const RatFunc& a) const {
  if (!T_.ground) throw Error(ErrorCode::Unsupported, "tower has no ground field");
  return make([this, a](std::size_t i) { return as_quotient(stage(i))->theta(a); });
}

HyperElem LimitHyperfield::embed(std::string_view text) const {
  if (!T_.ground) throw Error(ErrorCode::Unsupported, "tower has no ground field");
  return embed(eval_rf(parse_rf(text, T_.ground->vars), T_.ground->F, T_.rank));
}

HyperElem LimitHyperfield::lift(std::size_t i, const HyperElem& t) const {
  return embed(RatFunc::poly(as_quotient(stage(i))->rep(t)));
}

bool LimitHyperfield::eq_up_to(const HyperElem& a, const HyperElem& b, std::size_t i) const {
  return stage(i)->eq(at(a, i), at(b, i));
}

bool LimitHyperfield::field_mode() const {
  const InitialSegment& u = *T_.union_norm;
  return u.kind() == InitialSegment::Kind::Cone && u.k() == u.rank();
}

HyperElem LimitHyperfield::zero() const {
  return pointwise([this](std::size_t i) { return stage(i)->zero(); });
}

HyperElem LimitHyperfield::one() const {
  return pointwise([this](std::size_t i) { return stage(i)->one(); });
}

HyperElem LimitHyperfield::mul(const HyperElem& a, const HyperElem& b) const {
  check(a);
  check(b);
  return pointwise([this, a, b](std::size_t i) { return stage(i)->mul(at(a, i), at(b, i)); });
}

HyperElem LimitHyperfield::inv(const HyperElem& a) const {
  if (is_zero(a)) throw Error(ErrorCode::ZeroDivision, "inverse of zero");
  return pointwise([this, a](std::size_t i) { return stage(i)->inv(at(a, i)); });
}

HyperElem LimitHyperfield::neg(const HyperElem& a) const {
  check(a);
  return pointwise([this, a](std::size_t i) { return stage(i)->neg(at(a, i)); });
}

bool LimitHyperfield::is_zero(const HyperElem& a) const { return stage(0)->is_zero(at(a, 0)); }

SumSet LimitHyperfield::add(const HyperElem& a, const HyperElem& b) const {
  return triple_sum_resolve(*this, a, b, zero());
}

bool LimitHyperfield::member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const {
  std::size_t Z = zstage_;
  return stage(Z)->member_def(at(x, Z), at(y, Z), at(z, Z));
}

GroupElem LimitHyperfield::val(const HyperElem& a) const { return stage(0)->val(at(a, 0)); }

GroupElem LimitHyperfield::dist(const HyperElem& a, const HyperElem& b) const {
  if (eq(a, b)) return GroupElem::infinity(T_.rank);
  return limit_d(*this, a, b);
}

bool LimitHyperfield::ball_is_point(const HyperElem& w, const Floor& floor) const {
  return floor_leq(Floor{norm(), val(w)}, floor);
}

HyperElem LimitHyperfield::monomial(const GroupElem& g) const {
  return pointwise([this, g](std::size_t i) { return stage(i)->monomial(g); });
}

HyperElem LimitHyperfield::sample(Rng& rng) const {
  if (!T_.ground) throw Error(ErrorCode::Unsupported, "sampling needs a ground field");
  if (rng.chance(1, 12)) return zero();
  return embed(random_rf(rng, T_.ground->F, T_.rank, laurent_only_));
}

HyperElem LimitHyperfield::probe(const HyperElem& center, const Floor& floor, Rng& rng) const {
  if (!T_.ground) return sample(rng);
  auto es = boundary_exponents(floor, T_.rank, rng);
  if (es.empty()) return sample(rng);
  const GroupElem& e = es[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(es.size()) - 1))];
  const BaseField& F = T_.ground->F;
  HyperElem m = embed(RatFunc::poly(FieldSeries::monomial(F, T_.rank, e, F.random_nonzero(rng))));
  SumSet s = add(center, m);
  if (s.kind == SumSet::Kind::ZeroBall) return zero();
  return s.witness;
}

std::string LimitHyperfield::show(const HyperElem& a) const {
  return stage(budget())->show(at(a, budget())) + "@" + std::to_string(budget());
}

LimitPtr limit_hyperfield(const Tower& T) {
  const std::size_t B = T.budget;
  const std::size_t reach = 2 * B + 2;
  auto all_pairs_fail = [&]() {
    std::size_t tested = 0;
    for (std::size_t i = 0; i <= B; ++i)
      for (std::size_t j = i; j <= B; ++j) {
        ++tested;
        if (seg_double_leq(T.segment(i), T.segment(j))) return std::string();
      }
    return "; seg_double_leq fails for all " + std::to_string(tested) + " pairs i <= j <= " + std::to_string(B);
  };
  std::function<std::size_t(std::size_t)> n = T.doubling;
  if (n) {
    for (std::size_t i = 0; i <= reach; ++i)
      if (n(i) < i || !seg_double_leq(T.segment(i), T.segment(n(i))))
        throw Error(ErrorCode::DoublingUnavailable, "doubling function fails at stage " + std::to_string(i));
  } else {
    const std::size_t window = 64;
    auto search = [&T](std::size_t i) -> std::optional<std::size_t> {
      for (std::size_t j = i; j <= i + window; ++j)
        if (seg_double_leq(T.segment(i), T.segment(j))) return j;
      return std::nullopt;
    };
    for (std::size_t i = 0; i <= reach; ++i)
      if (!search(i))
        throw Error(ErrorCode::DoublingUnavailable, "no stage j <= " + std::to_string(i + window) +
                                                        " has rho_j containing 2 rho_" + std::to_string(i) + " (rho_" +
                                                        std::to_string(i) + "=" + T.segment(i).str() + ")" +
                                                        all_pairs_fail());
    n = [search](std::size_t i) { return *search(i); };
  }
  if (!T.union_norm)
    throw Error(ErrorCode::HypothesisMismatch, "union of the stage norms is not the positive part of a convex subgroup");
  return std::make_shared<LimitHyperfield>(T, n);
}

SumSet triple_sum_resolve(const LimitHyperfield& L, const HyperElem& a, const HyperElem& b, const HyperElem& c) {
  std::vector<HyperElem> xs{a, b, c};
  std::vector<HyperElem> nz;
  GroupElem m = GroupElem::infinity(L.value_rank());
  for (const auto& x : xs) {
    L.check(x);
    if (L.is_zero(x)) continue;
    nz.push_back(x);
    m = std::min(m, L.val(x));
  }
  Floor f{L.norm(), m};
  if (nz.empty()) return SumSet::zero_ball(L.zero(), f);
  if (nz.size() == 1) return SumSet::singleton(nz.front());
  const std::size_t Z = L.decision_stage();
  auto at_stage = [&L, nz](std::size_t j) {
    std::vector<HyperElem> ys;
    for (const auto& x : nz) ys.push_back(L.at(x, j));
    return stage_sum(*L.stage(j), ys);
  };
  if (at_stage(Z).kind == SumSet::Kind::ZeroBall) return SumSet::zero_ball(L.zero(), f);
  const LimitHyperfield* Lp = &L;
  return SumSet::singleton(L.make([Lp, at_stage, Z](std::size_t i) {
    const InitialSegment rho_i = Lp->stage(i)->norm();
    const std::size_t bound = std::max(Lp->doubling(std::max(i, Z)), i + Z) + 2;
    for (std::size_t j = i; j <= bound; ++j) {
      SumSet s = at_stage(j);
      if (s.kind == SumSet::Kind::ZeroBall) continue;
      const HyperElem& w = pick(s);
      if (s.kind == SumSet::Kind::Singleton || floor_leq(Floor{rho_i, Lp->stage(j)->val(w)}, s.floor))
        return Lp->tower().map(j, i, w);
    }
    throw Error(ErrorCode::InsufficientPrecision,
                "sum not determined at stage " + std::to_string(i) + " from stages up to " + std::to_string(bound));
  }));
}

GroupElem limit_val(const LimitHyperfield& L, const HyperElem& a) { return L.val(a); }

GroupElem limit_d(const LimitHyperfield& L, const HyperElem& a, const HyperElem& b) {
  for (std::size_t i = 0; i <= L.budget(); ++i) {
    HyperElem ai = L.at(a, i), bi = L.at(b, i);
    if (!L.stage(i)->eq(ai, bi)) return L.stage(i)->dist(ai, bi);
  }
  const auto& H = *L.stage(L.budget());
  std::string base = L.is_zero(a) ? "inf" : L.val(a).str();
  throw Error(ErrorCode::Undetermined, "distance >= " + H.norm().str() + " + " + base + " (equal through stage " +
                                           std::to_string(L.budget()) + ")");
}

Report limit_factor_iso(const LimitPtr& L, std::size_t i, const Scope& scope) {
  IsometricMap theta;
  theta.source = L;
  theta.target = L->stage(i);
  theta.f = [L, i](const HyperElem& a) { return L->at(a, i); };
  if (L->tower().ground) theta.section = [L, i](const HyperElem& t) { return L->lift(i, t); };
  theta.name = "theta_" + std::to_string(i);
  Report r = check_isometric(theta, scope);
  r.append(induced_iso(theta, scope));
  r.subject = "limit factor at stage " + std::to_string(i) + " of " + L->name();
  return r;
}

Report check_triple_uniqueness(const LimitHyperfield& L, const Scope& scope) {
  Rng rng(scope.seed);
  AxiomTally claim("unique-resolution", scope.seed), member("stage-membership", scope.seed), compat("compatibility", scope.seed);
  const std::size_t B = L.budget();
  for (std::size_t t = 0; t < scope.samples; ++t) {
    HyperElem a = L.sample(rng), b = L.sample(rng), c = L.sample(rng);
    if (t % 3 == 1) {
      SumSet s = L.add(a, b);
      if (s.kind == SumSet::Kind::Singleton) c = L.probe(L.neg(s.witness), Floor{L.norm(), L.val(s.witness)}, rng);
    }
    if (t % 3 == 2) b = L.neg(a);
    try {
      SumSet s = triple_sum_resolve(L, a, b, c);
      if (s.kind != SumSet::Kind::Singleton) continue;
      const HyperElem& l = s.witness;
      std::string trip = L.show(a) + ", " + L.show(b) + ", " + L.show(c);
      for (std::size_t i = 0; i <= B; ++i) {
        const auto& Hi = *L.stage(i);
        HyperElem li = L.at(l, i);
        SumSet si = stage_sum(Hi, {L.at(a, i), L.at(b, i), L.at(c, i)});
        member.check(Hi.contains(si, li), [&] { return "l_" + std::to_string(i) + " outside the stage sum of " + trip; });
        if (si.kind == SumSet::Kind::ZeroBall) continue;
        std::size_t n = L.doubling(i);
        const auto& Hn = *L.stage(n);
        SumSet sn = stage_sum(Hn, {L.at(a, n), L.at(b, n), L.at(c, n)});
        for (const auto& x : members_for_probe(Hn, sn, rng, scope.probes)) {
          HyperElem p = L.tower().map(n, i, x);
          claim.check(Hi.eq(p, li), [&] { return "stage " + std::to_string(n) + " member " + Hn.show(x) + " projects to " +
                                        Hi.show(p) + " not " + Hi.show(li) + " for " + trip; });
        }
      }
      compat.trial();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Incompatible) throw;
      compat.check(false, [&] { return e.what(); });
    }
  }
  return {"triple sums of " + L.name(), {claim.done(), member.done(), compat.done()}};
}

Report check_limit_associativity(const LimitHyperfield& L, const Scope& scope) {
  Rng rng(scope.seed);
  std::map<std::string, AxiomTally> tallies;
  for (const char* k : {"assoc-case1.1", "assoc-case1.2", "assoc-case2"}) tallies.emplace(k, AxiomTally(k, scope.seed));
  const GroupElem big = GroupElem::unit(L.value_rank(), 0);
  for (std::size_t t = 0; t < scope.samples; ++t) {
    HyperElem a = L.sample(rng), b = L.sample(rng), c = L.sample(rng);
    if (t % 3 == 1) {
      SumSet s = L.add(a, b);
      c = s.kind == SumSet::Kind::Singleton ? L.neg(s.witness) : L.zero();
    } else if (t % 3 == 2 && !L.is_zero(b)) {
      c = L.neg(b);
      a = L.mul(L.mul(b, L.monomial(big)), L.sample(rng));
    }
    std::string cs;
    if (triple_sum_resolve(L, a, b, c).kind == SumSet::Kind::ZeroBall) {
      GroupElem mbc = std::min(L.val(b), L.val(c));
      cs = gt_segment(L.val(a), L.norm(), mbc) ? "assoc-case1.1" : "assoc-case1.2";
    } else {
      cs = "assoc-case2";
    }
    auto& tally = tallies.at(cs);
    std::string trip = L.show(a) + ", " + L.show(b) + ", " + L.show(c);
    SumSet ab = L.add(a, b), bc = L.add(b, c);
    for (const auto& l : members_for_probe(L, ab, rng, 1))
      for (const auto& z : members_for_probe(L, L.add(l, c), rng, 1))
        tally.check(intersects(L, L.add(z, L.neg(a)), bc), [&] { return "(a+b)+c member " + L.show(z) + " outside a+(b+c) for " + trip; });
    for (const auto& l : members_for_probe(L, bc, rng, 1))
      for (const auto& z : members_for_probe(L, L.add(a, l), rng, 1))
        tally.check(intersects(L, L.add(z, L.neg(c)), ab), [&] { return "a+(b+c) member " + L.show(z) + " outside (a+b)+c for " + trip; });
  }
  Report r{"associativity of " + L.name(), {}};
  for (auto& [k, v] : tallies) r.results.push_back(v.done());
  return r;
}

const char* verdict_name(EmptinessReport::Verdict v) {
  switch (v) {
    case EmptinessReport::Verdict::Empty: return "empty";
    case EmptinessReport::Verdict::Nonempty: return "nonempty";
    case EmptinessReport::Verdict::Inconclusive: return "inconclusive";
  }
  return "";
}

nlohmann::ordered_json EmptinessReport::to_json() const {
  return {{"verdict", verdict_name(verdict)}, {"m_max", m_max}, {"witness", witness}};
}

EmptinessReport detect_empty_sum(const Tower& T, const std::function<HyperElem(std::size_t)>& a,
                                 const std::function<HyperElem(std::size_t)>& b, std::size_t m_max,
                                 std::uint64_t seed) {
  EmptinessReport r;
  r.m_max = m_max;
  if (m_max == 0) {
    r.witness = "a single stage imposes no compatibility constraint";
    return r;
  }
  std::vector<SumSet> S;
  for (std::size_t m = 0; m <= m_max; ++m) S.push_back(stage_sum(*T.stage(m), {a(m), b(m)}));
  const Hyperfield& Top = *T.stage(m_max);
  const SumSet& top = S.back();
  std::vector<HyperElem> cands;
  bool exhaustive = true;
  if (top.kind == SumSet::Kind::Singleton) {
    cands = {top.witness};
  } else if (top.kind == SumSet::Kind::Enumerated) {
    cands = top.elems;
  } else {
    Rng rng(seed);
    cands = members_for_probe(Top, top, rng, 16);
    exhaustive = false;
  }
  std::string first_failure;
  for (const auto& c : cands) {
    std::string chain = "c_" + std::to_string(m_max) + "=" + Top.show(c);
    bool ok = true;
    for (std::size_t m = m_max; m-- > 0;) {
      const Hyperfield& Hm = *T.stage(m);
      HyperElem p = T.map(m_max, m, c);
      if (!Hm.contains(S[m], p)) {
        ok = false;
        if (first_failure.empty())
          first_failure = "a_" + std::to_string(m_max) + "+b_" + std::to_string(m_max) + "=" + Top.show_set(top) +
                          "; theta_" + pair_str(m_max, m) + "(" + Top.show(c) + ")=" + Hm.show(p) + " is not in a_" +
                          std::to_string(m) + "+b_" + std::to_string(m) + "=" + Hm.show_set(S[m]);
        break;
      }
      chain += ", c_" + std::to_string(m) + "=" + Hm.show(p);
    }
    if (ok) {
      r.verdict = EmptinessReport::Verdict::Nonempty;
      r.witness = chain;
      return r;
    }
  }
  r.verdict = exhaustive ? EmptinessReport::Verdict::Empty : EmptinessReport::Verdict::Inconclusive;
  r.witness = first_failure;
  for (std::size_t m = 0; m < m_max; ++m)
    if (!T.stage(m)->eq(T.map(m + 1, m, a(m + 1)), a(m))) {
      r.witness += "; the stage choices of a are not compatible at " + pair_str(m + 1, m);
      break;
    }
  return r;
}

EmptinessReport detect_empty_sum_geometric_pair(const Tower& T, std::size_t m_max) {
  if (!T.ground || T.rank != 2) throw Error(ErrorCode::Usage, "the geometric pair lives in a rank-2 canonical tower");
  const BaseField F = T.ground->F;
  auto geometric = [F](std::size_t m, std::int64_t ylevel) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i <= m; ++i) ts.push_back({GroupElem{ylevel, static_cast<std::int64_t>(i)}, mpq_class(1)});
    return FieldSeries::from_terms(F, 2, ts);
  };
  auto a = [&T, geometric](std::size_t m) { return as_quotient(T.stage(m))->theta(geometric(m, 0)); };
  auto b = [&T, geometric](std::size_t m) { return as_quotient(T.stage(m))->theta(geometric(m, 1)); };
  return detect_empty_sum(T, a, b, m_max);
}

}  // namespace hv
