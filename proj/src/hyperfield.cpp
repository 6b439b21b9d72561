#include "hyperval/hyperfield.hpp"

#include "hyperval/errors.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

namespace hv {

namespace {
std::atomic<std::uint64_t> next_id{1};
}

SumSet SumSet::enumerated(std::vector<HyperElem> es) {
  if (es.empty()) return empty();
  if (es.size() == 1) return singleton(std::move(es.front()));
  SumSet s;
  s.kind = Kind::Enumerated;
  s.witness = es.front();
  s.elems = std::move(es);
  return s;
}

Hyperfield::Hyperfield() : id_(next_id.fetch_add(1)) {}

bool Hyperfield::member_def(const HyperElem& x, const HyperElem& y, const HyperElem& z) const {
  return contains(add(x, y), z);
}

std::vector<HyperElem> Hyperfield::carrier() const {
  throw Error(ErrorCode::NotEnumerable, name() + " has no finite carrier");
}

GroupElem Hyperfield::val(const HyperElem&) const {
  throw Error(ErrorCode::Unsupported, name() + " carries no valuation");
}

InitialSegment Hyperfield::norm() const {
  throw Error(ErrorCode::Unsupported, name() + " carries no valuation");
}

GroupElem Hyperfield::dist(const HyperElem& a, const HyperElem& b) const {
  if (eq(a, b)) return GroupElem::infinity(value_rank());
  SumSet s = add(a, neg(b));
  if (s.kind == SumSet::Kind::Empty) throw Error(ErrorCode::Precondition, "empty difference");
  const HyperElem& w = s.kind == SumSet::Kind::Enumerated ? s.elems.front() : s.witness;
  return val(w);
}

bool Hyperfield::ball_is_point(const HyperElem&, const Floor&) const { return false; }

HyperElem Hyperfield::monomial(const GroupElem&) const {
  throw Error(ErrorCode::Unsupported, name() + " has no monomials");
}

HyperElem Hyperfield::sample(Rng& rng) const {
  auto c = carrier();
  return c[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(c.size()) - 1))];
}

HyperElem Hyperfield::probe(const HyperElem&, const Floor&, Rng& rng) const { return sample(rng); }

void Hyperfield::check(const HyperElem& a) const {
  if (a.parent != id_)
    throw Error(ErrorCode::ElementsFromDifferentHandles, "element does not belong to " + name());
}

bool Hyperfield::contains(const SumSet& s, const HyperElem& z) const {
  switch (s.kind) {
    case SumSet::Kind::Empty: return false;
    case SumSet::Kind::Singleton: return eq(s.witness, z);
    case SumSet::Kind::Ball: return eq(s.witness, z) || s.floor.exceeded_by(dist(z, s.witness));
    case SumSet::Kind::ZeroBall: return is_zero(z) || s.floor.exceeded_by(val(z));
    case SumSet::Kind::Enumerated:
      return std::any_of(s.elems.begin(), s.elems.end(), [&](const HyperElem& e) { return eq(e, z); });
  }
  return false;
}

std::string Hyperfield::show_set(const SumSet& s) const {
  switch (s.kind) {
    case SumSet::Kind::Empty: return "{}";
    case SumSet::Kind::Singleton: return "{" + show(s.witness) + "}";
    case SumSet::Kind::Ball: return "ball(" + show(s.witness) + "; >" + s.floor.str() + ")";
    case SumSet::Kind::ZeroBall: return "zeroball(>" + s.floor.str() + ")";
    case SumSet::Kind::Enumerated: {
      std::string r = "{";
      for (std::size_t i = 0; i < s.elems.size(); ++i) r += (i ? "," : "") + show(s.elems[i]);
      return r + "}";
    }
  }
  return "";
}

SetVal set_val(const Hyperfield& H, const SumSet& s) {
  SetVal v;
  switch (s.kind) {
    case SumSet::Kind::Empty: break;
    case SumSet::Kind::Singleton: v.values.push_back(H.val(s.witness)); break;
    case SumSet::Kind::Ball: {
      GroupElem g = H.val(s.witness);
      if (s.floor.exceeded_by(g)) {
        v.upset = true;
        v.floor = s.floor;
      } else {
        v.values.push_back(g);
      }
      break;
    }
    case SumSet::Kind::ZeroBall:
      v.upset = true;
      v.floor = s.floor;
      break;
    case SumSet::Kind::Enumerated:
      for (const auto& e : s.elems) {
        GroupElem g = H.val(e);
        if (std::find(v.values.begin(), v.values.end(), g) == v.values.end()) v.values.push_back(g);
      }
      break;
  }
  return v;
}

bool all_values_exceed(const SetVal& v, const Floor& f) {
  if (v.upset) return floor_leq(f, v.floor);
  return std::all_of(v.values.begin(), v.values.end(), [&](const GroupElem& g) { return f.exceeded_by(g); });
}

namespace {

bool enumerable(const SumSet& s) {
  return s.kind == SumSet::Kind::Empty || s.kind == SumSet::Kind::Singleton ||
         s.kind == SumSet::Kind::Enumerated;
}

std::vector<HyperElem> listed(const SumSet& s) {
  if (s.kind == SumSet::Kind::Singleton) return {s.witness};
  if (s.kind == SumSet::Kind::Enumerated) return s.elems;
  if (s.kind == SumSet::Kind::Empty) return {};
  throw Error(ErrorCode::NotEnumerable, "ball-valued sum cannot be listed");
}

HyperElem center(const Hyperfield& H, const SumSet& s) {
  if (s.kind == SumSet::Kind::ZeroBall) return H.zero();
  return s.witness;
}

void push_unique(const Hyperfield& H, std::vector<HyperElem>& out, const HyperElem& e) {
  for (const auto& o : out)
    if (H.eq(o, e)) return;
  out.push_back(e);
}

bool same_set(const Hyperfield& H, const std::vector<HyperElem>& a, const std::vector<HyperElem>& b) {
  auto sub = [&](const std::vector<HyperElem>& p, const std::vector<HyperElem>& q) {
    return std::all_of(p.begin(), p.end(), [&](const HyperElem& e) {
      return std::any_of(q.begin(), q.end(), [&](const HyperElem& f) { return H.eq(e, f); });
    });
  };
  return sub(a, b) && sub(b, a);
}

}  // namespace

bool intersects(const Hyperfield& H, const SumSet& a, const SumSet& b) {
  if (a.kind == SumSet::Kind::Empty || b.kind == SumSet::Kind::Empty) return false;
  if (enumerable(a)) {
    for (const auto& e : listed(a))
      if (H.contains(b, e)) return true;
    return false;
  }
  if (enumerable(b)) return intersects(H, b, a);
  return H.contains(b, center(H, a)) || H.contains(a, center(H, b));
}

bool sumset_equal(const Hyperfield& H, const SumSet& a, const SumSet& b) {
  if (enumerable(a) && enumerable(b)) return same_set(H, listed(a), listed(b));
  if (enumerable(a) || enumerable(b)) {
    const SumSet& e = enumerable(a) ? a : b;
    const SumSet& r = enumerable(a) ? b : a;
    if (e.kind != SumSet::Kind::Singleton) return false;
    HyperElem c = center(H, r);
    return H.eq(c, e.witness) && H.ball_is_point(c, r.floor);
  }
  return floor_leq(a.floor, b.floor) && floor_leq(b.floor, a.floor) && intersects(H, a, b);
}

SumSet scale(const Hyperfield& H, const HyperElem& x, const SumSet& s) {
  if (s.kind == SumSet::Kind::Empty) return s;
  if (H.is_zero(x)) return SumSet::singleton(H.zero());
  switch (s.kind) {
    case SumSet::Kind::Singleton: return SumSet::singleton(H.mul(x, s.witness));
    case SumSet::Kind::Enumerated: {
      std::vector<HyperElem> out;
      for (const auto& e : s.elems) push_unique(H, out, H.mul(x, e));
      return SumSet::enumerated(std::move(out));
    }
    case SumSet::Kind::Ball:
      return SumSet::ball(H.mul(x, s.witness), Floor{s.floor.rho, s.floor.base + H.val(x)});
    case SumSet::Kind::ZeroBall:
      return SumSet::zero_ball(H.zero(), Floor{s.floor.rho, s.floor.base + H.val(x)});
    default: return s;
  }
}

std::vector<HyperElem> members_for_probe(const Hyperfield& H, const SumSet& s, Rng& rng, std::size_t probes) {
  if (enumerable(s)) return listed(s);
  HyperElem c = center(H, s);
  std::vector<HyperElem> out{c};
  for (std::size_t i = 0; i < probes; ++i) {
    HyperElem p = H.probe(c, s.floor, rng);
    if (H.contains(s, p)) out.push_back(p);
  }
  return out;
}

SumSet hypersum(const Hyperfield& H, const HyperElem& x, const HyperElem& y) {
  H.check(x);
  H.check(y);
  return H.add(x, y);
}

std::vector<HyperElem> setwise_sum(const Hyperfield& H, const std::vector<HyperElem>& A,
                                   const std::vector<HyperElem>& B) {
  std::vector<HyperElem> out;
  for (const auto& a : A) {
    for (const auto& b : B) {
      SumSet s = hypersum(H, a, b);
      if (!enumerable(s)) throw Error(ErrorCode::NotEnumerable, "sum " + H.show_set(s) + " is a ball");
      for (const auto& e : listed(s)) push_unique(H, out, e);
    }
  }
  return out;
}

SumSet nary_sum(const Hyperfield& H, const std::vector<HyperElem>& xs) {
  if (xs.size() < 2) throw Error(ErrorCode::Precondition, "n-ary sum needs at least two summands");
  for (const auto& x : xs) H.check(x);
  if (H.finite()) {
    std::vector<HyperElem> acc{xs.front()};
    for (std::size_t i = 1; i < xs.size(); ++i) acc = setwise_sum(H, acc, {xs[i]});
    return SumSet::enumerated(std::move(acc));
  }
  if (!H.valued()) throw Error(ErrorCode::Unsupported, "n-ary sum needs a valued or finite handle");
  HyperElem w = center(H, H.add(xs[0], xs[1]));
  for (std::size_t i = 2; i < xs.size(); ++i) w = center(H, H.add(w, xs[i]));
  GroupElem m = H.val(xs[0]);
  for (const auto& x : xs) m = std::min(m, H.val(x));
  Floor f{H.norm(), m};
  if (H.is_zero(w) || f.exceeded_by(H.val(w))) return SumSet::zero_ball(H.zero(), f);
  if (H.ball_is_point(w, f)) return SumSet::singleton(w);
  return SumSet::ball(w, f);
}

GroupElem ultrametric_d(const Hyperfield& H, const HyperElem& x, const HyperElem& y) {
  H.check(x);
  H.check(y);
  return H.dist(x, y);
}

namespace {

using Triple = std::function<void(const HyperElem&, const HyperElem&, const HyperElem&)>;

HyperElem related(const Hyperfield& H, const HyperElem& x, Rng& rng) {
  switch (rng.uniform(0, 5)) {
    case 0: return H.neg(x);
    case 1: return x;
    case 2:
      if (H.valued() && !H.is_zero(x)) return H.probe(H.neg(x), Floor{H.norm(), H.val(x)}, rng);
      return H.sample(rng);
    default: return H.sample(rng);
  }
}

void for_triples(const Hyperfield& H, const Scope& scope, const Triple& f) {
  if (scope.exhaustive) {
    auto c = H.carrier();
    for (const auto& x : c)
      for (const auto& y : c)
        for (const auto& z : c) f(x, y, z);
    return;
  }
  Rng rng(scope.seed);
  for (std::size_t i = 0; i < scope.samples; ++i) {
    HyperElem x = H.sample(rng);
    HyperElem y = related(H, x, rng);
    HyperElem z = rng.chance(1, 3) ? related(H, y, rng) : H.sample(rng);
    f(x, y, z);
  }
}

std::string tri(const Hyperfield& H, const HyperElem& x, const HyperElem& y, const HyperElem& z) {
  return "x=" + H.show(x) + ", y=" + H.show(y) + ", z=" + H.show(z);
}

std::vector<HyperElem> candidates(const Hyperfield& H, const Scope& scope, const std::vector<HyperElem>& near,
                                  const Floor& floor, Rng& rng) {
  if (scope.exhaustive) return H.carrier();
  std::vector<HyperElem> out = near;
  for (const auto& c : near) {
    for (std::size_t i = 0; i < scope.probes; ++i) out.push_back(H.probe(c, floor, rng));
  }
  out.push_back(H.sample(rng));
  return out;
}

}  // namespace

Report check_canonical_hypergroup(const Hyperfield& H, const Scope& scope) {
  Report rep{H.name(), {}};
  const std::uint64_t seed = scope.exhaustive ? 0 : scope.seed;
  AxiomTally ch1("CH1", seed), ch2("CH2", seed), ch3("CH3", seed), ch4("CH4", seed);
  Rng rng(scope.seed ^ 0x9e3779b97f4a7c15ULL);
  const bool fin = H.finite();
  const HyperElem zero = H.zero();
  for_triples(H, scope, [&](const HyperElem& x, const HyperElem& y, const HyperElem& z) {
    SumSet xy = H.add(x, y), yz = H.add(y, z);
    if (!ch1.failed()) {
      if (fin) {
        auto left = setwise_sum(H, listed(xy), {z});
        auto right = setwise_sum(H, {x}, listed(yz));
        ch1.check(same_set(H, left, right), [&] { return tri(H, x, y, z); });
      } else {
        std::vector<HyperElem> ps{H.sample(rng)};
        for (auto& m : members_for_probe(H, H.add(center(H, xy), z), rng, scope.probes)) ps.push_back(m);
        for (auto& m : members_for_probe(H, H.add(x, center(H, yz)), rng, scope.probes)) ps.push_back(m);
        bool ok = true;
        std::string bad;
        for (const auto& p : ps) {
          bool in_left = intersects(H, xy, H.add(p, H.neg(z)));
          bool in_right = intersects(H, yz, H.add(p, H.neg(x)));
          if (in_left != in_right) {
            ok = false;
            bad = tri(H, x, y, z) + ", p=" + H.show(p);
            break;
          }
        }
        ch1.check(ok, bad);
      }
    }
    ch2.check(sumset_equal(H, xy, H.add(y, x)), [&] { return "x=" + H.show(x) + ", y=" + H.show(y); });
    {
      bool ok = sumset_equal(H, H.add(zero, x), SumSet::singleton(x)) && H.contains(H.add(x, H.neg(x)), zero);
      if (ok && !H.eq(y, H.neg(x))) ok = !H.contains(xy, zero);
      ch3.check(ok, [&] { return "x=" + H.show(x) + ", y=" + H.show(y); });
    }
    {
      bool ok = true;
      std::string bad;
      for (const auto& m : members_for_probe(H, xy, rng, scope.probes)) {
        if (!H.contains(H.add(m, H.neg(y)), x)) {
          ok = false;
          bad = "x=" + H.show(x) + ", y=" + H.show(y) + ", z=" + H.show(m);
          break;
        }
      }
      ch4.check(ok, bad);
    }
  });
  rep.results = {ch1.done(), ch2.done(), ch3.done(), ch4.done()};
  return rep;
}

Report check_hyperfield(const Hyperfield& H, const Scope& scope) {
  Report ch = check_canonical_hypergroup(H, scope);
  Report rep{H.name(), {}};
  const std::uint64_t seed = scope.exhaustive ? 0 : scope.seed;
  AxiomTally hf1("HF1", seed), hf2("HF2", seed), hf3("HF3", seed), dd("HF3-double", seed);
  hf1.trial();
  for (const auto& r : ch.results)
    hf1.check(r.status != Status::Fail, [&] { return r.axiom + " fails: " + r.witness.value_or(""); });
  const HyperElem zero = H.zero(), one = H.one();
  for_triples(H, scope, [&](const HyperElem& x, const HyperElem& y, const HyperElem& z) {
    bool ok = H.eq(H.mul(zero, x), zero) && H.eq(H.mul(one, x), x) && H.eq(H.mul(x, y), H.mul(y, x)) &&
              H.eq(H.mul(H.mul(x, y), z), H.mul(x, H.mul(y, z)));
    if (!H.is_zero(x)) ok = ok && H.eq(H.mul(x, H.inv(x)), one);
    if (!H.is_zero(x) && !H.is_zero(y)) ok = ok && !H.is_zero(H.mul(x, y));
    hf2.check(ok, [&] { return tri(H, x, y, z); });
    hf3.check(sumset_equal(H, scale(H, x, H.add(y, z)), H.add(H.mul(x, y), H.mul(x, z))), [&] { return tri(H, x, y, z); });
  });
  if (H.finite()) {
    auto c = H.carrier();
    for (const auto& a : c)
      for (const auto& b : c)
        for (const auto& x : c)
          for (const auto& d : c) {
            std::vector<HyperElem> lhs;
            for (const auto& s : listed(H.add(a, b)))
              for (const auto& t : listed(H.add(x, d))) push_unique(H, lhs, H.mul(s, t));
            auto rhs = setwise_sum(H, setwise_sum(H, setwise_sum(H, {H.mul(a, x)}, {H.mul(a, d)}), {H.mul(b, x)}),
                                   {H.mul(b, d)});
            bool ok = std::all_of(lhs.begin(), lhs.end(), [&](const HyperElem& e) {
              return std::any_of(rhs.begin(), rhs.end(), [&](const HyperElem& f) { return H.eq(e, f); });
            });
            dd.check(ok, [&] { return "a=" + H.show(a) + ", b=" + H.show(b) + ", c=" + H.show(x) + ", d=" + H.show(d); });
          }
  } else {
    dd.skip("ball-valued sums");
  }
  rep.results = ch.results;
  rep.results.push_back(hf1.done());
  rep.results.push_back(hf2.done());
  rep.results.push_back(hf3.done());
  rep.results.push_back(dd.done());
  return rep;
}

Report check_valuation(const Hyperfield& H, const Scope& scope) {
  Report rep{H.name(), {}};
  const std::uint64_t seed = scope.exhaustive ? 0 : scope.seed;
  AxiomTally v0("V0", seed), v1("V1", seed), v2("V2", seed), v3("V3", seed), v4("V4", seed);
  if (!H.valued()) {
    for (auto* t : {&v0, &v1, &v2, &v3, &v4}) t->skip("no valuation");
    rep.results = {v0.done(), v1.done(), v2.done(), v3.done(), v4.done()};
    return rep;
  }
  Rng rng(scope.seed ^ 0x51ed270b3a9f1c27ULL);
  const InitialSegment rho = H.norm();
  const HyperElem zero = H.zero();
  for_triples(H, scope, [&](const HyperElem& x, const HyperElem& y, const HyperElem& z) {
    (void)z;
    GroupElem vx = H.val(x), vy = H.val(y);
    v0.check(vx.is_inf() == H.is_zero(x), [&] { return "x=" + H.show(x) + ", v(x)=" + vx.str(); });
    v1.check(H.val(H.mul(x, y)) == vx + vy, [&] { return "x=" + H.show(x) + ", y=" + H.show(y); });
    GroupElem m = std::min(vx, vy);
    SumSet s = H.add(x, y);
    auto members = members_for_probe(H, s, rng, scope.exhaustive ? 0 : 2);
    {
      bool ok = true;
      std::string bad;
      for (const auto& w : members)
        if (H.val(w) < m) {
          ok = false;
          bad = "x=" + H.show(x) + ", y=" + H.show(y) + ", z=" + H.show(w);
        }
      v2.check(ok, bad);
    }
    if (!H.contains(s, zero)) {
      SetVal sv = set_val(H, s);
      bool ok = !sv.upset && sv.values.size() == 1;
      for (const auto& w : members) ok = ok && H.val(w) == sv.values.front();
      v3.check(ok, [&] { return "x=" + H.show(x) + ", y=" + H.show(y) + ", sum=" + H.show_set(s); });
    } else {
      v3.trial();
    }
    Floor f{rho, m};
    auto zs = members;
    if (!scope.exhaustive && zs.size() > 2) zs.resize(2);
    for (const auto& w : zs) {
      if (v4.failed()) break;
      if (!H.member_def(x, y, w)) {
        v4.check(false, [&] { return "sum member z=" + H.show(w) + " of x=" + H.show(x) + ", y=" + H.show(y) +
                            " fails the defining predicate"; });
        break;
      }
      for (const auto& w2 : candidates(H, scope, {w}, f, rng)) {
        if (H.eq(w, w2)) continue;
        bool lhs = H.member_def(x, y, w2);
        bool rhs = all_values_exceed(set_val(H, H.add(w, H.neg(w2))), f);
        std::string why = lhs ? H.show(x) + "+" + H.show(y) + " ⊇ {" + H.show(w) + "," + H.show(w2) + "}"
                              : "z=" + H.show(w) + " in " + H.show(x) + "+" + H.show(y) + ", z'=" + H.show(w2) +
                                    " within the norm ball but not in the sum";
        v4.check(lhs == rhs, why);
        if (v4.failed()) break;
      }
    }
  });
  rep.results = {v0.done(), v1.done(), v2.done(), v3.done(), v4.done()};
  return rep;
}

Report check_val_lemma(const Hyperfield& H, const Scope& scope) {
  Report rep{H.name(), {}};
  const std::uint64_t seed = scope.exhaustive ? 0 : scope.seed;
  AxiomTally l1("lemma-i", seed), l2("lemma-ii", seed), l3("lemma-iii", seed), l4("lemma-iv", seed),
      ls("sum-singleton", seed);
  if (!H.valued()) {
    for (auto* t : {&l1, &l2, &l3, &l4, &ls}) t->skip("no valuation on " + H.name());
    rep.results = {l1.done(), l2.done(), l3.done(), l4.done(), ls.done()};
    return rep;
  }
  Rng rng(scope.seed ^ 0x2545f4914f6cdd1dULL);
  const HyperElem one = H.one();
  const GroupElem z0 = GroupElem::zero(H.value_rank());
  l1.check(H.val(one) == z0 && H.val(H.neg(one)) == z0, [&] { return "v(1)=" + H.val(one).str() + ", v(-1)=" +
                                                            H.val(H.neg(one)).str(); });
  for_triples(H, scope, [&](const HyperElem& x, const HyperElem& y, const HyperElem&) {
    GroupElem vx = H.val(x), vy = H.val(y);
    l2.check(H.val(H.neg(x)) == vx, [&] { return "x=" + H.show(x); });
    if (!H.is_zero(x)) l3.check(H.val(H.inv(x)) == -vx, [&] { return "x=" + H.show(x); });
    SumSet s = H.add(x, y);
    if (vx != vy) {
      bool ok = true;
      for (const auto& w : members_for_probe(H, s, rng, scope.exhaustive ? 0 : 2))
        ok = ok && H.val(w) == std::min(vx, vy);
      l4.check(ok, [&] { return "x=" + H.show(x) + ", y=" + H.show(y); });
    }
    std::vector<HyperElem> ys{y};
    if (!scope.exhaustive && !H.is_zero(x)) ys.push_back(H.probe(H.zero(), Floor{H.norm(), vx}, rng));
    for (const auto& yy : ys) {
      SumSet t = H.add(x, yy);
      if (H.contains(t, x)) ls.check(sumset_equal(H, t, SumSet::singleton(x)), [&] { return "x=" + H.show(x) + ", y=" + H.show(yy); });
    }
  });
  rep.results = {l1.done(), l2.done(), l3.done(), l4.done(), ls.done()};
  return rep;
}

}  // namespace hv
