#include "hyperval/rvsort.hpp"

#include "hyperval/errors.hpp"
#include "hyperval/quotient.hpp"

#include <algorithm>
#include <numeric>

namespace hv {

std::string SequenceStructure::name() const {
  return F.name() + ",Z" + (rank == 1 ? "" : "^" + std::to_string(rank));
}

const RVElem& RVHyperfield::rep(const HyperElem& a) const {
  check(a);
  return std::get<RVElem>(a.p);
}

HyperElem RVHyperfield::make(const mpq_class& f, const GroupElem& g) const {
  mpq_class c = s_.F.norm(f);
  if (c == 0) return zero();
  if (g.is_inf() || g.rank() != s_.rank) throw Error(ErrorCode::Precondition, "value " + g.str() + " has the wrong rank");
  return adopt(RVElem{false, c, g});
}

HyperElem RVHyperfield::parse(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s == "0") return zero();
  auto semi = s.find(';');
  if (s.size() < 3 || s.front() != '(' || s.back() != ')' || semi == std::string::npos)
    throw Error(ErrorCode::Syntax, "expected (f; g) or 0, got '" + std::string(text) + "'");
  mpq_class f;
  try {
    f = mpq_class(s.substr(1, semi - 1));
    f.canonicalize();
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::Syntax, "bad coefficient in '" + std::string(text) + "'", 1);
  }
  GroupElem g = parse_group_elem(s.substr(semi + 1, s.size() - semi - 2));
  return make(f, g);
}

HyperElem RVHyperfield::zero() const { return adopt(RVElem{}); }

HyperElem RVHyperfield::one() const { return make(1, GroupElem::zero(s_.rank)); }

HyperElem RVHyperfield::mul(const HyperElem& a, const HyperElem& b) const {
  const RVElem &x = rep(a), &y = rep(b);
  if (x.zero || y.zero) return zero();
  return make(s_.F.mul(x.f, y.f), x.g + y.g);
}

HyperElem RVHyperfield::inv(const HyperElem& a) const {
  const RVElem& x = rep(a);
  if (x.zero) throw Error(ErrorCode::ZeroDivision, "inverse of 0");
  return make(s_.F.inv(x.f), -x.g);
}

HyperElem RVHyperfield::neg(const HyperElem& a) const {
  const RVElem& x = rep(a);
  if (x.zero) return a;
  return make(s_.F.neg(x.f), x.g);
}

bool RVHyperfield::eq(const HyperElem& a, const HyperElem& b) const {
  const RVElem &x = rep(a), &y = rep(b);
  if (x.zero || y.zero) return x.zero == y.zero;
  return x.f == y.f && x.g == y.g;
}

SumSet RVHyperfield::add(const HyperElem& a, const HyperElem& b) const {
  const RVElem &x = rep(a), &y = rep(b);
  if (x.zero) return SumSet::singleton(b);
  if (y.zero) return SumSet::singleton(a);
  if (x.g < y.g) return SumSet::singleton(a);
  if (y.g < x.g) return SumSet::singleton(b);
  mpq_class s = s_.F.add(x.f, y.f);
  if (s == 0) return SumSet::zero_ball(zero(), Floor{norm(), x.g});
  return SumSet::singleton(make(s, x.g));
}

bool RVHyperfield::member_def(const HyperElem& a, const HyperElem& b, const HyperElem& c) const {
  const RVElem &x = rep(a), &y = rep(b), &z = rep(c);
  if (x.zero) return eq(c, b);
  if (y.zero) return eq(c, a);
  if (!(x.g == y.g)) return eq(c, x.g < y.g ? a : b);
  mpq_class s = s_.F.add(x.f, y.f);
  if (s != 0) return !z.zero && z.f == s && z.g == x.g;
  return z.zero || z.g > x.g;
}

GroupElem RVHyperfield::val(const HyperElem& a) const {
  const RVElem& x = rep(a);
  return x.zero ? GroupElem::infinity(s_.rank) : x.g;
}

bool RVHyperfield::ball_is_point(const HyperElem& w, const Floor& floor) const {
  return floor_leq(Floor{norm(), val(w)}, floor);
}

HyperElem RVHyperfield::sample(Rng& rng) const {
  if (rng.chance(1, 10)) return zero();
  GroupElem::Coords c(s_.rank, 0);
  for (auto& v : c) v = rng.uniform(-3, 3);
  return make(s_.F.random_nonzero(rng), GroupElem(c));
}

HyperElem RVHyperfield::probe(const HyperElem&, const Floor& floor, Rng& rng) const {
  auto es = boundary_exponents(floor, s_.rank, rng);
  if (es.empty()) return sample(rng);
  const GroupElem& e = es[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(es.size()) - 1))];
  return make(s_.F.random_nonzero(rng), e);
}

std::string RVHyperfield::show(const HyperElem& a) const {
  const RVElem& x = rep(a);
  if (x.zero) return "0";
  std::string g = x.g.rank() == 1 ? std::to_string(x.g[0]) : x.g.str();
  return "(" + s_.F.str(x.f) + "; " + g + ")";
}

HyperElem RVSort::sample_with_value(Rng& rng, const GroupElem& g) const {
  const Hyperfield& H = hyper();
  HyperElem a = H.sample(rng);
  while (H.is_zero(a)) a = H.sample(rng);
  HyperElem unit = H.mul(a, H.inv(H.monomial(H.val(a))));
  return H.mul(unit, H.monomial(g.padded(H.value_rank())));
}

SplitSort::SplitSort(SequenceStructure S) : h_(std::make_shared<RVHyperfield>(S)) {}

HyperElem SplitSort::oplus(const HyperElem& a, const HyperElem& b) const {
  const RVElem &x = h_->rep(a), &y = h_->rep(b);
  if (x.zero) return b;
  if (y.zero) return a;
  if (x.g < y.g) return a;
  if (y.g < x.g) return b;
  return h_->make(h_->structure().F.add(x.f, y.f), x.g);
}

HyperElem SplitSort::sample_with_value(Rng& rng, const GroupElem& g) const {
  return h_->make(h_->structure().F.random_nonzero(rng), g);
}

HyperfieldSort::HyperfieldSort(HandlePtr L, ConvexSubgroup delta) : L_(std::move(L)), d_(delta) {
  if (!L_->valued()) throw Error(ErrorCode::Unsupported, L_->name() + " carries no valuation");
  if (d_.n != L_->value_rank() || d_.k > d_.n) throw Error(ErrorCode::Usage, "convex subgroup rank mismatch");
}

HyperElem HyperfieldSort::oplus(const HyperElem& a, const HyperElem& b) const {
  SumSet s = L_->add(a, b);
  switch (s.kind) {
    case SumSet::Kind::Singleton: return s.witness;
    case SumSet::Kind::ZeroBall: return L_->zero();
    case SumSet::Kind::Enumerated:
      if (L_->contains(s, L_->zero())) return L_->zero();
      break;
    default: break;
  }
  throw Error(ErrorCode::NotStringent, L_->show(a) + "+" + L_->show(b) + " = " + L_->show_set(s));
}

GroupElem HyperfieldSort::nu(const HyperElem& a) const {
  if (L_->is_zero(a)) return GroupElem::infinity(nu_rank());
  return quotient_map(L_->val(a), d_);
}

HyperElem TableSort::oplus(const HyperElem& a, const HyperElem& b) const {
  SumSet s = H_->add(a, b);
  if (s.kind == SumSet::Kind::Singleton) return s.witness;
  if (H_->contains(s, a)) return a;
  if (H_->contains(s, b)) return b;
  if (H_->contains(s, H_->zero())) return H_->zero();
  return s.elems.front();
}

GroupElem TableSort::nu(const HyperElem& a) const {
  return H_->is_zero(a) ? GroupElem::infinity(0) : GroupElem::zero(0);
}

HyperElem TableSort::sample_with_value(Rng& rng, const GroupElem&) const {
  HyperElem a = H_->sample(rng);
  while (H_->is_zero(a)) a = H_->sample(rng);
  return a;
}

namespace {

bool in_field(const RVSort& R, const HyperElem& r) {
  if (R.is_zero(r)) return false;
  HyperElem one = R.one();
  return !R.eq(R.oplus(one, r), one) && !R.eq(R.oplus(one, R.inv(r)), one);
}

HyperElem related(const RVSort& R, const HyperElem& a, Rng& rng) {
  switch (rng.uniform(0, 6)) {
    case 0: return R.neg(a);
    case 1: return a;
    case 2:
      if (!R.is_zero(a)) return R.sample_with_value(rng, R.nu(a));
      return R.sample(rng);
    case 3: return R.zero();
    default: return R.sample(rng);
  }
}

using Triple = std::function<void(const HyperElem&, const HyperElem&, const HyperElem&)>;

void for_triples(const RVSort& R, const Scope& scope, const Triple& f) {
  if (scope.exhaustive) {
    auto c = R.hyper().carrier();
    for (const auto& a : c)
      for (const auto& b : c)
        for (const auto& x : c) f(a, b, x);
    return;
  }
  Rng rng(scope.seed);
  for (std::size_t i = 0; i < scope.samples; ++i) {
    HyperElem a = R.sample(rng);
    HyperElem b = related(R, a, rng);
    HyperElem c = rng.chance(1, 2) ? related(R, b, rng) : R.sample(rng);
    f(a, b, c);
  }
}

std::string tri(const RVSort& R, const HyperElem& a, const HyperElem& b, const HyperElem& c) {
  return "a=" + R.show(a) + ", b=" + R.show(b) + ", c=" + R.show(c);
}

// Elements of F: the whole field for finite carriers, else sampled units of value 0 that pass the F^x test.
std::vector<HyperElem> field_pool(const RVSort& R, const Scope& scope, Rng& rng) {
  std::vector<HyperElem> pool{R.zero()};
  if (scope.exhaustive) {
    for (const auto& r : R.hyper().carrier())
      if (in_field(R, r)) pool.push_back(r);
    return pool;
  }
  pool.push_back(R.one());
  pool.push_back(R.neg(R.one()));
  const GroupElem z = GroupElem::zero(R.nu_rank());
  for (std::size_t i = 0; i < 24; ++i) {
    HyperElem r = R.sample_with_value(rng, z);
    if (in_field(R, r)) pool.push_back(r);
  }
  return pool;
}

bool member_of(const RVSort& R, const std::vector<HyperElem>& pool, const HyperElem& x, bool exhaustive) {
  if (R.is_zero(x)) return true;
  if (!exhaustive) return in_field(R, x);
  return std::any_of(pool.begin(), pool.end(), [&](const HyperElem& p) { return R.eq(p, x); });
}

void check_field(const RVSort& R, const Scope& scope, Rng& rng, AxiomTally& t) {
  auto pool = field_pool(R, scope, rng);
  const HyperElem zero = R.zero(), one = R.one();
  t.check(in_field(R, one), [&] { return "1 is not in F^x: 1+1=" + R.show(R.oplus(one, one)); });
  if (t.failed()) return;
  auto pick = [&]() { return pool[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pool.size()) - 1))]; };
  std::size_t rounds = scope.exhaustive ? pool.size() * pool.size() * pool.size() : scope.samples;
  for (std::size_t i = 0; i < rounds && !t.failed(); ++i) {
    HyperElem r, s, u;
    if (scope.exhaustive) {
      std::size_t n = pool.size();
      r = pool[i % n];
      s = pool[(i / n) % n];
      u = pool[i / (n * n)];
    } else {
      r = pick();
      s = pick();
      u = pick();
    }
    std::string w = "r=" + R.show(r) + ", s=" + R.show(s) + ", u=" + R.show(u);
    HyperElem rs = R.oplus(r, s);
    bool ok = member_of(R, pool, rs, scope.exhaustive) && member_of(R, pool, R.mul(r, s), scope.exhaustive);
    ok = ok && R.eq(R.oplus(R.oplus(r, s), u), R.oplus(r, R.oplus(s, u)));
    ok = ok && R.eq(R.mul(R.oplus(r, s), u), R.oplus(R.mul(r, u), R.mul(s, u)));
    ok = ok && R.is_zero(R.oplus(r, R.mul(R.neg(one), r))) && member_of(R, pool, R.neg(r), scope.exhaustive);
    if (!R.is_zero(r)) ok = ok && member_of(R, pool, R.inv(r), scope.exhaustive) && R.eq(R.mul(r, R.inv(r)), one);
    t.check(ok, w);
  }
  (void)zero;
}

}  // namespace

Report check_rv_axioms(const RVSort& R, const Scope& scope) {
  Report rep{R.name(), {}};
  const std::uint64_t seed = scope.exhaustive ? 0 : scope.seed;
  AxiomTally r1("RV1", seed), r2("RV2", seed), r3("RV3", seed), r4("RV4", seed), r5("RV5", seed), r6("RV6", seed),
      r7("RV7", seed);
  Rng rng(scope.seed ^ 0x7f4a7c159e3779b9ULL);
  const HyperElem zero = R.zero(), one = R.one();
  for_triples(R, scope, [&](const HyperElem& a, const HyperElem& b, const HyperElem& c) {
    if (!R.is_zero(a) && !R.is_zero(b) && !R.is_zero(c)) {
      bool ok = !R.is_zero(R.mul(a, b)) && R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c))) &&
                R.eq(R.mul(a, b), R.mul(b, a)) && R.eq(R.mul(one, a), a) && R.eq(R.mul(a, R.inv(a)), one);
      r1.check(ok, [&] { return tri(R, a, b, c); });
    }
    r2.check(R.eq(R.oplus(zero, a), a), [&] { return "a=" + R.show(a); });
    HyperElem ab = R.oplus(a, b), bc = R.oplus(b, c);
    HyperElem left = R.oplus(ab, c), right = R.oplus(a, bc);
    r3.check(R.eq(left, right) || R.is_zero(ab) || R.is_zero(bc), [&] { return tri(R, a, b, c) + ", (a+b)+c=" + R.show(left) + ", a+(b+c)=" + R.show(right); });
    r4.check(R.eq(ab, R.oplus(b, a)), [&] { return "a=" + R.show(a) + ", b=" + R.show(b); });
    r5.check(R.eq(R.mul(ab, c), R.oplus(R.mul(a, c), R.mul(b, c))), [&] { return tri(R, a, b, c); });
  });
  check_field(R, scope, rng, r6);
  {
    auto pool = field_pool(R, scope, rng);
    std::vector<HyperElem> as;
    if (scope.exhaustive) {
      as = R.hyper().carrier();
    } else {
      for (std::size_t i = 0; i < scope.samples; ++i) {
        HyperElem a = R.sample(rng);
        as.push_back(rng.chance(1, 3) ? R.mul(a, R.sample_with_value(rng, GroupElem::zero(R.nu_rank()))) : a);
      }
    }
    for (const auto& a : as) {
      for (std::size_t j = 1; j < pool.size() && (scope.exhaustive || j < 4); ++j) {
        const HyperElem& r = pool[scope.exhaustive ? j : static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(pool.size()) - 1))];
        if (R.is_zero(r)) continue;
        bool lhs = R.eq(R.oplus(a, one), one);
        bool rhs = R.eq(R.oplus(a, r), r);
        r7.check(lhs == rhs, [&] { return "a=" + R.show(a) + ", r=" + R.show(r); });
      }
    }
  }
  rep.results = {r1.done(), r2.done(), r3.done(), r4.done(), r5.done(), r6.done(), r7.done()};
  return rep;
}

Report derive_rv8_9_10(const RVSort& R, const Scope& scope) {
  Report rep{R.name(), {}};
  const std::uint64_t seed = scope.exhaustive ? 0 : scope.seed;
  AxiomTally r8("RV8", seed), r9("RV9", seed), r10("RV10", seed);
  Rng rng(scope.seed ^ 0x3c6ef372fe94f82bULL);
  const HyperElem zero = R.zero(), one = R.one();
  const HyperElem m1 = R.neg(one);
  r9.check(R.is_zero(R.oplus(one, m1)), [&] { return "1+(-1)=" + R.show(R.oplus(one, m1)); });
  auto same = [&](const HyperElem& a, const HyperElem& b) { return in_field(R, R.mul(a, R.inv(b))); };
  auto lt = [&](const HyperElem& a, const HyperElem& b) { return !same(a, b) && R.eq(R.oplus(a, b), a); };
  auto pool = field_pool(R, scope, rng);
  for_triples(R, scope, [&](const HyperElem& a, const HyperElem& b, const HyperElem& c) {
    r8.check(R.is_zero(R.mul(zero, a)), [&] { return "a=" + R.show(a); });
    HyperElem na = R.mul(m1, a);
    bool ok = R.is_zero(R.oplus(a, na));
    if (!R.eq(b, na)) ok = ok && !R.is_zero(R.oplus(a, b));
    r9.check(ok, [&] { return "a=" + R.show(a) + ", b=" + R.show(b); });
    if (R.is_zero(a) || R.is_zero(b) || R.is_zero(c)) return;
    std::string w = tri(R, a, b, c);
    int cases = int(same(a, b)) + int(lt(a, b)) + int(lt(b, a));
    if (cases != 1) return r10.check(false, [&] { return "totality/antisymmetry: " + w; });
    if (lt(a, b) && lt(b, c) && !lt(a, c)) return r10.check(false, [&] { return "transitivity: " + w; });
    if (lt(a, b) != lt(R.mul(a, c), R.mul(b, c))) return r10.check(false, [&] { return "translation: " + w; });
    for (std::size_t j = 1; j < pool.size() && j < 4; ++j) {
      const HyperElem& r = pool[static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(pool.size()) - 1))];
      if (R.is_zero(r)) continue;
      if (lt(a, b) != lt(R.mul(a, r), b) || lt(a, b) != lt(a, R.mul(b, r)))
        return r10.check(false, [&] { return "well-definedness: " + w + ", r=" + R.show(r); });
    }
    r10.check(true, "");
  });
  rep.results = {r8.done(), r9.done(), r10.done()};
  return rep;
}

HyperElem guarded_oplus(const RVSort& R, const std::vector<HyperElem>& xs) {
  if (xs.empty()) throw Error(ErrorCode::Precondition, "empty sum");
  auto fold = [&](const std::vector<std::size_t>& order) {
    HyperElem acc = xs[order[0]];
    for (std::size_t i = 1; i < order.size(); ++i) acc = R.oplus(acc, xs[order[i]]);
    return acc;
  };
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<GroupElem> vals;
  for (const auto& x : xs) vals.push_back(R.nu(x));
  bool all_same = std::all_of(vals.begin(), vals.end(), [&](const GroupElem& g) { return g == vals.front(); });
  auto sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  if (all_same || distinct) return fold(idx);
  if (xs.size() > 6) throw Error(ErrorCode::GuardRejected, "mixed values among more than 6 summands");
  HyperElem first = fold(idx);
  while (std::next_permutation(idx.begin(), idx.end())) {
    if (!R.eq(fold(idx), first))
      throw Error(ErrorCode::GuardRejected, "sum depends on the order of the summands");
  }
  return first;
}

RecoveredGamma recover_gamma(const HandlePtr& H, const Scope& scope) {
  RecoveredGamma out;
  if (H->finite()) {
    auto c = H->carrier();
    const HyperElem zero = H->zero();
    std::vector<std::size_t> parent(c.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
      return parent[i] == i ? i : parent[i] = root(parent[i]);
    };
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        SumSet s = H->add(c[i], c[j]);
        if (s.kind != SumSet::Kind::Singleton && !H->contains(s, zero))
          throw Error(ErrorCode::NotStringent, H->show(c[i]) + "+" + H->show(c[j]) + " = " + H->show_set(s));
        if (H->is_zero(c[i]) || H->is_zero(c[j])) continue;
        bool sim = !sumset_equal(*H, s, SumSet::singleton(c[i])) && !sumset_equal(*H, s, SumSet::singleton(c[j]));
        if (sim) parent[root(i)] = root(j);
      }
    }
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!H->is_zero(c[i]) && std::find(roots.begin(), roots.end(), root(i)) == roots.end()) roots.push_back(root(i));
    out.classes = roots.size();
    out.rank = roots.size() == 1 ? 0 : 1;
    auto hp = H;
    out.nu = [hp, c, roots, root, rank = out.rank](const HyperElem& a) {
      if (hp->is_zero(a)) return GroupElem::infinity(rank);
      if (rank == 0) return GroupElem::zero(0);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (hp->eq(c[i], a)) {
          auto it = std::find(roots.begin(), roots.end(), root(i));
          return GroupElem{static_cast<std::int64_t>(it - roots.begin())};
        }
      return GroupElem::infinity(rank);
    };
    out.description = out.rank == 0 ? "trivial group" : std::to_string(roots.size()) + " unordered classes";
    return out;
  }
  if (!H->valued()) throw Error(ErrorCode::Unsupported, H->name() + " is neither finite nor valued");
  const InitialSegment rho = H->norm();
  const std::size_t n = H->value_rank();
  if (rho.kind() == InitialSegment::Kind::UpTo) {
    HyperElem a = H->one();
    Rng rng(scope.seed);
    for (std::size_t i = 0; i < 64; ++i) {
      HyperElem p = H->probe(H->neg(a), Floor{rho, GroupElem::zero(n)}, rng);
      SumSet s = H->add(a, p);
      if (s.kind == SumSet::Kind::Ball)
        throw Error(ErrorCode::NotStringent, H->show(a) + "+" + H->show(p) + " = " + H->show_set(s));
    }
    throw Error(ErrorCode::NotStringent, "norm " + rho.str() + " is not a convex subgroup");
  }
  const std::size_t k = rho.kind() == InitialSegment::Kind::Cone ? rho.k() : 0;
  ConvexSubgroup d{n, k};
  out.rank = n - k;
  auto hp = H;
  out.nu = [hp, d](const HyperElem& a) {
    if (hp->is_zero(a)) return GroupElem::infinity(d.n - d.k);
    return quotient_map(hp->val(a), d);
  };
  Rng rng(scope.seed);
  for (std::size_t i = 0; i < scope.samples; ++i) {
    HyperElem a = H->sample(rng);
    HyperElem b = rng.chance(1, 2) ? H->sample(rng) : H->probe(H->neg(a), Floor{rho, H->val(a)}, rng);
    if (H->is_zero(a) || H->is_zero(b)) continue;
    SumSet s = H->add(a, b);
    if (s.kind == SumSet::Kind::Ball)
      throw Error(ErrorCode::NotStringent, H->show(a) + "+" + H->show(b) + " = " + H->show_set(s));
    bool is_a = sumset_equal(*H, s, SumSet::singleton(a)), is_b = sumset_equal(*H, s, SumSet::singleton(b));
    GroupElem na = out.nu(a), nb = out.nu(b);
    bool ok = (!is_a && !is_b) == (na == nb) && (is_a && !is_b) == (na < nb);
    if (!ok)
      throw Error(ErrorCode::Incompatible, "class of " + H->show(a) + " and " + H->show(b) +
                                               " disagrees with the valuation modulo the norm subgroup");
  }
  out.description = "Z^" + std::to_string(out.rank) + " lex, first " + std::to_string(out.rank) + " coordinates of the value";
  return out;
}

HandlePtr to_stringent(const SequenceStructure& S) { return std::make_shared<RVHyperfield>(S); }

SequenceStructure from_stringent(const HandlePtr& H) {
  if (auto r = std::dynamic_pointer_cast<const RVHyperfield>(H)) return r->structure();
  if (H->finite()) {
    HyperElem one = H->one();
    if (H->contains(H->add(one, H->neg(one)), one))
      throw Error(ErrorCode::FNotField, "1 is in 1-1, so F is K or S and " + H->name() + " admits no valuation");
    auto g = recover_gamma(H, Scope::all());
    if (g.classes != 1) throw Error(ErrorCode::FNotField, "nontrivial class structure on a finite carrier");
    auto c = H->carrier();
    std::size_t p = c.size();
    HyperElem acc = one;
    for (std::size_t i = 1; i < p; ++i) {
      SumSet s = H->add(acc, one);
      if (s.kind != SumSet::Kind::Singleton) throw Error(ErrorCode::FNotField, "additive orbit of 1 leaves the carrier");
      acc = s.witness;
      if (H->is_zero(acc) && i + 1 != p) throw Error(ErrorCode::FNotField, "characteristic below carrier size");
    }
    if (!H->is_zero(acc)) throw Error(ErrorCode::FNotField, "1 does not generate the additive group");
    return {BaseField::prime(static_cast<std::uint32_t>(p)), 0};
  }
  if (auto q = std::dynamic_pointer_cast<const QuotientField>(H)) {
    if (q->rho().kind() == InitialSegment::Kind::Zero) return {q->ground().F, q->ground().rank()};
    recover_gamma(H);
  }
  throw Error(ErrorCode::Unsupported, "no split sequence structure over a base field for " + H->name());
}

SequenceStructure parse_sequence_structure(std::string_view field, std::string_view group) {
  SequenceStructure S;
  std::string f(field), g(group);
  if (f == "q" || f == "Q") {
    S.F = BaseField::rationals();
  } else if (f.size() > 1 && (f[0] == 'f' || f[0] == 'F')) {
    try {
      S.F = BaseField::prime(static_cast<std::uint32_t>(std::stoul(f.substr(1))));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::Usage, "unknown field " + f);
    }
  } else {
    throw Error(ErrorCode::Usage, "unknown field " + f);
  }
  if (g == "z" || g == "Z") {
    S.rank = 1;
  } else if (g.size() > 1 && (g[0] == 'z' || g[0] == 'Z')) {
    std::string r = g.substr(g[1] == '^' ? 2 : 1);
    try {
      S.rank = std::stoul(r);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::Usage, "unknown group " + g);
    }
  } else if (g == "0") {
    S.rank = 0;
  } else {
    throw Error(ErrorCode::Usage, "unknown group " + g);
  }
  return S;
}

}  // namespace hv
