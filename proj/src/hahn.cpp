#include "hyperval/hahn.hpp"

#include "hyperval/errors.hpp"
#include "hyperval/rf.hpp"
#include "hyperval/rng.hpp"

#include <algorithm>
#include <map>

namespace hv {

namespace {

const SplitSort& split_of(const SortPtr& R) {
  auto s = dynamic_cast<const SplitSort*>(R.get());
  if (!s) throw Error(ErrorCode::Unsupported, "series text needs a split sort, got " + R->name());
  return *s;
}

void same_sort(const HahnSeries& a, const HahnSeries& b) {
  if (!a.sort() || a.sort() != b.sort())
    throw Error(ErrorCode::MixedSorts, (a.sort() ? a.sort()->name() : "?") + " vs " + (b.sort() ? b.sort()->name() : "?"));
}

// Smallest positive element of the exponent lattice.
GroupElem lattice_unit(std::size_t n) { return n ? GroupElem::unit(n, n - 1) : GroupElem::zero(0); }

// Lower bound for the value: the first known exponent, or the precision.
std::optional<GroupElem> val_low(const HahnSeries& a) {
  if (!a.terms().empty()) return a.terms().front().g;
  return a.prec();
}

std::string exp_str(const GroupElem& g) { return g.rank() == 1 ? std::to_string(g[0]) : g.str(); }

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

HahnSeries correction(const HahnSeries& c, const HyperElem& a0_inv, int sign) {
  const RVSort& R = *c.sort();
  HyperElem k = R.mul(c.terms().front().a, a0_inv);
  return HahnSeries::monomial(c.sort(), sign > 0 ? k : R.neg(k));
}

HahnSeries random_positive(const SortPtr& R, Rng& rng) {
  std::size_t n = R->nu_rank();
  std::vector<HahnTerm> t;
  if (n == 0) return HahnSeries::zero(R);
  std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
  std::map<GroupElem, HyperElem> m;
  for (std::size_t i = 0; i < k; ++i) {
    GroupElem::Coords c;
    for (std::size_t j = 0; j < n; ++j) c.push_back(rng.uniform(-2, 2));
    GroupElem g(c);
    if (g.is_zero()) g = lattice_unit(n);
    if (g < GroupElem::zero(n)) g = -g;
    m.emplace(g, R->sample_with_value(rng, g));
  }
  for (auto& [g, a] : m) t.push_back({g, a});
  return HahnSeries(R, std::move(t));
}

}  // namespace

HahnSeries::HahnSeries(SortPtr R, std::vector<HahnTerm> terms, std::optional<GroupElem> prec)
    : R_(std::move(R)), terms_(std::move(terms)), prec_(std::move(prec)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (R_->is_zero(terms_[i].a)) throw Error(ErrorCode::Precondition, "zero coefficient stored");
    if (R_->nu(terms_[i].a) != terms_[i].g)
      throw Error(ErrorCode::Precondition, "coefficient " + R_->show(terms_[i].a) + " at exponent " + terms_[i].g.str());
    if (i && !(terms_[i - 1].g < terms_[i].g)) throw Error(ErrorCode::Precondition, "exponents not increasing");
  }
  if (prec_ && !terms_.empty() && !(terms_.back().g < *prec_))
    throw Error(ErrorCode::Precondition, "term at or above the precision");
}

HahnSeries HahnSeries::zero(SortPtr R) { return HahnSeries(std::move(R), {}); }

HahnSeries HahnSeries::one(SortPtr R) {
  HyperElem o = R->one();
  return monomial(std::move(R), o);
}

HahnSeries HahnSeries::monomial(SortPtr R, const HyperElem& a) {
  if (R->is_zero(a)) return zero(std::move(R));
  GroupElem g = R->nu(a);
  return HahnSeries(std::move(R), {{g, a}});
}

HyperElem HahnSeries::coeff(const GroupElem& g) const {
  for (const auto& t : terms_)
    if (t.g == g) return t.a;
  return R_->zero();
}

HahnSeries HahnSeries::truncated(const GroupElem& cut) const {
  HahnSeries r = *this;
  r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(), [&](const HahnTerm& t) { return !(t.g < cut); }),
                 r.terms_.end());
  r.prec_ = min_prec(prec_, cut);
  return r;
}

HahnSeries HahnSeries::with_prec(std::optional<GroupElem> p) const {
  if (p) return HahnSeries(R_, terms_).truncated(*p);
  return HahnSeries(R_, terms_);
}

HahnSeries hs_add(const HahnSeries& a, const HahnSeries& b) {
  same_sort(a, b);
  const RVSort& R = *a.sort();
  auto prec = min_prec(a.prec(), b.prec());
  std::vector<HahnTerm> out;
  auto push = [&](const GroupElem& g, const HyperElem& c) {
    if (prec && !(g < *prec)) return;
    if (R.is_zero(c)) return;
    if (R.nu(c) != g) throw Error(ErrorCode::NotStringent, "oplus left the value class " + g.str());
    out.push_back({g, c});
  };
  const auto &x = a.terms(), &y = b.terms();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].g < y[j].g)) {
      push(x[i].g, x[i].a);
      ++i;
    } else if (i == x.size() || y[j].g < x[i].g) {
      push(y[j].g, y[j].a);
      ++j;
    } else {
      push(x[i].g, R.oplus(x[i].a, y[j].a));
      ++i;
      ++j;
    }
  }
  return HahnSeries(a.sort(), std::move(out), prec);
}

HahnSeries hs_neg(const HahnSeries& a) {
  std::vector<HahnTerm> t;
  for (const auto& x : a.terms()) t.push_back({x.g, a.sort()->neg(x.a)});
  return HahnSeries(a.sort(), std::move(t), a.prec());
}

HahnSeries hs_sub(const HahnSeries& a, const HahnSeries& b) { return hs_add(a, hs_neg(b)); }

HahnSeries hs_mul(const HahnSeries& a, const HahnSeries& b) {
  same_sort(a, b);
  if (a.is_exact_zero() || b.is_exact_zero()) return HahnSeries::zero(a.sort());
  const RVSort& R = *a.sort();
  std::optional<GroupElem> prec;
  if (a.prec()) prec = *a.prec() + *val_low(b);
  if (b.prec()) prec = min_prec(prec, *b.prec() + *val_low(a));
  std::map<GroupElem, std::vector<HyperElem>> buckets;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      GroupElem g = x.g + y.g;
      if (prec && !(g < *prec)) continue;
      buckets[g].push_back(R.mul(x.a, y.a));
    }
  std::vector<HahnTerm> out;
  for (auto& [g, xs] : buckets) {
    HyperElem c = guarded_oplus(R, xs);
    if (!R.is_zero(c)) out.push_back({g, c});
  }
  return HahnSeries(a.sort(), std::move(out), prec);
}

GroupElem hs_val(const HahnSeries& a) {
  if (!a.terms().empty()) return a.terms().front().g;
  if (a.prec()) throw Error(ErrorCode::IndistinguishableFromZero, "no term below t^" + exp_str(*a.prec()));
  return GroupElem::infinity(a.rank());
}

bool hs_eq(const HahnSeries& a, const HahnSeries& b) {
  same_sort(a, b);
  auto p = min_prec(a.prec(), b.prec());
  HahnSeries x = p ? a.truncated(*p) : a, y = p ? b.truncated(*p) : b;
  if (x.terms().size() != y.terms().size()) return false;
  for (std::size_t i = 0; i < x.terms().size(); ++i)
    if (x.terms()[i].g != y.terms()[i].g || !a.sort()->eq(x.terms()[i].a, y.terms()[i].a)) return false;
  return true;
}

int inverse_update_sign() {
  static const int sign = [] {
    SortPtr R = std::make_shared<SplitSort>(SequenceStructure{BaseField::rationals(), 1});
    const auto& H = split_of(R).rv();
    HahnSeries a(R, {{GroupElem{0}, H.make(1, GroupElem{0})}, {GroupElem{1}, H.make(-1, GroupElem{1})}});
    HahnSeries b = HahnSeries::one(R);
    HahnSeries c = hs_sub(HahnSeries::one(R), hs_mul(a, b));
    HyperElem a0_inv = R->inv(a.terms().front().a);
    for (int s : {1, -1}) {
      HahnSeries c2 = hs_sub(HahnSeries::one(R), hs_mul(a, hs_add(b, correction(c, a0_inv, s))));
      if (c2.is_exact_zero() || hs_val(c) < hs_val(c2)) return s;
    }
    throw Error(ErrorCode::Precondition, "neither sign refines the inverse of 1 - t");
  }();
  return sign;
}

HahnSeries hs_inverse(const HahnSeries& a, const GroupElem& target, std::vector<GroupElem>* trace) {
  if (a.is_exact_zero()) throw Error(ErrorCode::ZeroDivision, "inverse of 0");
  if (a.terms().empty()) throw Error(ErrorCode::InsufficientPrecision, "leading term unknown below t^" + exp_str(*a.prec()));
  const SortPtr& R = a.sort();
  GroupElem va = a.terms().front().g;
  if (a.prec() && !(target + va < *a.prec()))
    throw Error(ErrorCode::InsufficientPrecision,
                "need precision above " + exp_str(target + va) + ", have " + exp_str(*a.prec()));
  HyperElem a0_inv = R->inv(a.terms().front().a);
  const int sign = inverse_update_sign();
  HahnSeries b = HahnSeries::monomial(R, a0_inv);
  const HahnSeries one = HahnSeries::one(R);
  std::optional<GroupElem> last;
  for (std::size_t step = 0; step < 4096; ++step) {
    HahnSeries c = hs_sub(one, hs_mul(a, b));
    if (c.is_exact_zero()) return b;
    if (c.terms().empty() || target < c.terms().front().g) return b.with_prec(target - va + lattice_unit(a.rank()));
    GroupElem vc = c.terms().front().g;
    if (last && !(*last < vc)) throw Error(ErrorCode::Precondition, "refinement did not raise v(1 - ab) at " + exp_str(vc));
    last = vc;
    if (trace) trace->push_back(vc);
    b = hs_add(b, correction(c, a0_inv, sign));
  }
  throw Error(ErrorCode::InsufficientPrecision, "inverse did not reach t^" + exp_str(target) + " in 4096 steps");
}

HyperElem rv_project(const HahnSeries& a) {
  if (a.is_exact_zero()) return a.sort()->zero();
  if (a.terms().empty()) throw Error(ErrorCode::IndistinguishableFromZero, "no term below t^" + exp_str(*a.prec()));
  return a.terms().front().a;
}

HahnSeries random_hahn(const SortPtr& R, Rng& rng) {
  std::size_t n = R->nu_rank();
  std::size_t k = static_cast<std::size_t>(rng.uniform(1, 4));
  std::map<GroupElem, HyperElem> m;
  for (std::size_t i = 0; i < k; ++i) {
    GroupElem::Coords c;
    for (std::size_t j = 0; j < n; ++j) c.push_back(rng.uniform(-2, 2));
    GroupElem g(c);
    m.emplace(g, R->sample_with_value(rng, g));
  }
  std::vector<HahnTerm> t;
  for (auto& [g, a] : m) t.push_back({g, a});
  return HahnSeries(R, std::move(t));
}

Report check_rv_round_trip(const SortPtr& R, const Scope& scope) {
  Report rep{"rv round trip over " + R->name(), {}};
  Rng rng(scope.seed);
  AxiomTally mult("rv-multiplicative", scope.seed), add("rv-additive", scope.seed), inj("class-injective", scope.seed),
      surj("class-surjective", scope.seed);
  const Hyperfield& H = R->hyper();
  const HahnSeries one = HahnSeries::one(R);
  std::size_t n = scope.samples ? scope.samples : 200;
  for (std::size_t s = 0; s < n; ++s) {
    HahnSeries a = random_hahn(R, rng), b = random_hahn(R, rng);
    HyperElem ra = rv_project(a), rb = rv_project(b);
    mult.check(R->eq(rv_project(hs_mul(a, b)), R->mul(ra, rb)), [&] { return show_hahn(a) + " * " + show_hahn(b); });

    switch (rng.uniform(0, 2)) {
      case 0: b = hs_add(hs_neg(a), hs_mul(a, random_positive(R, rng))); break;
      case 1:
        b = hs_mul(HahnSeries::monomial(R, R->sample_with_value(rng, hs_val(a))), hs_add(one, random_positive(R, rng)));
        break;
      default: break;
    }
    rb = rv_project(b);
    HahnSeries sum = hs_add(a, b);
    add.check(H.contains(H.add(ra, rb), rv_project(sum)), [&] { return show_hahn(a) + " + " + show_hahn(b); });

    HahnSeries c = rng.chance(1, 2) ? hs_mul(a, hs_add(one, random_positive(R, rng))) : random_hahn(R, rng);
    HahnSeries d = hs_sub(a, c);
    bool same_class = d.is_exact_zero() || hs_val(a) < hs_val(d);
    inj.check(same_class == R->eq(ra, rv_project(c)), [&] { return show_hahn(a) + " vs " + show_hahn(c); });

    HyperElem r = R->sample(rng);
    if (R->is_zero(r)) continue;
    surj.check(R->eq(rv_project(HahnSeries::monomial(R, r)), r), [&] { return R->show(r); });
  }
  for (auto* t : {&mult, &add, &inj, &surj}) rep.results.push_back(t->done());
  return rep;
}

Report check_hahn_field(const SortPtr& R, const Scope& scope) {
  Report rep{"Hahn field over " + R->name(), {}};
  Rng rng(scope.seed);
  AxiomTally vm("val-multiplicative", scope.seed), um("ultrametric", scope.seed), dist("distributive", scope.seed),
      inv("inverse", scope.seed), mono("inverse-monotone", scope.seed), sound("precision-sound", scope.seed);
  std::size_t rk = R->nu_rank();
  GroupElem target = rk ? GroupElem::unit(rk, rk - 1, 6) : GroupElem::zero(0);
  std::size_t n = scope.samples ? scope.samples : 200;
  for (std::size_t s = 0; s < n; ++s) {
    HahnSeries a = random_hahn(R, rng), b = random_hahn(R, rng), c = random_hahn(R, rng);
    std::string w = show_hahn(a) + " ; " + show_hahn(b);
    vm.check(hs_val(hs_mul(a, b)) == hs_val(a) + hs_val(b), w);
    HahnSeries ab = hs_add(a, b);
    GroupElem va = hs_val(a), vb = hs_val(b), vs = hs_val(ab);
    um.check(std::min(va, vb) <= vs && (va == vb || vs == std::min(va, vb)), w);
    dist.check(hs_eq(hs_mul(ab, c), hs_add(hs_mul(a, c), hs_mul(b, c))), [&] { return w + " ; " + show_hahn(c); });

    std::vector<GroupElem> trace;
    HahnSeries ai = hs_inverse(a, target, &trace);
    HahnSeries e = hs_sub(hs_mul(a, ai), HahnSeries::one(R));
    inv.check(e.is_exact_zero() || e.terms().empty() || target < e.terms().front().g, [&] { return show_hahn(a); });
    mono.check(std::adjacent_find(trace.begin(), trace.end(), [](const GroupElem& x, const GroupElem& y) {
                 return !(x < y);
               }) == trace.end(), [&] { return show_hahn(a); });

    if (rk) {
      GroupElem p = va + GroupElem::unit(rk, rk - 1, rng.uniform(1, 3));
      sound.check(hs_eq(hs_mul(a.truncated(p), b), hs_mul(a, b)), [&] { return w + " cut " + exp_str(p); });
    }
  }
  if (!rk) sound.skip("rank-0 exponents");
  for (auto* t : {&vm, &um, &dist, &inv, &mono, &sound}) rep.results.push_back(t->done());
  return rep;
}

HahnSeries poly_eval(const HahnPoly& f, const HahnSeries& x) {
  if (f.empty()) return HahnSeries::zero(x.sort());
  HahnSeries acc = f.back();
  for (std::size_t k = f.size() - 1; k-- > 0;) acc = hs_add(hs_mul(acc, x), f[k]);
  return acc;
}

HahnPoly poly_derivative(const HahnPoly& f) {
  HahnPoly d;
  for (std::size_t k = 1; k < f.size(); ++k) {
    HahnSeries c = HahnSeries::zero(f[k].sort());
    for (std::size_t j = 0; j < k; ++j) c = hs_add(c, f[k]);
    d.push_back(c);
  }
  return d;
}

HahnSeries hensel_lift(const HahnPoly& f, const HahnSeries& r0, const GroupElem& target) {
  HahnPoly df = poly_derivative(f);
  HahnSeries fp0 = poly_eval(df, r0);
  if (fp0.is_exact_zero()) throw Error(ErrorCode::NewtonConditionFails, "f'(r0) = 0 at r0 = " + show_hahn(r0));
  GroupElem vfp = hs_val(fp0);
  HahnSeries f0 = poly_eval(f, r0);
  if (f0.is_exact_zero()) return r0;
  GroupElem vf0 = hs_val(f0);
  if (!(2 * vfp < vf0))
    throw Error(ErrorCode::NewtonConditionFails,
                "v(f(r0)) = " + exp_str(vf0) + " is not above 2 v(f'(r0)) = " + exp_str(2 * vfp));
  GroupElem cut = target - vfp + lattice_unit(r0.rank());
  HahnSeries r = r0.truncated(cut).with_prec(std::nullopt);
  for (std::size_t step = 0; step < 64; ++step) {
    HahnSeries fr = poly_eval(f, r);
    if (fr.is_exact_zero()) return r;
    if (fr.terms().empty()) {
      if (target < *fr.prec()) return r.with_prec(cut);
      throw Error(ErrorCode::InsufficientPrecision, "f(r) unknown below t^" + exp_str(*fr.prec()));
    }
    GroupElem vfr = fr.terms().front().g;
    if (target < vfr) return r.with_prec(cut);
    HahnSeries inv = hs_inverse(poly_eval(df, r), target - vfr);
    HahnSeries delta = hs_mul(fr, inv).truncated(cut).with_prec(std::nullopt);
    r = hs_sub(r, delta);
  }
  throw Error(ErrorCode::InsufficientPrecision, "Newton iteration did not reach t^" + exp_str(target));
}

std::string show_hahn(const HahnSeries& a) {
  if (a.is_exact_zero()) return "0";
  std::string s;
  for (const auto& t : a.terms()) {
    if (!s.empty()) s += " + ";
    s += a.sort()->show(t.a) + "*t^" + exp_str(t.g);
  }
  if (a.prec()) s += (s.empty() ? "" : " + ") + std::string("O(t^") + exp_str(*a.prec()) + ")";
  return s;
}

HahnSeries parse_hahn(const SortPtr& R, std::string_view text) {
  const RVHyperfield& H = split_of(R).rv();
  std::vector<std::string> chunks;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw Error(ErrorCode::Syntax, "unbalanced ')' in '" + std::string(text) + "'");
    if (ch == '+' && depth == 0) {
      chunks.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth) throw Error(ErrorCode::Syntax, "unbalanced '(' in '" + std::string(text) + "'");
  chunks.push_back(trim(cur));
  std::map<GroupElem, HyperElem> terms;
  std::optional<GroupElem> prec;
  for (const auto& c : chunks) {
    if (c.empty()) throw Error(ErrorCode::Syntax, "empty summand in '" + std::string(text) + "'");
    if (c == "0") continue;
    if (c.rfind("O(t^", 0) == 0) {
      if (c.back() != ')') throw Error(ErrorCode::Syntax, "bad precision term '" + c + "'");
      GroupElem p = parse_group_elem(c.substr(4, c.size() - 5));
      if (p.rank() != R->nu_rank()) throw Error(ErrorCode::Syntax, "precision of wrong rank in '" + c + "'");
      prec = min_prec(prec, p);
      continue;
    }
    std::size_t close = 0;
    for (int d = 0; close < c.size(); ++close) {
      if (c[close] == '(') ++d;
      if (c[close] == ')' && --d == 0) break;
    }
    if (c.front() != '(' || close == c.size()) throw Error(ErrorCode::Syntax, "expected (f; g) in '" + c + "'");
    HyperElem a = H.parse(c.substr(0, close + 1));
    std::string rest = trim(c.substr(close + 1));
    if (!rest.empty()) {
      if (rest.rfind("*t^", 0) != 0) throw Error(ErrorCode::Syntax, "expected *t^g after coefficient in '" + c + "'");
      if (parse_group_elem(rest.substr(3)) != R->nu(a))
        throw Error(ErrorCode::Syntax, "exponent differs from the coefficient value in '" + c + "'");
    }
    if (R->is_zero(a)) continue;
    GroupElem g = R->nu(a);
    auto it = terms.find(g);
    if (it == terms.end()) terms.emplace(g, a);
    else it->second = R->oplus(it->second, a);
  }
  std::vector<HahnTerm> t;
  for (auto& [g, a] : terms)
    if (!R->is_zero(a) && (!prec || g < *prec)) t.push_back({g, a});
  return HahnSeries(R, std::move(t), prec);
}

HahnSeries hahn_from_poly(const SortPtr& R, std::string_view text) {
  const RVHyperfield& H = split_of(R).rv();
  if (R->nu_rank() != 1) throw Error(ErrorCode::Unsupported, "polynomial input needs a rank-1 group");
  const BaseField& F = H.structure().F;
  RatFunc f = eval_rf(parse_rf(text, {"t"}), F, 1);
  if (!f.is_laurent()) throw Error(ErrorCode::Unsupported, "not a Laurent polynomial in t: '" + std::string(text) + "'");
  const Term& d = f.den().terms().front();
  std::vector<HahnTerm> t;
  for (const auto& n : f.num().terms()) {
    GroupElem g = n.e - d.e;
    t.push_back({g, H.make(F.div(n.c, d.c), g)});
  }
  return HahnSeries(R, std::move(t));
}

nlohmann::ordered_json hahn_to_json(const HahnSeries& a) {
  nlohmann::ordered_json j;
  j["sort"] = a.sort()->name();
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : a.terms())
    j["terms"].push_back({{"exp", std::vector<std::int64_t>(t.g.coords().begin(), t.g.coords().end())},
                          {"coef", a.sort()->show(t.a)}});
  if (a.prec())
    j["prec"] = std::vector<std::int64_t>(a.prec()->coords().begin(), a.prec()->coords().end());
  else
    j["prec"] = nullptr;
  return j;
}

HahnSeries hahn_from_json(const SortPtr& R, const nlohmann::json& j) {
  const RVHyperfield& H = split_of(R).rv();
  try {
    std::vector<HahnTerm> t;
    for (const auto& x : j.at("terms")) {
      HyperElem a = H.parse(x.at("coef").get<std::string>());
      auto e = x.at("exp").get<std::vector<std::int64_t>>();
      GroupElem g(GroupElem::Coords(e.begin(), e.end()));
      if (R->nu(a) != g) throw Error(ErrorCode::Syntax, "exponent differs from the coefficient value");
      t.push_back({g, a});
    }
    std::optional<GroupElem> prec;
    if (j.contains("prec") && !j.at("prec").is_null()) {
      auto p = j.at("prec").get<std::vector<std::int64_t>>();
      prec = GroupElem(GroupElem::Coords(p.begin(), p.end()));
    }
    return HahnSeries(R, std::move(t), prec);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Syntax, std::string("series JSON: ") + e.what());
  }
}

}  // namespace hv
