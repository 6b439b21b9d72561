#include "hyperval/errors.hpp"
#include "hyperval/finite.hpp"
#include "hyperval/hahn.hpp"
#include "hyperval/reconstruct.hpp"
#include "hyperval/rf.hpp"
#include "hyperval/rng.hpp"
#include "hyperval/tower.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace hv;

namespace {

constexpr double kLimitC1 = 1.0;
constexpr double kLimitC2 = 10.0;
constexpr double kLimitC4 = 60.0;
constexpr double kLimitC9 = 120.0;
constexpr std::size_t kC2Samples = 10000;
constexpr std::size_t kC3Samples = 100;
constexpr std::size_t kC4Samples = 1000;
constexpr std::size_t kC5Samples = 1000;
constexpr std::size_t kC7Samples = 1000;
constexpr std::size_t kC8Series = 100;
constexpr std::size_t kC9Samples = 100;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
  void require(const Report& r) { require(r.passed(), r.subject + ": " + r.summary()); }
};

SortPtr split(const BaseField& F, std::size_t n) { return std::make_shared<SplitSort>(SequenceStructure{F, n}); }

Outcome c1() {
  Outcome o;
  for (auto H : {krasner_K(), krasner_S()}) {
    o.require(check_canonical_hypergroup(*H, Scope::all()));
    o.require(check_hyperfield(*H, Scope::all()));
  }
  auto F5 = field_as_hyperfield(BaseField::prime(5));
  auto F7 = field_as_hyperfield(BaseField::prime(7));
  o.require(check_hyperfield(*factor_hyperfield(*F5, {1, 4}), Scope::all()));
  o.require(check_hyperfield(*factor_hyperfield(*F7, {1, 6}), Scope::all()));
  auto C = factor_hyperfield(*F7, {1, 2, 4});
  o.require(check_hyperfield(*C, Scope::all()));
  auto v = check_valuation(*with_trivial_valuation(*C), Scope::all());
  const AxiomResult* v4 = v.find("V4");
  o.require(v4 && v4->status == Status::Fail && v4->witness == "[1]+[1] ⊇ {[1],[3]}",
            "F7/{1,2,4} V4 witness: " + (v4 && v4->witness ? *v4->witness : std::string("none")));
  return o;
}

Outcome c2() {
  Outcome o;
  for (std::int64_t n = 0; n <= 3; ++n) {
    auto H = make_quotient(parse_ground("f3"), InitialSegment::upto(GroupElem{n}));
    auto scope = Scope::sampled(kC2Samples, 100 + static_cast<std::uint64_t>(n));
    o.require(check_valuation(*H, scope));
    o.require(check_val_lemma(*H, scope));
  }
  return o;
}

Outcome c3() {
  Outcome o;
  Tower T = builtin_tower("rank1-f3", 4);
  std::uint64_t seed = 300;
  for (std::size_t j = 1; j <= 4; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      auto r = check_isometric(tower_map(T, j, i), Scope::sampled(kC3Samples, ++seed));
      o.require(r);
      for (const char* ax : {"IH1", "IH2'", "IH3"}) o.require(r.find(ax) != nullptr, std::string("missing ") + ax);
      o.require(induced_iso(tower_map(T, j, i), Scope::sampled(kC3Samples, ++seed)));
    }
  }
  return o;
}

Outcome c4() {
  Outcome o;
  auto L = limit_hyperfield(builtin_tower("upto-0n", 5));
  o.require(check_hyperfield(*L, Scope::sampled(200, 401)));
  o.require(check_valuation(*L, Scope::sampled(200, 402)));
  o.require(check_triple_uniqueness(*L, Scope::sampled(kC4Samples, 403)));
  for (std::size_t i = 0; i <= 4; ++i) o.require(limit_factor_iso(L, i, Scope::sampled(50, 410 + i)));
  return o;
}

Outcome c5() {
  Outcome o;
  auto L = limit_hyperfield(builtin_tower("rank1-f3", 6));
  o.require(L->field_mode(), "rank1-f3 limit is not in field mode");
  BaseField F = BaseField::prime(3);
  Rng rng(500);
  for (std::size_t s = 0; s < kC5Samples && o.ok; ++s) {
    RatFunc a = random_rf(rng, F, 1, true), b = random_rf(rng, F, 1, true);
    RatFunc c = rng.chance(1, 4) ? -a : rng.chance(1, 3) ? b - a : b;
    auto x = L->embed(a), y = L->embed(c);
    SumSet sum = L->add(x, y);
    if ((a + c).is_zero()) {
      o.require(sum.kind == SumSet::Kind::ZeroBall, "cancelling sum is not a zero ball");
    } else {
      o.require(sum.kind == SumSet::Kind::Singleton && L->eq(sum.witness, L->embed(a + c)),
                "sum differs from Laurent arithmetic at sample " + std::to_string(s));
    }
    o.require(L->eq(L->mul(x, y), L->embed(a * c)), "product differs at sample " + std::to_string(s));
  }
  return o;
}

Outcome c6() {
  Outcome o;
  Tower T = builtin_tower("upto-1m");
  try {
    limit_hyperfield(T);
    o.require(false, "upto-1m tower accepted");
  } catch (const Error& e) {
    o.require(e.code() == ErrorCode::DoublingUnavailable, std::string("wrong error: ") + e.what());
    o.require(std::string(e.what()).find("fails for all") != std::string::npos, e.what());
  }
  auto w = detect_empty_sum_geometric_pair(T, 3);
  o.require(w.verdict == EmptinessReport::Verdict::Empty, std::string("verdict ") + verdict_name(w.verdict));
  return o;
}

std::vector<SortPtr> criterion7_sorts() {
  auto L = limit_hyperfield(builtin_tower("upto-0n", 4));
  return {split(BaseField::rationals(), 1), split(BaseField::prime(3), 2),
          std::make_shared<HyperfieldSort>(L, ConvexSubgroup{2, 1})};
}

Outcome c7() {
  Outcome o;
  std::uint64_t seed = 700;
  for (const auto& R : criterion7_sorts()) {
    o.require(check_rv_axioms(*R, Scope::sampled(200, ++seed)));
    o.require(derive_rv8_9_10(*R, Scope::sampled(200, ++seed)));
  }
  for (auto S : {SequenceStructure{BaseField::rationals(), 1}, SequenceStructure{BaseField::prime(3), 2}}) {
    auto H = std::dynamic_pointer_cast<const RVHyperfield>(to_stringent(S));
    auto back = from_stringent(H);
    o.require(back == S, "from_stringent changed the structure");
    auto H2 = std::dynamic_pointer_cast<const RVHyperfield>(to_stringent(back));
    Rng rng(++seed);
    for (std::size_t s = 0; s < kC7Samples && o.ok; ++s) {
      auto a = H->sample(rng), b = H->sample(rng);
      auto a2 = H2->adopt(H->rep(a)), b2 = H2->adopt(H->rep(b));
      o.require(H2->show(a2) == H->show(a) && H->eq(H->parse(H2->show(a2)), a), "round trip moved " + H->show(a));
      o.require(H2->show(H2->mul(a2, b2)) == H->show(H->mul(a, b)), "round trip broke a product at " + H->show(a));
      o.require(H2->val(a2) == H->val(a), "round trip changed the value of " + H->show(a));
      auto s1 = H->add(a, b), s2 = H2->add(a2, b2);
      o.require(s1.kind == s2.kind && H->show(s1.witness) == H2->show(s2.witness), "round trip broke a sum at " + H->show(a));
    }
  }
  return o;
}

Outcome c8() {
  Outcome o;
  auto R = split(BaseField::rationals(), 1);
  Rng rng(800);
  for (std::size_t s = 0; s < kC8Series && o.ok; ++s) {
    HahnSeries a = random_hahn(R, rng);
    HahnSeries b = hs_inverse(a, GroupElem{10});
    HahnSeries e = hs_sub(hs_mul(a, b.with_prec(std::nullopt)), HahnSeries::one(R));
    o.require(e.is_exact_zero() || GroupElem{10} < hs_val(e), "a*inv(a) - 1 too large for " + show_hahn(a));
  }
  std::uint64_t seed = 810;
  for (const auto& S : criterion7_sorts()) o.require(check_rv_round_trip(S, Scope::sampled(200, ++seed)));
  HahnPoly f{hahn_from_poly(R, "-1 - t"), HahnSeries::zero(R), HahnSeries::one(R)};
  auto r = hensel_lift(f, HahnSeries::one(R), GroupElem{5});
  mpq_class k = 1;
  for (std::int64_t i = 0; i <= 5; ++i) {
    if (i > 0) k = k * (mpq_class(1, 2) - mpq_class(i - 1)) / mpq_class(i);
    auto c = r.coeff(GroupElem{i});
    const auto& rep = std::dynamic_pointer_cast<const SplitSort>(R)->rv().rep(c);
    mpq_class got = rep.zero ? mpq_class(0) : rep.f;
    o.require(got == k, "sqrt(1+t) coefficient " + std::to_string(i) + " is " + got.get_str());
  }
  return o;
}

Outcome c9() {
  Outcome o;
  auto R = reconstruct(builtin_tower("upto-0n"), ConvexSubgroup{2, 1}, 3, Scope::sampled(kC9Samples, 900));
  o.require(R.report);
  o.require(verify_theorem(R, {0, 1, 2, 3}, Scope::sampled(kC9Samples, 901)));
  o.require(paper_example_iso(4, Scope::sampled(kC9Samples, 902)));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string what;
    std::function<Outcome()> run;
    double limit;
  };
  std::vector<Criterion> all{
      {1, "exhaustive finite hyperfield axioms", c1, kLimitC1},
      {2, "quotient valuations on F3((x))", c2, kLimitC2},
      {3, "isometric tower maps", c3, 0},
      {4, "inverse limit of H_(0,n)", c4, kLimitC4},
      {5, "field mode against Laurent arithmetic", c5, 0},
      {6, "H_(1,m) rejection and empty sum", c6, 0},
      {7, "RV sorts and stringent round trip", c7, 0},
      {8, "Hahn inverse, RV round trip, Hensel", c8, 0},
      {9, "reconstruction end to end", c9, kLimitC9},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit > 0 && secs >= c.limit) {
      o.ok = false;
      o.note = "over the " + std::to_string(c.limit) + " s limit";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.what << "  (" << secs << " s)";
    if (!o.ok) line << "  " << o.note;
    std::cout << line.str() << std::endl;
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
