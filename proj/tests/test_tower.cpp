#include "hyperval/errors.hpp"
#include "hyperval/tower.hpp"

#include <gtest/gtest.h>

using namespace hv;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Usage;
}

}  // namespace

TEST(Isometric, CanonicalMapPasses) {
  Tower T = builtin_tower("rank1-f3");
  auto r = check_isometric(tower_map(T, 2, 1), Scope::sampled(200, 3));
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Isometric, IdentityPasses) {
  Tower T = builtin_tower("rank1-f3");
  IsometricMap id{T.stage(2), T.stage(2), [](const HyperElem& a) { return a; }, [](const HyperElem& a) { return a; }, "id"};
  EXPECT_TRUE(check_isometric(id, Scope::sampled(100, 4)).passed());
  auto r = induced_iso(id, Scope::sampled(50, 4));
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Isometric, ScaledMapBreaksIH3) {
  Tower T = builtin_tower("rank1-f3");
  auto H1 = T.stage(1);
  IsometricMap m = tower_map(T, 2, 1);
  auto base = m.f;
  m.f = [base, H1](const HyperElem& a) { return H1->mul(base(a), H1->monomial(GroupElem{1})); };
  auto r = check_isometric(m, Scope::sampled(100, 5));
  EXPECT_EQ(r.find("IH3")->status, Status::Fail);
}

TEST(Isometric, InducedIsoOnStagePairs) {
  Tower T = builtin_tower("rank1-f3");
  auto r = induced_iso(tower_map(T, 2, 1), Scope::sampled(100, 6));
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Tower, SegmentsMustIncrease) {
  auto rho = [](std::size_t i) { return InitialSegment::upto(GroupElem{static_cast<std::int64_t>(5 - std::min<std::size_t>(i, 4))}); };
  EXPECT_EQ(code_of([&] { canonical_tower(parse_ground("f3"), rho, "down"); }), ErrorCode::SegmentsNotIncreasing);
}

TEST(Tower, UnionNorms) {
  EXPECT_EQ(*builtin_tower("upto-0n").union_norm, InitialSegment::cone(2, 1));
  EXPECT_EQ(*builtin_tower("upto-n0").union_norm, InitialSegment::cone(2, 2));
  EXPECT_EQ(*builtin_tower("rank1-f3").union_norm, InitialSegment::cone(1, 1));
  EXPECT_FALSE(builtin_tower("upto-1m").union_norm.has_value());
}

TEST(Limit, ValuesAndDistances) {
  auto L = limit_hyperfield(builtin_tower("upto-0n", 5));
  EXPECT_EQ(limit_val(*L, L->embed("x")), (GroupElem{0, 1}));
  EXPECT_EQ(limit_val(*L, L->one()), (GroupElem{0, 0}));
  EXPECT_EQ(limit_d(*L, L->embed("1"), L->embed("1+x^2")), (GroupElem{0, 2}));
  try {
    limit_d(*L, L->embed("1"), L->embed("1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Undetermined);
    EXPECT_NE(std::string(e.what()).find("[0,(0,5)]"), std::string::npos) << e.what();
  }
}

TEST(Limit, TripleSums) {
  auto L = limit_hyperfield(builtin_tower("upto-0n", 4));
  auto one = L->one();
  EXPECT_EQ(triple_sum_resolve(*L, one, L->neg(one), L->zero()).kind, SumSet::Kind::ZeroBall);
  auto s = triple_sum_resolve(*L, one, one, one);
  ASSERT_EQ(s.kind, SumSet::Kind::Singleton);
  EXPECT_TRUE(L->eq(s.witness, L->embed("3")));
  auto x = L->embed("x/(1-x)");
  auto t = triple_sum_resolve(*L, one, L->neg(one), x);
  ASSERT_EQ(t.kind, SumSet::Kind::Singleton);
  EXPECT_TRUE(L->eq(t.witness, x));
  auto u = L->add(L->embed("1/(1-x)"), L->embed("-1"));
  ASSERT_EQ(u.kind, SumSet::Kind::Singleton);
  EXPECT_TRUE(L->eq(u.witness, L->embed("x/(1-x)")));
  EXPECT_EQ(L->show(u.witness), "[x + x^2 + x^3 + x^4 + x^5]@4");
}

TEST(Limit, StringentHandleAxioms) {
  auto L = limit_hyperfield(builtin_tower("upto-0n", 3));
  auto scope = Scope::sampled(60, 8);
  auto h = check_hyperfield(*L, scope);
  EXPECT_TRUE(h.passed()) << h.summary();
  auto v = check_valuation(*L, scope);
  EXPECT_TRUE(v.passed()) << v.summary();
}

TEST(Limit, TripleUniquenessAndAssociativity) {
  auto L = limit_hyperfield(builtin_tower("upto-0n", 3));
  auto u = check_triple_uniqueness(*L, Scope::sampled(60, 9));
  EXPECT_TRUE(u.passed()) << u.summary();
  auto a = check_limit_associativity(*L, Scope::sampled(60, 10));
  EXPECT_TRUE(a.passed()) << a.summary();
  for (const auto& r : a.results) EXPECT_GT(r.trials, 0u) << r.axiom;
}

TEST(Limit, FactorIsomorphisms) {
  auto L = limit_hyperfield(builtin_tower("upto-0n", 3));
  for (std::size_t i : {0u, 2u}) {
    auto r = limit_factor_iso(L, i, Scope::sampled(40, 11));
    EXPECT_TRUE(r.passed()) << r.summary();
  }
  auto R = limit_hyperfield(builtin_tower("rank1-f3", 4));
  auto r = limit_factor_iso(R, 3, Scope::sampled(40, 12));
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Limit, FieldMode) {
  auto L = limit_hyperfield(builtin_tower("rank1-f3", 4));
  EXPECT_TRUE(L->field_mode());
  EXPECT_FALSE(limit_hyperfield(builtin_tower("upto-0n", 2))->field_mode());
  auto s = L->add(L->embed("1+x"), L->embed("-1"));
  ASSERT_EQ(s.kind, SumSet::Kind::Singleton);
  EXPECT_TRUE(L->eq(s.witness, L->embed("x")));
  auto z = L->add(L->one(), L->neg(L->one()));
  EXPECT_EQ(z.kind, SumSet::Kind::ZeroBall);
  EXPECT_FALSE(L->contains(z, L->embed("x^3")));
}

TEST(Limit, OneMTowerRejected) {
  Tower T = builtin_tower("upto-1m");
  try {
    limit_hyperfield(T);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DoublingUnavailable);
    EXPECT_NE(std::string(e.what()).find("fails for all 45 pairs"), std::string::npos) << e.what();
  }
}

TEST(Limit, EmptySumWitness) {
  Tower T = builtin_tower("upto-1m");
  auto r = detect_empty_sum_geometric_pair(T, 3);
  EXPECT_EQ(r.verdict, EmptinessReport::Verdict::Empty) << r.witness;
  EXPECT_EQ(detect_empty_sum_geometric_pair(T, 0).verdict, EmptinessReport::Verdict::Inconclusive);
  auto one = [&T](std::size_t m) { return T.stage(m)->one(); };
  auto c = detect_empty_sum(T, one, one, 3);
  EXPECT_EQ(c.verdict, EmptinessReport::Verdict::Nonempty) << c.witness;
}

TEST(Limit, JsonDescriptor) {
  auto T = tower_from_json(nlohmann::json::parse(R"({"ground":"f3","segments":{"base":[0],"step":[1]},"budget":3})"));
  auto L = limit_hyperfield(T);
  EXPECT_TRUE(L->field_mode());
  EXPECT_EQ(code_of([] { tower_from_json(nlohmann::json::parse(R"({"ground":"f3"})")); }), ErrorCode::Usage);
}
