#include "hyperval/errors.hpp"
#include "hyperval/finite.hpp"
#include "hyperval/quotient.hpp"

#include <gtest/gtest.h>

using namespace hv;

namespace {

std::string statuses(const Report& r) {
  std::string s;
  for (const auto& a : r.results) s += a.axiom + "=" + status_name(a.status) + " ";
  return s;
}

QuotientPtr f3(std::int64_t n) {
  return make_quotient(parse_ground("f3"), InitialSegment::upto(GroupElem{n}));
}

}  // namespace

TEST(Finite, KrasnerSums) {
  auto K = krasner_K();
  auto one = K->find("1");
  auto s = hypersum(*K, one, one);
  EXPECT_EQ(K->show_set(s), "{0,1}");
  auto S = krasner_S();
  EXPECT_EQ(S->show_set(hypersum(*S, S->find("1"), S->find("-1"))), "{0,1,-1}");
  EXPECT_EQ(K->carrier().size(), 2u);
  EXPECT_EQ(S->carrier().size(), 3u);
}

TEST(Finite, SetwiseSums) {
  auto K = krasner_K();
  auto r = setwise_sum(*K, {K->find("1")}, {K->find("0"), K->find("1")});
  EXPECT_EQ(r.size(), 2u);
  auto S = krasner_S();
  EXPECT_EQ(setwise_sum(*S, {S->find("1"), S->find("-1")}, {S->find("1")}).size(), 3u);
  EXPECT_TRUE(setwise_sum(*S, {}, {S->find("1")}).empty());
}

TEST(Finite, FieldAsHyperfield) {
  auto F = field_as_hyperfield(BaseField::prime(3));
  EXPECT_EQ(F->show_set(hypersum(*F, F->find("1"), F->find("2"))), "{0}");
  EXPECT_THROW(field_as_hyperfield(BaseField::rationals()), Error);
}

TEST(Finite, ExhaustiveChecksPassOnKandS) {
  for (auto H : {krasner_K(), krasner_S()}) {
    auto r = check_hyperfield(*H, Scope::all());
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

TEST(Finite, DroppingZeroFromOnePlusOneBreaksCH3) {
  FiniteTable t = krasner_K_table();
  t.add[1][1] = {1};
  FiniteHyperfield H("K'", t);
  auto r = check_canonical_hypergroup(H, Scope::all());
  ASSERT_NE(r.find("CH3"), nullptr);
  EXPECT_EQ(r.find("CH3")->status, Status::Fail);
  EXPECT_NE(r.find("CH3")->witness->find("x=1"), std::string::npos) << *r.find("CH3")->witness;
}

TEST(Finite, CorruptedProductBreaksHF2) {
  FiniteTable t = krasner_K_table();
  t.mul[1][1] = 0;
  FiniteHyperfield H("K'", t);
  EXPECT_EQ(check_hyperfield(H, Scope::all()).find("HF2")->status, Status::Fail);
}

TEST(Finite, FactorHyperfields) {
  auto F5 = field_as_hyperfield(BaseField::prime(5));
  auto A = factor_hyperfield(*F5, {1, 4});
  EXPECT_EQ(A->carrier().size(), 3u);
  EXPECT_EQ(A->show_set(hypersum(*A, A->find("[1]"), A->find("[1]"))), "{[0],[2]}");
  EXPECT_TRUE(check_hyperfield(*A, Scope::all()).passed());
  auto F7 = field_as_hyperfield(BaseField::prime(7));
  auto B = factor_hyperfield(*F7, {1, 6});
  EXPECT_EQ(B->carrier().size(), 4u);
  EXPECT_TRUE(check_hyperfield(*B, Scope::all()).passed());
  auto C = factor_hyperfield(*F7, {1, 2, 4});
  EXPECT_TRUE(check_hyperfield(*C, Scope::all()).passed());
  try {
    factor_hyperfield(*F5, {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TNotSubgroup);
  }
}

TEST(Finite, TrivialValuationOnSevenFactorFailsV4) {
  auto F7 = field_as_hyperfield(BaseField::prime(7));
  auto C = with_trivial_valuation(*factor_hyperfield(*F7, {1, 2, 4}));
  auto r = check_valuation(*C, Scope::all());
  ASSERT_EQ(r.find("V4")->status, Status::Fail);
  EXPECT_EQ(*r.find("V4")->witness, "[1]+[1] ⊇ {[1],[3]}");
  auto S = with_trivial_valuation(*krasner_S());
  EXPECT_EQ(check_valuation(*S, Scope::all()).find("V4")->status, Status::Fail);
}

TEST(Finite, LemmaSkippedWithoutValuation) {
  auto r = check_val_lemma(*krasner_S(), Scope::all());
  for (const auto& a : r.results) EXPECT_EQ(a.status, Status::Skipped);
}

TEST(Quotient, ZeroBallFromCancellation) {
  auto H = f3(1);
  auto s = hypersum(*H, H->parse("1"), H->parse("-1"));
  EXPECT_EQ(s.kind, SumSet::Kind::ZeroBall);
  EXPECT_EQ(s.floor.str(), "(1)");
}

TEST(Quotient, Distances) {
  auto H = make_quotient(parse_ground("f3"), InitialSegment::upto(GroupElem{2}));
  EXPECT_EQ(ultrametric_d(*H, H->parse("1"), H->parse("1+x")), GroupElem{1});
  EXPECT_TRUE(ultrametric_d(*H, H->parse("x"), H->parse("x")).is_inf());
  auto Z = make_quotient(parse_ground("f3"), InitialSegment::zero(1));
  EXPECT_EQ(ultrametric_d(*Z, Z->parse("1"), Z->parse("2")), GroupElem{0});
}

TEST(Quotient, NarySums) {
  auto H = f3(1);
  auto one = H->parse("1");
  auto s = nary_sum(*H, {one, one, one});
  EXPECT_EQ(s.kind, SumSet::Kind::ZeroBall);
  EXPECT_EQ(s.floor.str(), "(1)");
  auto t = nary_sum(*H, {one, H->parse("x"), H->parse("x^2*(1+x)/(1-x)")});
  ASSERT_EQ(t.kind, SumSet::Kind::Singleton);
  EXPECT_TRUE(H->eq(t.witness, H->parse("1+x")));
  EXPECT_THROW(nary_sum(*H, {one}), Error);
}

TEST(Quotient, ThetaWindow) {
  auto H = f3(1);
  EXPECT_EQ(H->show(H->parse("2+x+x^5")), "[2 + x]");
  auto Z = make_quotient(parse_ground("q2"), InitialSegment::zero(2));
  EXPECT_TRUE(Z->eq(Z->parse("y*(1+x)"), Z->parse("y")));
}

TEST(Quotient, QuotientValued) {
  HandlePtr H3 = f3(3);
  auto H1 = quotient_valued(H3, InitialSegment::upto(GroupElem{1}));
  EXPECT_EQ(H1->norm(), InitialSegment::upto(GroupElem{1}));
  EXPECT_EQ(quotient_valued(H3, InitialSegment::upto(GroupElem{5})).get(), H3.get());
  EXPECT_EQ(quotient_valued(H3, InitialSegment::zero(1))->norm().kind(), InitialSegment::Kind::Zero);
}

class QuotientAxioms : public ::testing::TestWithParam<int> {};

TEST_P(QuotientAxioms, SampledAxiomsHold) {
  auto H = f3(GetParam());
  auto scope = Scope::sampled(400, 7);
  auto h = check_hyperfield(*H, scope);
  EXPECT_TRUE(h.passed()) << h.summary();
  auto v = check_valuation(*H, scope);
  EXPECT_TRUE(v.passed()) << v.summary();
  auto l = check_val_lemma(*H, scope);
  EXPECT_TRUE(l.passed()) << l.summary() << statuses(l);
}

INSTANTIATE_TEST_SUITE_P(Norms, QuotientAxioms, ::testing::Values(0, 1, 2, 3));

TEST(Quotient, RankTwoAxioms) {
  auto H = make_quotient(parse_ground("q2"), InitialSegment::upto(GroupElem{0, 2}));
  auto scope = Scope::sampled(300, 3);
  EXPECT_TRUE(check_hyperfield(*H, scope).passed()) << check_hyperfield(*H, scope).summary();
  EXPECT_TRUE(check_valuation(*H, scope).passed()) << check_valuation(*H, scope).summary();
  auto C = make_quotient(parse_ground("q2"), InitialSegment::cone(2, 1));
  EXPECT_TRUE(check_valuation(*C, scope).passed()) << check_valuation(*C, scope).summary();
}
