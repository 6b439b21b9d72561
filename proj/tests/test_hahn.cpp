#include "hyperval/errors.hpp"
#include "hyperval/hahn.hpp"
#include "hyperval/rf.hpp"
#include "hyperval/rng.hpp"
#include "hyperval/tower.hpp"

#include <gtest/gtest.h>

using namespace hv;

namespace {

SortPtr qz() { return std::make_shared<SplitSort>(SequenceStructure{BaseField::rationals(), 1}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Usage;
}

// Coefficients of sqrt(1+t) from the generalized binomial formula.
std::vector<mpq_class> binomial_half(std::size_t n) {
  std::vector<mpq_class> c{1};
  mpq_class k = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    k = k * (mpq_class(1, 2) - mpq_class(static_cast<long>(i) - 1)) / mpq_class(static_cast<long>(i));
    c.push_back(k);
  }
  return c;
}

mpq_class coef_at(const HahnSeries& s, std::int64_t e) {
  auto a = s.coeff(GroupElem{e});
  auto split = std::dynamic_pointer_cast<const SplitSort>(s.sort());
  const auto& r = split->rv().rep(a);
  return r.zero ? mpq_class(0) : r.f;
}

}  // namespace

TEST(Hahn, AddAndMultiply) {
  auto R = qz();
  auto a = hahn_from_poly(R, "1 + t");
  auto b = hahn_from_poly(R, "1 - t");
  EXPECT_EQ(show_hahn(hs_mul(a, b)), "(1; 0)*t^0 + (-1; 2)*t^2");
  EXPECT_EQ(show_hahn(hs_add(a, hahn_from_poly(R, "1"))), "(2; 0)*t^0 + (1; 1)*t^1");
  auto p = parse_hahn(R, "(1;0) + O(t^3)");
  auto z = hs_add(p, parse_hahn(R, "(-1;0)"));
  EXPECT_TRUE(z.terms().empty());
  EXPECT_EQ(*z.prec(), GroupElem{3});
  EXPECT_TRUE(hs_eq(hs_mul(hahn_from_poly(R, "t^-1"), hahn_from_poly(R, "t")), HahnSeries::one(R)));
  EXPECT_EQ(code_of([&] { hs_add(a, HahnSeries::one(qz())); }), ErrorCode::MixedSorts);
}

TEST(Hahn, ValuationAndPrecision) {
  auto R = qz();
  EXPECT_EQ(hs_val(hahn_from_poly(R, "1 + t")), GroupElem{0});
  EXPECT_TRUE(hs_val(HahnSeries::zero(R)).is_inf());
  EXPECT_EQ(code_of([&] { hs_val(parse_hahn(R, "O(t^3)")); }), ErrorCode::IndistinguishableFromZero);
  auto a = parse_hahn(R, "(1;0) + (1;1) + O(t^4)");
  auto b = parse_hahn(R, "(1;2) + O(t^5)");
  EXPECT_EQ(*hs_mul(a, b).prec(), GroupElem{5});
}

TEST(Hahn, InverseOracles) {
  auto R = qz();
  EXPECT_EQ(inverse_update_sign(), 1);
  EXPECT_EQ(show_hahn(hs_inverse(hahn_from_poly(R, "1 - t"), GroupElem{3})),
            "(1; 0)*t^0 + (1; 1)*t^1 + (1; 2)*t^2 + (1; 3)*t^3 + O(t^4)");
  auto m = hs_inverse(hahn_from_poly(R, "t"), GroupElem{3});
  EXPECT_TRUE(m.is_exact());
  EXPECT_EQ(show_hahn(m), "(1; -1)*t^-1");
  auto b = hs_inverse(hahn_from_poly(R, "2 + t"), GroupElem{2});
  EXPECT_EQ(show_hahn(b), "(1/2; 0)*t^0 + (-1/4; 1)*t^1 + (1/8; 2)*t^2 + O(t^3)");
  auto e = hs_sub(hs_mul(hahn_from_poly(R, "2 + t"), b.with_prec(std::nullopt)), HahnSeries::one(R));
  EXPECT_EQ(hs_val(e), GroupElem{3});
  EXPECT_EQ(code_of([&] { hs_inverse(HahnSeries::zero(R), GroupElem{1}); }), ErrorCode::ZeroDivision);
  EXPECT_EQ(code_of([&] { hs_inverse(parse_hahn(R, "(1;0) + O(t^2)"), GroupElem{3}); }), ErrorCode::InsufficientPrecision);
}

TEST(Hahn, InverseAgainstSeriesDivision) {
  auto R = qz();
  auto F = BaseField::rationals();
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    HahnSeries a = random_hahn(R, rng);
    std::vector<GroupElem> trace;
    HahnSeries b = hs_inverse(a, GroupElem{10}, &trace);
    for (std::size_t k = 1; k < trace.size(); ++k) ASSERT_LT(trace[k - 1], trace[k]);
    std::vector<Term> terms;
    for (const auto& t : a.terms()) terms.push_back({t.g, coef_at(a, t.g[0])});
    auto num = FieldSeries::constant(F, 1, 1);
    auto q = divide(num, FieldSeries::from_terms(F, 1, terms), *b.prec());
    for (std::int64_t e = -3; e < (*b.prec())[0]; ++e) ASSERT_EQ(coef_at(b, e), q.coeff(GroupElem{e})) << show_hahn(a);
  }
}

TEST(Hahn, RvProjection) {
  auto R = qz();
  EXPECT_EQ(R->show(rv_project(hahn_from_poly(R, "1 + t"))), "(1; 0)");
  EXPECT_EQ(R->show(rv_project(hahn_from_poly(R, "3*t^2 + t^5"))), "(3; 2)");
  EXPECT_TRUE(R->is_zero(rv_project(HahnSeries::zero(R))));
}

TEST(Hahn, RoundTripOnSplitSorts) {
  for (auto S : {SequenceStructure{BaseField::rationals(), 1}, SequenceStructure{BaseField::prime(3), 2}}) {
    SortPtr R = std::make_shared<SplitSort>(S);
    auto r = check_rv_round_trip(R, Scope::sampled(300, 3));
    EXPECT_TRUE(r.passed()) << r.summary();
    auto f = check_hahn_field(R, Scope::sampled(100, 4));
    EXPECT_TRUE(f.passed()) << f.summary();
  }
}

TEST(Hahn, RoundTripOnLimitSort) {
  auto L = limit_hyperfield(builtin_tower("upto-0n", 4));
  SortPtr R = std::make_shared<HyperfieldSort>(L, ConvexSubgroup{2, 1});
  auto r = check_rv_round_trip(R, Scope::sampled(60, 5));
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Hahn, HenselSquareRoot) {
  auto R = qz();
  HahnPoly f{hahn_from_poly(R, "-1 - t"), HahnSeries::zero(R), HahnSeries::one(R)};
  auto r = hensel_lift(f, HahnSeries::one(R), GroupElem{3});
  EXPECT_EQ(show_hahn(r), "(1; 0)*t^0 + (1/2; 1)*t^1 + (-1/8; 2)*t^2 + (1/16; 3)*t^3 + O(t^4)");
  auto r5 = hensel_lift(f, HahnSeries::one(R), GroupElem{5});
  auto c = binomial_half(5);
  for (std::int64_t e = 0; e <= 5; ++e) EXPECT_EQ(coef_at(r5, e), c[static_cast<std::size_t>(e)]) << e;
  HahnPoly g{hahn_from_poly(R, "-2 - t^3"), HahnSeries::one(R)};
  EXPECT_TRUE(hs_eq(hensel_lift(g, hahn_from_poly(R, "2"), GroupElem{6}), hahn_from_poly(R, "2 + t^3")));
  HahnPoly h{hahn_from_poly(R, "-t"), HahnSeries::zero(R), HahnSeries::one(R)};
  EXPECT_EQ(code_of([&] { hensel_lift(h, HahnSeries::zero(R), GroupElem{3}); }), ErrorCode::NewtonConditionFails);
}

TEST(Hahn, TextAndJson) {
  SortPtr R = std::make_shared<SplitSort>(SequenceStructure{BaseField::prime(3), 2});
  auto a = parse_hahn(R, "(1; (0,1))*t^(0,1) + (2; (1,-1)) + O(t^(2,0))");
  EXPECT_EQ(show_hahn(a), "(1; (0,1))*t^(0,1) + (2; (1,-1))*t^(1,-1) + O(t^(2,0))");
  auto j = hahn_to_json(a);
  EXPECT_TRUE(hs_eq(hahn_from_json(R, j), a));
  EXPECT_EQ(hahn_from_json(R, j).prec(), a.prec());
  EXPECT_EQ(code_of([&] { parse_hahn(R, "(1; (0,1))*t^(0,2)"); }), ErrorCode::Syntax);
}
