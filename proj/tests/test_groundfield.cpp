#include "hyperval/errors.hpp"
#include "hyperval/quotient.hpp"
#include "hyperval/rf.hpp"
#include "hyperval/rng.hpp"

#include <gtest/gtest.h>

using namespace hv;

namespace {

const std::vector<std::string> YX{"y", "x"};
const BaseField Q = BaseField::rationals();

FieldSeries ex(const std::string& text, const GroupElem& cut) { return expand(parse_rf(text, YX), Q, 2, cut); }

}  // namespace

TEST(Ground, ParseTrees) {
  EXPECT_EQ(show_ast(parse_rf("1/(1-x)", YX), YX), "Div(1,Sub(1,x))");
  EXPECT_EQ(show_ast(parse_rf("y^2*(x+2)", YX), YX), "Mul(Pow(y,2),Add(x,2))");
  try {
    parse_rf("x+", YX);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Ground, Expansion) {
  EXPECT_EQ(ex("1/(1-x)", GroupElem{0, 4}).str(YX), "1 + x + x^2 + x^3 + O(t^(0,4))");
  EXPECT_EQ(ex("x+y", GroupElem{2, 0}).str(YX), "x + y");
  EXPECT_EQ(ex("(1-x^2)/(1-x)", GroupElem{0, 3}).str(YX), "1 + x");
}

TEST(Ground, Values) {
  EXPECT_EQ(ex("x + x^2", GroupElem{5, 0}).val(), (GroupElem{0, 1}));
  EXPECT_TRUE(FieldSeries(Q, 2).val().is_inf());
  auto empty = FieldSeries::from_terms(Q, 2, {}, GroupElem{0, 3});
  try {
    empty.val();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndistinguishableFromZero);
  }
}

TEST(Ground, ThetaWindows) {
  QuotientField H1(parse_ground("q"), InitialSegment::upto(GroupElem{1}));
  EXPECT_EQ(H1.rep(H1.parse("2 + x + x^5")).str({"x"}), "2 + x");
  QuotientField H0(parse_ground("q2"), InitialSegment::zero(2));
  EXPECT_TRUE(H0.eq(H0.parse("y*(1+x)"), H0.parse("y")));
  QuotientField H3(parse_ground("q2"), InitialSegment::upto(GroupElem{0, 3}));
  auto coarse = FieldSeries::from_terms(Q, 2, {{GroupElem{0, 0}, 1}}, GroupElem{0, 1});
  try {
    H3.theta(coarse);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientPrecision);
  }
}

TEST(Ground, SampledHomomorphisms) {
  Rng rng(17);
  auto rho = InitialSegment::upto(GroupElem{0, 2});
  QuotientField H(parse_ground("q2"), rho);
  GroupElem cut{3, 0};
  for (int i = 0; i < 300; ++i) {
    RatFunc a = random_rf(rng, Q, 2, true), b = random_rf(rng, Q, 2, true);
    auto ea = expand(a, cut), eb = expand(b, cut);
    ASSERT_TRUE((expand(a * b, cut) - ea * eb).truncated(cut).terms().empty());
    ASSERT_TRUE((expand(a + b, cut) - ea - eb).truncated(cut).terms().empty());
    ASSERT_EQ((a * b).val(), a.val() + b.val());
    if (!(a + b).is_zero()) ASSERT_GE((a + b).val(), std::min(a.val(), b.val()));
    ASSERT_TRUE(H.eq(H.theta(a * b), H.mul(H.theta(a), H.theta(b))));
    RatFunc c = rng.chance(1, 2) ? a * (RatFunc::poly(FieldSeries::constant(Q, 2, 1)) + b * b * RatFunc::poly(FieldSeries::monomial(Q, 2, GroupElem{0, 3} - b.val() - b.val(), 1))) : b;
    bool same = H.eq(H.theta(a), H.theta(c));
    RatFunc d = a - c;
    bool direct = d.is_zero() || gt_segment(d.val(), rho, a.val());
    ASSERT_EQ(same, direct);
  }
}
