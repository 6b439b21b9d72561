#include "hyperval/errors.hpp"
#include "hyperval/ogroup.hpp"
#include "hyperval/rng.hpp"

#include <gtest/gtest.h>

using namespace hv;

namespace {

GroupElem random_elem(Rng& rng, std::size_t n) {
  GroupElem::Coords c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(rng.uniform(-4, 4));
  return GroupElem(c);
}

std::vector<InitialSegment> segments() {
  return {InitialSegment::zero(2), InitialSegment::upto(GroupElem{0, 2}), InitialSegment::upto(GroupElem{1, 3}),
          InitialSegment::cone(2, 1), InitialSegment::cone(2, 2)};
}

}  // namespace

TEST(OGroup, LexOrderAndInfinity) {
  EXPECT_LT((GroupElem{0, 5}), (GroupElem{1, -7}));
  EXPECT_LT((GroupElem{3, 3}), GroupElem::infinity(2));
  EXPECT_TRUE(((GroupElem{1, 2}) + GroupElem::infinity(2)).is_inf());
  EXPECT_EQ(parse_group_elem("(0,-3)"), (GroupElem{0, -3}));
  EXPECT_EQ(parse_group_elem("4"), GroupElem{4});
  EXPECT_THROW(parse_group_elem("(1,2"), Error);
}

TEST(OGroup, SegmentMembership) {
  EXPECT_TRUE(seg_contains(InitialSegment::upto(GroupElem{0, 2}), GroupElem{0, 1}));
  EXPECT_FALSE(seg_contains(InitialSegment::upto(GroupElem{0, 2}), GroupElem{1, 0}));
  EXPECT_TRUE(seg_contains(InitialSegment::cone(2, 1), GroupElem{0, 5}));
  EXPECT_EQ(InitialSegment::cone(2, 0), InitialSegment::zero(2));
}

TEST(OGroup, ExceedsSegment) {
  auto z = GroupElem::zero(2);
  EXPECT_TRUE(gt_segment(GroupElem{0, 3}, InitialSegment::upto(GroupElem{0, 2}), z));
  EXPECT_FALSE(gt_segment(GroupElem{0, 2}, InitialSegment::upto(GroupElem{0, 2}), z));
  EXPECT_TRUE(gt_segment(GroupElem{1, -7}, InitialSegment::cone(2, 1), z));
}

TEST(OGroup, Doubling) {
  EXPECT_TRUE(seg_double_leq(InitialSegment::upto(GroupElem{0, 1}), InitialSegment::upto(GroupElem{0, 2})));
  for (std::int64_t m : {0, 1, 5, 100})
    EXPECT_FALSE(seg_double_leq(InitialSegment::upto(GroupElem{1, 0}), InitialSegment::upto(GroupElem{1, m})));
  EXPECT_TRUE(seg_double_leq(InitialSegment::zero(2), InitialSegment::zero(2)));
}

TEST(OGroup, QuotientMap) {
  EXPECT_EQ(quotient_map(GroupElem{3, 7}, ConvexSubgroup{2, 1}), GroupElem{3});
  EXPECT_EQ(quotient_map(GroupElem{0, 7}, ConvexSubgroup{2, 1}), GroupElem{0});
  EXPECT_EQ(quotient_map(GroupElem{-2, 5}, ConvexSubgroup{2, 2}).rank(), 0u);
}

TEST(OGroup, SampledProperties) {
  Rng rng(3);
  ConvexSubgroup d{3, 1};
  for (int i = 0; i < 10000; ++i) {
    auto a = random_elem(rng, 3), b = random_elem(rng, 3), c = random_elem(rng, 3);
    if (a < b) ASSERT_LT(a + c, b + c);
    ASSERT_EQ(quotient_map(a + b, d), quotient_map(a, d) + quotient_map(b, d));
    if (a <= b) ASSERT_LE(quotient_map(a, d), quotient_map(b, d));
  }
  for (const auto& rho : segments()) {
    for (int i = 0; i < 2000; ++i) {
      auto g = random_elem(rng, 2), h = random_elem(rng, 2);
      auto zero = GroupElem::zero(2);
      ASSERT_EQ(gt_segment(g, rho, zero), !seg_contains(rho, g) && zero < g) << rho.str() << " " << g.str();
      if (seg_contains(rho, g) && zero <= h && h <= g) ASSERT_TRUE(seg_contains(rho, h)) << rho.str();
    }
  }
}
