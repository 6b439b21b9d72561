#include "hyperval/errors.hpp"
#include "hyperval/reconstruct.hpp"

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

TEST(Reconstruct, ZeroNTowerRankTwo) {
  auto R = reconstruct(builtin_tower("upto-0n"), ConvexSubgroup{2, 1}, 3, Scope::sampled(60, 1));
  EXPECT_TRUE(R.report.passed()) << R.report.summary();
  EXPECT_EQ(R.sort->nu_rank(), 1u);
  for (const auto& r : R.report.results) EXPECT_GT(r.trials, 0u) << r.axiom;
}

TEST(Reconstruct, RankOneField) {
  auto R = reconstruct(builtin_tower("rank1-f3"), ConvexSubgroup{1, 1}, 3, Scope::sampled(60, 2));
  EXPECT_TRUE(R.report.passed()) << R.report.summary();
  EXPECT_EQ(R.sort->nu_rank(), 0u);
}

TEST(Reconstruct, FieldModeTower) {
  auto R = reconstruct(builtin_tower("upto-n0"), ConvexSubgroup{2, 2}, 2, Scope::sampled(30, 3));
  EXPECT_TRUE(R.report.passed()) << R.report.summary();
  EXPECT_TRUE(R.limit->field_mode());
}

TEST(Reconstruct, Rejections) {
  EXPECT_EQ(code_of([] { reconstruct(builtin_tower("upto-1m"), ConvexSubgroup{2, 1}, 3); }),
            ErrorCode::DoublingUnavailable);
  EXPECT_EQ(code_of([] { reconstruct(builtin_tower("upto-0n"), ConvexSubgroup{2, 2}, 3); }),
            ErrorCode::HypothesisMismatch);
}

TEST(Reconstruct, StagewiseIsomorphism) {
  auto R = reconstruct(builtin_tower("upto-0n"), ConvexSubgroup{2, 1}, 3, Scope::sampled(20, 4));
  auto r = verify_theorem(R, {0, 1, 2, 3}, Scope::sampled(40, 5));
  EXPECT_TRUE(r.passed()) << r.summary();
  for (const auto& a : r.results) EXPECT_GT(a.trials, 0u) << a.axiom;
  auto F = reconstruct(builtin_tower("rank1-f3"), ConvexSubgroup{1, 1}, 3, Scope::sampled(20, 4));
  auto f = verify_theorem(F, {0, 1, 2, 3}, Scope::sampled(40, 6));
  EXPECT_TRUE(f.passed()) << f.summary();
}

TEST(Reconstruct, PlantedDefectBreaksValues) {
  auto R = reconstruct(builtin_tower("upto-0n"), ConvexSubgroup{2, 1}, 3, Scope::sampled(20, 4));
  auto r = verify_theorem(R, {2}, Scope::sampled(40, 7), true);
  EXPECT_EQ(r.find("value")->status, Status::Fail) << r.summary();
  EXPECT_EQ(r.find("canonical-form")->status, Status::Pass);
}

TEST(Reconstruct, ExampleIsomorphism) {
  for (std::size_t n : {1u, 4u}) {
    auto r = paper_example_iso(n, Scope::sampled(100, 8));
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}
