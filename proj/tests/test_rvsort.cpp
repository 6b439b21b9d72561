#include "hyperval/errors.hpp"
#include "hyperval/quotient.hpp"
#include "hyperval/rvsort.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace hv;

namespace {

SequenceStructure qz() { return {BaseField::rationals(), 1}; }

// Breaks half-associativity on one chosen triple of nonzero sums.
class SkewSort : public SplitSort {
 public:
  SkewSort() : SplitSort(qz()) {}
  HyperElem oplus(const HyperElem& a, const HyperElem& b) const override {
    const auto& x = rv().rep(a);
    const auto& y = rv().rep(b);
    if (!x.zero && !y.zero && x.g == y.g && x.g == GroupElem{1} && x.f + y.f == 3) return rv().make(7, x.g);
    return SplitSort::oplus(a, b);
  }
};

// Absorbs differently against 1 and against 2.
class NonUniformSort : public SplitSort {
 public:
  NonUniformSort() : SplitSort(qz()) {}
  HyperElem oplus(const HyperElem& a, const HyperElem& b) const override {
    const auto& x = rv().rep(a);
    const auto& y = rv().rep(b);
    if (!x.zero && !y.zero && x.g == GroupElem{1} && y.g == GroupElem{0} && y.f == 2) return a;
    if (!x.zero && !y.zero && y.g == GroupElem{1} && x.g == GroupElem{0} && x.f == 2) return b;
    return SplitSort::oplus(a, b);
  }
};

}  // namespace

TEST(RV, BoxplusCases) {
  RVHyperfield H(qz());
  auto a = H.parse("(1; 0)");
  auto s = H.add(a, a);
  ASSERT_EQ(s.kind, SumSet::Kind::Singleton);
  EXPECT_EQ(H.show(s.witness), "(2; 0)");
  EXPECT_EQ(H.show(H.add(a, H.parse("(5; 3)")).witness), "(1; 0)");
  auto z = H.add(a, H.parse("(-1; 0)"));
  EXPECT_EQ(z.kind, SumSet::Kind::ZeroBall);
  EXPECT_TRUE(H.contains(z, H.parse("(4; 1)")));
  EXPECT_TRUE(H.contains(z, H.zero()));
  EXPECT_FALSE(H.contains(z, H.parse("(4; 0)")));
}

TEST(RV, Oplus) {
  SplitSort R(qz());
  const auto& H = R.rv();
  EXPECT_TRUE(R.is_zero(R.oplus(H.parse("(1;0)"), H.parse("(-1;0)"))));
  EXPECT_EQ(R.show(R.oplus(H.parse("(2;0)"), H.parse("(3;0)"))), "(5; 0)");
  EXPECT_EQ(R.show(R.oplus(H.parse("(1;2)"), H.parse("(1;0)"))), "(1; 0)");
}

TEST(RV, AxiomsHoldOnSplitSorts) {
  for (auto S : {qz(), SequenceStructure{BaseField::prime(3), 2}}) {
    SplitSort R(S);
    auto a = check_rv_axioms(R, Scope::sampled(500, 11));
    EXPECT_TRUE(a.passed()) << a.summary();
    auto d = derive_rv8_9_10(R, Scope::sampled(500, 11));
    EXPECT_TRUE(d.passed()) << d.summary();
  }
}

TEST(RV, PlantedAssociativityDefect) {
  SkewSort R;
  Scope scope = Scope::sampled(4000, 2);
  auto r = check_rv_axioms(R, scope);
  EXPECT_EQ(r.find("RV3")->status, Status::Fail) << r.summary();
}

TEST(RV, NonUniformAbsorptionBreaksOrder) {
  NonUniformSort R;
  auto d = derive_rv8_9_10(R, Scope::sampled(4000, 5));
  ASSERT_EQ(d.find("RV10")->status, Status::Fail) << d.summary();
  EXPECT_NE(d.find("RV10")->witness->find("well-definedness"), std::string::npos) << *d.find("RV10")->witness;
}

TEST(RV, KrasnerTableFailsFieldAxiom) {
  TableSort R(krasner_K());
  auto r = check_rv_axioms(R, Scope::all());
  EXPECT_EQ(r.find("RV6")->status, Status::Fail);
}

TEST(RV, GuardedSum) {
  SplitSort R(qz());
  const auto& H = R.rv();
  auto same = guarded_oplus(R, {H.parse("(1;0)"), H.parse("(2;0)"), H.parse("(-3;0)")});
  EXPECT_TRUE(R.is_zero(same));
  auto distinct = guarded_oplus(R, {H.parse("(1;2)"), H.parse("(2;0)"), H.parse("(4;1)")});
  EXPECT_EQ(R.show(distinct), "(2; 0)");
  EXPECT_THROW(guarded_oplus(R, {H.parse("(1;0)"), H.parse("(-1;0)"), H.parse("(1;1)")}), Error);
}

TEST(RV, GuardedSumPermutations) {
  SplitSort R(qz());
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 5));
    std::vector<HyperElem> xs;
    bool same = rng.chance(1, 2);
    for (std::size_t j = 0; j < n; ++j)
      xs.push_back(R.sample_with_value(rng, same ? GroupElem{1} : GroupElem{static_cast<std::int64_t>(j)}));
    HyperElem ref = guarded_oplus(R, xs);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      HyperElem acc = xs[idx[0]];
      for (std::size_t j = 1; j < n; ++j) acc = R.oplus(acc, xs[idx[j]]);
      ASSERT_TRUE(R.eq(acc, ref));
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
}

TEST(RV, RecoverGamma) {
  auto g = recover_gamma(to_stringent(qz()));
  EXPECT_EQ(g.rank, 1u);
  auto s = recover_gamma(krasner_S());
  EXPECT_EQ(s.rank, 0u);
  EXPECT_EQ(s.classes, 1u);
  auto F7 = field_as_hyperfield(BaseField::prime(7));
  try {
    recover_gamma(factor_hyperfield(*F7, {1, 2, 4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStringent);
  }
  try {
    recover_gamma(make_quotient(parse_ground("f3"), InitialSegment::upto(GroupElem{1})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStringent);
  }
}

TEST(RV, RecoveredOrderMatchesValues) {
  auto H = to_stringent({BaseField::prime(5), 2});
  auto g = recover_gamma(H);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    auto a = H->sample(rng);
    if (H->is_zero(a)) continue;
    EXPECT_EQ(g.nu(a), H->val(a));
  }
}

TEST(RV, StringentRoundTrip) {
  for (auto S : {qz(), SequenceStructure{BaseField::prime(5), 2}}) {
    auto H = to_stringent(S);
    EXPECT_EQ(from_stringent(H), S);
  }
  try {
    from_stringent(krasner_S());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FNotField);
  }
  EXPECT_EQ(from_stringent(field_as_hyperfield(BaseField::prime(5))), (SequenceStructure{BaseField::prime(5), 0}));
}
