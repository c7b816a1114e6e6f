#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cpst/error.hpp"
#include "cpst/instances.hpp"
#include "cpst/rank_one.hpp"
#include "cpst/symmetry.hpp"

using namespace cpst;

namespace {

const InstanceKind kAllKinds[] = {InstanceKind::ps_pairs,       InstanceKind::ps_orthonormal,
                                  InstanceKind::cps_orthonormal, InstanceKind::cps_vector_sum,
                                  InstanceKind::skew_ps,         InstanceKind::rank1_cps};

int terms_for(InstanceKind kind) { return kind == InstanceKind::rank1_cps ? 1 : 3; }

}  // namespace

TEST(Instances, AreDeterministicPerSeed) {
  for (auto kind : kAllKinds) {
    const InstanceSpec spec{kind, 4, terms_for(kind), 123, {}};
    const auto a = generate_instance(spec);
    const auto b = generate_instance(spec);
    EXPECT_EQ(a.tensor, b.tensor) << to_string(kind);
    EXPECT_EQ(a.truth.lambdas, b.truth.lambdas);
    auto other = spec;
    other.seed = 124;
    EXPECT_NE(a.tensor, generate_instance(other).tensor) << to_string(kind);
  }
}

TEST(Instances, HaveTheExpectedSymmetry) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto gen = [&](InstanceKind k) { return generate_instance({k, 4, terms_for(k), s, {}}).tensor; };
    EXPECT_TRUE(satisfies(gen(InstanceKind::ps_pairs), SymmetryTag::ps));
    EXPECT_TRUE(gen(InstanceKind::ps_pairs).is_real());
    EXPECT_TRUE(satisfies(gen(InstanceKind::ps_orthonormal), SymmetryTag::ps));
    EXPECT_EQ(classify_symmetry(gen(InstanceKind::cps_orthonormal)).tag, SymmetryTag::cps);
    EXPECT_EQ(classify_symmetry(gen(InstanceKind::cps_vector_sum)).tag, SymmetryTag::cps);
    EXPECT_EQ(classify_symmetry(gen(InstanceKind::skew_ps)).tag, SymmetryTag::skew_ps);
    EXPECT_EQ(classify_symmetry(gen(InstanceKind::rank1_cps)).tag, SymmetryTag::cps);
  }
}

TEST(Instances, OrthonormalFactorsAreOrthonormalAndSymmetric) {
  for (auto kind : {InstanceKind::ps_orthonormal, InstanceKind::cps_orthonormal}) {
    const auto inst = generate_instance({kind, 3, 6, 5, {}});
    const auto& e = inst.truth.matrices;
    ASSERT_EQ(e.size(), 6u);
    for (std::size_t i = 0; i < e.size(); ++i) {
      EXPECT_LT((e[i] - e[i].transpose()).norm(), 1e-14);
      for (std::size_t j = 0; j < e.size(); ++j)
        EXPECT_NEAR(std::abs((e[j].adjoint() * e[i]).trace()), i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Instances, RandomCoefficientsAreSeparated) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int r = 1 + static_cast<int>(s % 9);
    auto lam = generate_instance({InstanceKind::cps_orthonormal, 5, r, s, {}}).truth.lambdas;
    ASSERT_EQ(static_cast<int>(lam.size()), r);
    std::vector<double> mags;
    for (double v : lam) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    EXPECT_GE(mags.front(), 0.1);
    EXPECT_LE(mags.back(), 1.0);
    for (std::size_t i = 1; i < mags.size(); ++i) EXPECT_GE(mags[i] - mags[i - 1], 0.05 * mags.back());
  }
}

TEST(Instances, ExplicitCoefficientsAreUsedVerbatim) {
  const std::vector<double> lam{2.0, -1.0};
  EXPECT_EQ(generate_instance({InstanceKind::ps_pairs, 3, 2, 0, lam}).truth.lambdas, lam);
  EXPECT_EQ(generate_instance({InstanceKind::cps_vector_sum, 3, 2, 0, {}}).truth.lambdas,
            std::vector<double>(2, 1.0));
}

TEST(Instances, RankOneVectorIsUnitAndPhaseNormalized) {
  const auto inst = generate_instance({InstanceKind::rank1_cps, 4, 1, 3, {}});
  const auto& x = inst.truth.vectors.at(0);
  EXPECT_NEAR(x.norm(), 1.0, 1e-14);
  Eigen::Index k = 0;
  x.cwiseAbs().maxCoeff(&k);
  EXPECT_NEAR(x(k).imag(), 0.0, 1e-15);
  EXPECT_GT(x(k).real(), 0.0);
}

TEST(Instances, RankOneKindPassesRankOneTest) {
  for (std::uint64_t s = 0; s < 10; ++s)
    EXPECT_TRUE(is_rank_one_tensor(generate_instance({InstanceKind::rank1_cps, 2, 1, s, {}}).tensor));
}

TEST(Instances, RejectInfeasibleSpecs) {
  EXPECT_THROW(generate_instance({InstanceKind::cps_orthonormal, 2, 4, 0, {}}), InvalidInput);
  EXPECT_THROW(generate_instance({InstanceKind::ps_pairs, 0, 1, 0, {}}), InvalidInput);
  EXPECT_THROW(generate_instance({InstanceKind::ps_pairs, 3, 0, 0, {}}), InvalidInput);
  EXPECT_THROW(generate_instance({InstanceKind::rank1_cps, 3, 2, 0, {}}), InvalidInput);
  EXPECT_THROW(generate_instance({InstanceKind::ps_pairs, 3, 2, 0, std::vector<double>{1.0}}), InvalidInput);
  EXPECT_THROW(generate_instance({InstanceKind::ps_pairs, 3, 10, 0, {}}), InvalidInput);
  EXPECT_THROW(generate_instance({InstanceKind::ps_pairs, 3, 1, 0, std::vector<double>{NAN}}), InvalidInput);
}

TEST(Instances, KindNamesRoundTrip) {
  for (auto kind : kAllKinds) EXPECT_EQ(parse_instance_kind(to_string(kind)), kind);
  EXPECT_THROW(parse_instance_kind("bogus"), InvalidInput);
}

TEST(DeriveSeed, IsDeterministicAndSpreads) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 20; ++s)
    for (std::uint64_t i = 0; i < 50; ++i) seen.insert(derive_seed(s, i));
  EXPECT_EQ(seen.size(), 1000u);
}
