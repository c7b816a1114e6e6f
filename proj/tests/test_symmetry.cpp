#include <gtest/gtest.h>

#include "cpst/error.hpp"
#include "cpst/instances.hpp"
#include "cpst/symmetry.hpp"
#include "support.hpp"

using namespace cpst;
using cpst::testing::random_cps;
using cpst::testing::random_tensor;
using cpst::testing::coords;
using cpst::testing::cps_basis;

TEST(Symmetry, ParsesAndPrintsTags) {
  for (auto tag : {SymmetryTag::general, SymmetryTag::symmetric, SymmetryTag::hermitian, SymmetryTag::ps,
                   SymmetryTag::skew_ps, SymmetryTag::cps})
    EXPECT_EQ(parse_symmetry_tag(to_string(tag)), tag);
  EXPECT_THROW(parse_symmetry_tag("psd"), InvalidInput);
}

TEST(Symmetry, ClassifiesGeneratedInstances) {
  EXPECT_EQ(classify_symmetry(generate_instance({InstanceKind::cps_orthonormal, 3, 2, 1, {}}).tensor).tag,
            SymmetryTag::cps);
  EXPECT_EQ(classify_symmetry(generate_instance({InstanceKind::skew_ps, 3, 2, 1, {}}).tensor).tag,
            SymmetryTag::skew_ps);
  EXPECT_EQ(classify_symmetry(generate_instance({InstanceKind::ps_pairs, 3, 2, 1, {}}).tensor).tag,
            SymmetryTag::ps);
  EXPECT_EQ(classify_symmetry(random_tensor(3, 1)).tag, SymmetryTag::general);
}

TEST(Symmetry, RealPartialSymmetricReportsPs) {
  const Tensor4 t = cpst::testing::two_by_two_pattern();
  EXPECT_EQ(classify_symmetry(t).tag, SymmetryTag::ps);
  EXPECT_TRUE(satisfies(t, SymmetryTag::cps));
}

TEST(Symmetry, MatrixTimesConjugateIsCps) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Eigen::MatrixXcd m = cpst::testing::random_matrix(3, 3, s);
    const Eigen::MatrixXcd x = m + m.transpose();
    EXPECT_EQ(classify_symmetry(outer_product(x, Eigen::MatrixXcd(x.conjugate()))).tag, SymmetryTag::cps);
    const Eigen::MatrixXcd r = x.real().cast<Complex>();
    const Tensor4 real_term = outer_product(r, r);
    EXPECT_EQ(classify_symmetry(real_term).tag, SymmetryTag::ps);
    EXPECT_TRUE(satisfies(real_term, SymmetryTag::cps));
  }
}

TEST(Symmetry, FullySymmetricTensor) {
  const Eigen::VectorXcd x = cpst::testing::random_vector(3, 2, false);
  EXPECT_EQ(classify_symmetry(outer_product(x, x, x, x)).tag, SymmetryTag::symmetric);
}

TEST(Symmetry, ComplexPartialSymmetricWithoutConjugation) {
  const Tensor4 t = project_ps(random_tensor(3, 3));
  EXPECT_EQ(classify_symmetry(t).tag, SymmetryTag::ps);
  EXPECT_FALSE(satisfies(t, SymmetryTag::cps));
}

TEST(Symmetry, HermitianOnlyTensor) {
  const Tensor4 g = random_tensor(2, 4);
  const Tensor4 h = 0.5 * (g + permute_conjugate(g, {3, 4, 1, 2}, true));
  EXPECT_EQ(classify_symmetry(h).tag, SymmetryTag::hermitian);
}

TEST(Symmetry, CpsInvariantUnderPairExchangeWithConjugation) {
  const Tensor4 t = random_cps(3, 5);
  EXPECT_LT(max_abs_diff(permute_conjugate(t, {3, 4, 1, 2}, true), t), 1e-14);
  EXPECT_LT(max_abs_diff(permute_conjugate(t, {2, 1, 3, 4}), t), 1e-14);
}

TEST(Symmetry, ViolationsNameTheIdentity) {
  Tensor4 t = random_cps(2, 6);
  t(0, 1, 0, 0) += 1.0;
  const auto bad = violations(t, SymmetryTag::cps);
  ASSERT_FALSE(bad.empty());
  EXPECT_EQ(bad.front().identity, Identity::swap_first_pair);
  try {
    require_symmetry(t, SymmetryTag::cps, "op");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("T[i,j,k,l] = T[j,i,k,l]"), std::string::npos);
  }
}

TEST(Symmetry, ToleranceIsRelative) {
  Tensor4 t = 1e6 * random_cps(2, 7);
  t(0, 1, 0, 0) += 1e-6;
  EXPECT_TRUE(satisfies(t, SymmetryTag::cps));
  EXPECT_FALSE(satisfies(t, SymmetryTag::cps, 1e-16));
}

TEST(Symmetry, ProjectionMatchesNullSpaceOracle) {
  for (int n : {2, 3}) {
    const Eigen::MatrixXd b = cps_basis(n);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Tensor4 y = random_tensor(n, 100 + s);
      const Eigen::VectorXd expected = b * (b.transpose() * coords(y));
      EXPECT_LT((coords(project_cps(y)) - expected).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
    }
  }
}

TEST(Symmetry, ProjectionIsIdempotentAndNonexpansive) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Tensor4 a = random_tensor(3, 200 + s), b = random_tensor(3, 300 + s);
    const Tensor4 pa = project_cps(a);
    EXPECT_LT(max_abs_diff(project_cps(pa), pa), 1e-14);
    EXPECT_LE(frobenius_norm(pa - project_cps(b)), frobenius_norm(a - b) + 1e-12);
    EXPECT_TRUE(satisfies(pa, SymmetryTag::cps));
  }
}

TEST(Symmetry, ProjectionFixesCpsTensors) {
  const Tensor4 t = random_cps(3, 8);
  EXPECT_LT(max_abs_diff(project_cps(t), t), 1e-15);
}

TEST(Symmetry, PsProjectionProducesPs) {
  const Tensor4 t = project_ps(random_tensor(3, 9));
  EXPECT_TRUE(satisfies(t, SymmetryTag::ps));
}
