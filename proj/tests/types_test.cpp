#include <gtest/gtest.h>

#include "ssnmf/types.hpp"
#include "test_support.hpp"

namespace ssnmf {
namespace {

TEST(CoClusterMatrix, IdentityIsValid) {
  const auto p = CoClusterMatrix::validate(Matrix::Identity(2, 2));
  EXPECT_EQ(p.n(), 2);
  EXPECT_FALSE(p.psd_warning());
  EXPECT_NEAR(p.spectral_norm(), 1.0, 1e-12);
}

TEST(CoClusterMatrix, RejectsNegativeEntries) {
  Matrix m(2, 2);
  m << 1.0, -0.5, -0.5, 1.0;
  try {
    CoClusterMatrix::validate(m);
    FAIL() << "expected NegativeEntry";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeEntry);
  }
}

TEST(CoClusterMatrix, GaussianPairIsWarningFree) {
  Matrix m(2, 2);
  m << 1.0, 0.3679, 0.3679, 1.0;
  const auto p = CoClusterMatrix::validate(m);
  EXPECT_FALSE(p.psd_warning());
  // Eigenvalues 1 +- 0.3679.
  EXPECT_NEAR(p.spectral_norm(), 1.3679, 1e-10);
  EXPECT_NEAR(p.min_eigenvalue(), 1.0 - 0.3679, 1e-8);
}

TEST(CoClusterMatrix, RejectsNonSquare) {
  try {
    CoClusterMatrix::validate(Matrix::Ones(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSquare);
  }
}

TEST(CoClusterMatrix, SymmetrizesTinyAsymmetry) {
  Matrix m(2, 2);
  m << 1.0, 0.5, 0.5 + 1e-14, 1.0;
  const auto p = CoClusterMatrix::validate(m);
  EXPECT_EQ(p.entries()(0, 1), p.entries()(1, 0));
}

TEST(CoClusterMatrix, RejectsLargeAsymmetry) {
  Matrix m(2, 2);
  m << 1.0, 0.5, 0.6, 1.0;
  try {
    CoClusterMatrix::validate(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AsymmetryTooLarge);
  }
}

TEST(CoClusterMatrix, WarnsOnIndefiniteInput) {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;  // eigenvalues +-1
  const auto p = CoClusterMatrix::validate(m);
  EXPECT_TRUE(p.psd_warning());
  EXPECT_NEAR(p.min_eigenvalue(), -1.0, 1e-8);
}

TEST(VertexMatrix, ToDense) {
  const auto w = vertex_to_dense({{0, 1}}, 2);
  Matrix want(2, 2);
  want << 1, 0, 0, 1;
  EXPECT_EQ(w.entries(), want);

  const auto w3 = vertex_to_dense({{0, 0, 0}}, 2);
  Matrix want3(3, 2);
  want3 << 1, 0, 1, 0, 1, 0;
  EXPECT_EQ(w3.entries(), want3);
}

TEST(VertexMatrix, OutOfRangeIndex) {
  try {
    vertex_to_dense({{0, 2}}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(VertexMatrix, ArgmaxRoundTrip) {
  auto rng = testing::rng_for(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<Index> dim(1, 20), cols(2, 8);
    const Index n = dim(rng);
    const Index k = cols(rng);
    std::uniform_int_distribution<Index> pick(0, k - 1);
    VertexMatrix v;
    for (Index i = 0; i < n; ++i) v.row_indices.push_back(pick(rng));
    const auto dense = vertex_to_dense(v, k);
    ASSERT_TRUE(dense.is_feasible());
    for (Index i = 0; i < n; ++i) {
      Index arg = 0;
      dense.entries().row(i).maxCoeff(&arg);
      EXPECT_EQ(arg, v.row_indices[static_cast<std::size_t>(i)]);
    }
  }
}

TEST(FactorMatrix, ConstructorsAreFeasible) {
  auto rng = testing::rng_for(3);
  EXPECT_TRUE(FactorMatrix::barycenter(5, 3).is_feasible());
  for (double alpha : {0.05, 0.1, 1.0, 5.0}) {
    const auto w = FactorMatrix::dirichlet(40, 6, alpha, rng);
    EXPECT_TRUE(w.is_feasible()) << "alpha " << alpha;
    EXPECT_LE(w.infeasibility(), kRowSumTolerance);
  }
}

TEST(FactorMatrix, RejectsInfeasible) {
  Matrix m(1, 2);
  m << 0.7, 0.7;
  EXPECT_THROW(FactorMatrix::from_entries(m), Error);
  m << 1.5, -0.5;
  EXPECT_THROW(FactorMatrix::from_entries(m), Error);
  EXPECT_THROW(FactorMatrix::from_entries(Matrix::Ones(3, 1)), Error);
}

TEST(SolverTrace, TracksMinimumGap) {
  SolverTrace trace;
  EXPECT_TRUE(std::isinf(trace.min_gap_so_far()));
  trace.push({0, 1.0, 3.0, 0.1, 0.0});
  trace.push({1, 0.9, 1.0, 0.1, 0.1});
  trace.push({2, 0.8, 2.0, 0.1, 0.2});
  trace.push({3, 0.7, std::nullopt, 0.1, 0.3});
  EXPECT_EQ(trace.min_gap_so_far(), 1.0);
  EXPECT_EQ(trace.size(), 4u);
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.check());
  cfg.epsilon = 0.0;
  EXPECT_THROW(cfg.check(), Error);
  cfg = {};
  cfg.max_iterations = 0;
  EXPECT_THROW(cfg.check(), Error);
  cfg = {};
  cfg.curvature_C = -1.0;
  try {
    cfg.check();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveCurvature);
  }
}

}  // namespace
}  // namespace ssnmf
