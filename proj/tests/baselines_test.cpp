#include <gtest/gtest.h>

#include "ssnmf/baselines.hpp"
#include "ssnmf/objective.hpp"
#include "ssnmf/planted.hpp"
#include "test_support.hpp"

namespace ssnmf {
namespace {

Vector project(std::initializer_list<double> v) {
  const std::vector<double> buf(v);
  return project_row_simplex(buf);
}

TEST(SimplexProjection, Examples) {
  EXPECT_EQ(project({0.5, 0.5}), (Vector(2) << 0.5, 0.5).finished());
  EXPECT_EQ(project({2.0, 0.0}), (Vector(2) << 1.0, 0.0).finished());
  EXPECT_EQ(project({-4.0}), (Vector(1) << 1.0).finished());
  const Vector got = project({0.8, 0.4, -0.2});
  const Vector want = testing::grid_refined_projection({0.8, 0.4, -0.2}, 2000);
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(SimplexProjection, MatchesGridOracle) {
  auto rng = testing::rng_for(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::array<double, 3> v{u(rng), u(rng), u(rng)};
    const Vector got = project_row_simplex(v);
    EXPECT_LT((got - testing::grid_refined_projection(v, 400)).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(SimplexProjection, IdempotentAndNonexpansive) {
  auto rng = testing::rng_for(14);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 7);
    std::vector<double> a(k), b(k);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    const Vector pa = project_row_simplex(a);
    const Vector pb = project_row_simplex(b);
    EXPECT_NEAR(pa.sum(), 1.0, 1e-12);
    EXPECT_GE(pa.minCoeff(), 0.0);
    const std::vector<double> pa_buf(pa.data(), pa.data() + pa.size());
    EXPECT_LT((project_row_simplex(pa_buf) - pa).cwiseAbs().maxCoeff(), 1e-14);
    const double du = (Vector::Map(a.data(), a.size()) - Vector::Map(b.data(), b.size())).norm();
    EXPECT_LE((pa - pb).norm(), du + 1e-12);
  }
}

TEST(SimplexProjection, RowsAreFeasible) {
  auto rng = testing::rng_for(15);
  const Matrix w = testing::random_uniform(7, 4, rng, -1.0, 2.0);
  EXPECT_TRUE(is_row_stochastic(project_rows(w)));
}

TEST(Pgd, StationaryInteriorStartStopsImmediately) {
  auto rng = testing::rng_for(16);
  const auto w0 = testing::random_feasible(8, 3, rng);
  const auto p = CoClusterMatrix::validate(w0.entries() * w0.entries().transpose());
  const auto r = pgd_solve(p, w0, {});
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace.terminal_reason, TerminalReason::GapBelowEpsilon);
  EXPECT_EQ(r.trace.back().objective, objective_value(p, w0.entries()));
  EXPECT_EQ(r.w.entries(), w0.entries());
}

TEST(Pgd, MonotoneAndReachesOptimumOnPlantedInstance) {
  const auto inst = planted_instance(30, 4, 9);
  PgdConfig cfg;
  cfg.max_iterations = 5000;
  const auto r = pgd_solve(inst.p, shared_initial_point(30, 4, 9), cfg);
  const auto it = r.trace.iterations();
  for (std::size_t t = 1; t < it.size(); ++t) EXPECT_LE(it[t].objective, it[t - 1].objective);
  EXPECT_LE(it.back().objective, 1e-4);
  EXPECT_TRUE(r.w.is_feasible());
  EXPECT_EQ(objective_value(inst.p, r.w.entries()), it.back().objective);
}

TEST(Pgd, StallRuleStops) {
  const auto inst = planted_instance(20, 3, 10);
  PgdConfig cfg;
  cfg.stall_tol = 1e-2;
  cfg.epsilon = 1e-300;
  const auto r = pgd_solve(inst.p, shared_initial_point(20, 3, 10), cfg);
  EXPECT_EQ(r.trace.terminal_reason, TerminalReason::ObjectiveStalled);
}

TEST(Pgd, RejectsBadConfig) {
  PgdConfig cfg;
  cfg.backtrack_factor = 1.0;
  EXPECT_THROW(cfg.check(), Error);
  cfg = {};
  cfg.initial_step = 0.0;
  EXPECT_THROW(cfg.check(), Error);
}

TEST(Penalty, PenaltyVanishesOnFeasibleSet) {
  auto rng = testing::rng_for(17);
  const auto p = testing::random_cocluster(6, rng);
  const auto w = testing::random_feasible(6, 3, rng);
  EXPECT_NEAR(penalized_objective(p, w.entries(), 10.0, 10.0), objective_value(p, w.entries()), 1e-14);
  EXPECT_LE(infeasibility(w.entries()), 1e-15);
}

TEST(Penalty, GradientMatchesFiniteDifferences) {
  auto rng = testing::rng_for(18);
  const auto p = testing::random_cocluster(5, rng);
  const Matrix w = testing::random_uniform(5, 3, rng, -0.5, 1.0);
  const auto f = [&](const Matrix& x) { return penalized_objective(p, x, 3.0, 7.0); };
  const Matrix want = testing::finite_difference_gradient(f, w, 1e-6);
  EXPECT_LT(testing::max_relative_error(penalized_gradient(p, w, 3.0, 7.0), want), 1e-6);
}

TEST(Penalty, InfeasibilityMeasure) {
  Matrix w(2, 2);
  w << 0.7, 0.5, -0.25, 1.0;
  EXPECT_DOUBLE_EQ(infeasibility(w), 0.25);
}

TEST(Penalty, StationaryFeasibleStart) {
  auto rng = testing::rng_for(19);
  const auto w0 = testing::random_feasible(8, 3, rng);
  const auto p = CoClusterMatrix::validate(w0.entries() * w0.entries().transpose());
  const auto r = penalty_solve(p, w0.entries(), {});
  EXPECT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace.terminal_reason, TerminalReason::ObjectiveStalled);
  EXPECT_LT((r.w.entries() - w0.entries()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Penalty, PlantedInstanceFeasibilityImproves) {
  const auto inst = planted_instance(50, 5, 42);
  const auto r = penalty_solve(inst.p, shared_initial_point(50, 5, 42).entries(), {});
  ASSERT_EQ(r.infeasibility.size(), r.trace.size());
  for (std::size_t t = 1; t < r.infeasibility.size(); ++t)
    EXPECT_LE(r.infeasibility[t], r.infeasibility[t - 1]);
  EXPECT_GT(r.infeasibility.front(), 1e-6);
  EXPECT_TRUE(r.w.is_feasible());
  for (const auto& rec : r.trace.iterations()) EXPECT_FALSE(rec.fw_gap.has_value());
}

}  // namespace
}  // namespace ssnmf
