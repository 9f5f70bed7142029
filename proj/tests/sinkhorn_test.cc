// Copyright 2026 The Crossproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crossproj/sinkhorn.h"

#include <random>

#include <gtest/gtest.h>

#include "crossproj/error.h"
#include "testing/oracles.h"

namespace crossproj {
namespace {

Eigen::VectorXd Uniform(int n) { return Eigen::VectorXd::Constant(n, 1.0 / n); }

Eigen::MatrixXd RandomCost(std::mt19937_64 &rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd c(rows, cols);
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < cols; ++i) c(j, i) = u(rng);
  }
  return c;
}

TEST(SinkhornTest, SingleCell) {
  SinkhornResult r = SinkhornPlan(Eigen::MatrixXd::Constant(1, 1, 3.0),
                                  Uniform(1), Uniform(1), {});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.plan(0, 0), 1.0, 1e-12);
}

TEST(SinkhornTest, ConstantCostGivesUniformPlan) {
  SinkhornResult r = SinkhornPlan(Eigen::MatrixXd::Constant(2, 2, 0.7),
                                  Uniform(2), Uniform(2), {});
  EXPECT_TRUE(r.converged);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(r.plan(j, i), 0.25, 1e-12);
  }
}

TEST(SinkhornTest, RectangularMarginalsHoldWithinTenTol) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int q = 1 + trial % 6, p = 1 + (trial * 7) % 5;
    Eigen::MatrixXd c = RandomCost(rng, q, p);
    SinkhornOptions opt;
    opt.epsilon = 0.05;
    opt.tol = 1e-10;
    opt.max_iters = 100000;
    SinkhornResult r = SinkhornPlan(c, Uniform(p), Uniform(q), opt);
    ASSERT_TRUE(r.converged) << trial;
    EXPECT_TRUE((r.plan.array() >= 0.0).all());
    EXPECT_LT(r.residual, 10 * opt.tol);
    EXPECT_LT((r.plan.rowwise().sum() - Uniform(q)).cwiseAbs().maxCoeff(),
              10 * opt.tol);
    EXPECT_LT((r.plan.colwise().sum().transpose() - Uniform(p))
                  .cwiseAbs()
                  .maxCoeff(),
              10 * opt.tol);
  }
}

TEST(SinkhornTest, ResidualIsMonotone) {
  std::mt19937_64 rng(12);
  for (double eps : {1.0, 0.1, 0.01, 0.001}) {
    SinkhornOptions opt;
    opt.epsilon = eps;
    opt.max_iters = 5000;
    opt.record_residuals = true;
    SinkhornResult r = SinkhornPlan(RandomCost(rng, 5, 5), Uniform(5),
                                    Uniform(5), opt);
    ASSERT_GE(r.residuals.size(), 2u);
    for (size_t k = 1; k < r.residuals.size(); ++k) {
      EXPECT_LE(r.residuals[k], r.residuals[k - 1] * (1 + 1e-9) + 1e-15)
          << "eps " << eps << " step " << k;
    }
  }
}

TEST(SinkhornTest, SmallEpsilonStaysFinite) {
  std::mt19937_64 rng(13);
  SinkhornOptions opt;
  opt.epsilon = 1e-4;
  opt.max_iters = 20000;
  opt.tol = 1e-8;
  Eigen::MatrixXd c = RandomCost(rng, 5, 5) * 50.0;
  SinkhornResult r = SinkhornPlan(c, Uniform(5), Uniform(5), opt);
  EXPECT_TRUE(r.plan.allFinite());
  EXPECT_NEAR(r.plan.sum(), 1.0, 1e-6);
}

TEST(SinkhornTest, ApproachesAssignmentOptimum) {
  std::mt19937_64 rng(14);
  SinkhornOptions opt;
  opt.epsilon = 0.01;
  opt.max_iters = 200000;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd c = RandomCost(rng, 4, 4);
    SinkhornResult r = SinkhornPlan(c, Uniform(4), Uniform(4), opt);
    double exact = testing::OptimalAssignmentCost(c);
    EXPECT_GE(TransportCost(r.plan, c), exact - 1e-9);
    // Entropic bias is at most epsilon * log(n^2).
    EXPECT_LE(TransportCost(r.plan, c), exact + opt.epsilon * std::log(16.0));
  }
}

TEST(SinkhornTest, ZeroMassRowsAndColumns) {
  Eigen::MatrixXd c(3, 2);
  c << 0, 1, 1, 0, 5, 5;
  Eigen::VectorXd mu(2), nu(3);
  mu << 0.5, 0.5;
  nu << 0.5, 0.5, 0.0;
  SinkhornResult r = SinkhornPlan(c, mu, nu, {});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.plan(2, 0), 0.0);
  EXPECT_EQ(r.plan(2, 1), 0.0);
  EXPECT_NEAR(r.plan.sum(), 1.0, 1e-9);
}

TEST(SinkhornTest, IterationCapIsReportedNotThrown) {
  std::mt19937_64 rng(15);
  SinkhornOptions opt;
  opt.epsilon = 0.001;
  opt.max_iters = 1;
  opt.tol = 1e-15;
  SinkhornResult r =
      SinkhornPlan(RandomCost(rng, 5, 5), Uniform(5), Uniform(5), opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_GT(r.residual, 0.0);
}

TEST(SinkhornTest, RejectsBadInputs) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2);
  EXPECT_THROW(SinkhornPlan(c, Uniform(3), Uniform(2), {}), Error);
  Eigen::VectorXd bad(2);
  bad << 0.7, 0.7;
  EXPECT_THROW(SinkhornPlan(c, bad, Uniform(2), {}), Error);
  bad << 1.5, -0.5;
  EXPECT_THROW(SinkhornPlan(c, Uniform(2), bad, {}), Error);
  SinkhornOptions opt;
  opt.epsilon = 0.0;
  EXPECT_THROW(SinkhornPlan(c, Uniform(2), Uniform(2), opt), Error);
  c(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SinkhornPlan(c, Uniform(2), Uniform(2), {}), Error);
}

}  // namespace
}  // namespace crossproj
