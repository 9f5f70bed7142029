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

#include <cmath>
#include <limits>

#include "crossproj/error.h"

namespace crossproj {

namespace {

constexpr double kMinScale = 1e-30;
constexpr double kMaxScale = 1e30;

bool OutOfRange(const Eigen::VectorXd &s) {
  return s.size() > 0 && (s.minCoeff() < kMinScale || s.maxCoeff() > kMaxScale);
}

void CheckMarginal(const Eigen::VectorXd &m, const char *name) {
  if (m.size() == 0 || (m.array() < 0.0).any() || !m.allFinite() ||
      std::abs(m.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be a probability vector");
  }
}

}  // namespace

SinkhornResult SinkhornPlan(const Eigen::MatrixXd &cost,
                            const Eigen::VectorXd &mu,
                            const Eigen::VectorXd &nu,
                            const SinkhornOptions &options) {
  if (cost.rows() != nu.size() || cost.cols() != mu.size()) {
    throw Error(ErrorCode::kShapeMismatch, "cost does not match marginals");
  }
  if (!(options.epsilon > 0.0) || options.max_iters <= 0 ||
      !(options.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad Sinkhorn options");
  }
  if (!cost.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "cost has non-finite entries");
  }
  CheckMarginal(mu, "mu");
  CheckMarginal(nu, "nu");

  // Work on the positive-mass support only.
  std::vector<int> rows, cols;
  for (int j = 0; j < nu.size(); ++j) {
    if (nu[j] > 0.0) rows.push_back(j);
  }
  for (int i = 0; i < mu.size(); ++i) {
    if (mu[i] > 0.0) cols.push_back(i);
  }
  const int q = static_cast<int>(rows.size());
  const int p = static_cast<int>(cols.size());
  const double eps = options.epsilon;

  Eigen::MatrixXd c(q, p);
  Eigen::VectorXd a(p), b(q);
  for (int jj = 0; jj < q; ++jj) {
    b[jj] = nu[rows[jj]];
    for (int ii = 0; ii < p; ++ii) c(jj, ii) = cost(rows[jj], cols[ii]);
  }
  for (int ii = 0; ii < p; ++ii) a[ii] = mu[cols[ii]];

  // Potentials start so that every row and column of the kernel peaks at 1.
  Eigen::VectorXd f = c.rowwise().minCoeff();
  Eigen::VectorXd g = (c.colwise() - f).colwise().minCoeff().transpose();

  Eigen::MatrixXd kernel(q, p);
  auto rebuild = [&] {
    for (int jj = 0; jj < q; ++jj) {
      for (int ii = 0; ii < p; ++ii) {
        kernel(jj, ii) = std::exp(-(c(jj, ii) - f[jj] - g[ii]) / eps);
      }
    }
  };
  rebuild();

  Eigen::VectorXd u = Eigen::VectorXd::Ones(q);
  Eigen::VectorXd v = a.cwiseQuotient(kernel.transpose() * u);

  SinkhornResult result;
  int it = 0;
  double residual = std::numeric_limits<double>::infinity();
  while (true) {
    // Columns are exact after the v update, so row error is the residual.
    Eigen::VectorXd kv = kernel * v;
    residual = (u.cwiseProduct(kv) - b).cwiseAbs().maxCoeff();
    if (options.record_residuals) result.residuals.push_back(residual);
    if (residual < options.tol) {
      result.converged = true;
      break;
    }
    if (it == options.max_iters) break;
    ++it;
    u = b.cwiseQuotient(kv);
    v = a.cwiseQuotient(kernel.transpose() * u);
    if (OutOfRange(u) || OutOfRange(v) || !u.allFinite() || !v.allFinite()) {
      f += eps * u.array().log().matrix();
      g += eps * v.array().log().matrix();
      rebuild();
      u.setOnes();
      v = a.cwiseQuotient(kernel.transpose() * u);
    }
  }

  Eigen::MatrixXd support = u.asDiagonal() * kernel * v.asDiagonal();
  result.plan = Eigen::MatrixXd::Zero(cost.rows(), cost.cols());
  for (int jj = 0; jj < q; ++jj) {
    for (int ii = 0; ii < p; ++ii) result.plan(rows[jj], cols[ii]) = support(jj, ii);
  }
  result.iterations = it;
  double row_err = (result.plan.rowwise().sum() - nu).cwiseAbs().maxCoeff();
  double col_err =
      (result.plan.colwise().sum().transpose() - mu).cwiseAbs().maxCoeff();
  result.residual = std::max(row_err, col_err);
  return result;
}

double TransportCost(const Eigen::MatrixXd &plan, const Eigen::MatrixXd &cost) {
  if (plan.rows() != cost.rows() || plan.cols() != cost.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "plan does not match cost");
  }
  return plan.cwiseProduct(cost).sum();
}

}  // namespace crossproj
