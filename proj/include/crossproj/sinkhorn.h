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

#ifndef CROSSPROJ_SINKHORN_H_
#define CROSSPROJ_SINKHORN_H_

#include <vector>

#include <Eigen/Core>

namespace crossproj {

struct SinkhornOptions {
  double epsilon = 0.1;
  int max_iters = 1000;
  // Stop once the largest marginal violation drops below this.
  double tol = 1e-9;
  bool record_residuals = false;
};

struct SinkhornResult {
  // q x p, rows follow `nu` and columns follow `mu`.
  Eigen::MatrixXd plan;
  int iterations = 0;
  // Largest absolute row or column marginal violation of `plan`.
  double residual = 0.0;
  bool converged = false;
  // Residual before each row update when record_residuals is set.
  std::vector<double> residuals;
};

// Entropy-regularized transport plan minimizing <P, cost> - epsilon H(P)
// subject to P 1 = nu and P^T 1 = mu.
//
// Iterates diagonal scalings in the exponential domain and absorbs large
// scalings into log-domain potentials, so tiny epsilon relative to the cost
// range neither underflows nor overflows. Marginals must be non-negative and
// sum to one; zero-mass rows and columns get zero plan entries.
//
// Hitting max_iters is not an error: the plan is returned with
// converged == false.
SinkhornResult SinkhornPlan(const Eigen::MatrixXd &cost,
                            const Eigen::VectorXd &mu,
                            const Eigen::VectorXd &nu,
                            const SinkhornOptions &options);

// <plan, cost>.
double TransportCost(const Eigen::MatrixXd &plan, const Eigen::MatrixXd &cost);

}  // namespace crossproj

#endif  // CROSSPROJ_SINKHORN_H_
