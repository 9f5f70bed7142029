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

// Brute-force references shared by unit and acceptance tests.

#ifndef CROSSPROJ_TESTS_TESTING_ORACLES_H_
#define CROSSPROJ_TESTS_TESTING_ORACLES_H_

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace crossproj::testing {

// Minimum of sum_i cost(perm[i], i) / n over all permutations. With uniform
// marginals the transport polytope's vertices are scaled permutations, so
// this is the exact unregularized optimum.
inline double OptimalAssignmentCost(const Eigen::MatrixXd &cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost(perm[i], i);
    best = std::min(best, total / n);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace crossproj::testing

#endif  // CROSSPROJ_TESTS_TESTING_ORACLES_H_
