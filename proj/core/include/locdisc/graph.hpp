/*
 * Copyright 2026 The locdisc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <span>
#include <vector>

#include "locdisc/dataset.hpp"

namespace locdisc {

/// L_w = D - W where W(i, j) = 1 iff i, j < m and both carry the same class
/// (the diagonal included). Unlabeled rows and columns are zero.
struct SupervisedLaplacian {
  Matrix values;
};

/// For every sample i, the list [i, i_1, ..., i_{k-1}] of itself and its k-1
/// nearest neighbours.
struct CliqueSet {
  int k = 0;
  std::vector<std::vector<Index>> cliques;

  Index size() const { return static_cast<Index>(cliques.size()); }
};

/// L = sum_i S_i L_i S_i^T, accumulated in a fixed order.
struct CliqueLaplacian {
  Matrix values;
  double theta = 1.0;
  int k = 0;
};

/// H = I - (1/k) 1 1^T.
struct CenteringMatrix {
  Matrix H;
};

inline constexpr double kDefaultTheta = 1.0;
inline constexpr int kDefaultCliqueSize = 3;

SupervisedLaplacian build_supervised_laplacian(std::span<const Label> labels,
                                               Index labeled_count);

/// Exact kNN over all columns of X by Euclidean distance. Neighbours are
/// ordered by (distance, index), so ties go to the lower index.
CliqueSet knn_cliques(const Matrix& X, int k);

CenteringMatrix centering_matrix(int k);

/// H (Xc^T Xc + theta I)^{-1} H with Xc = X_i H, computed with a Cholesky
/// solve and symmetrized. X_i is d x k.
Matrix clique_laplacian_term(const Matrix& local_samples, double theta);

/// Gathers the columns of `X` listed in `clique`.
Matrix local_samples(const Matrix& X, std::span<const Index> clique);

CliqueLaplacian assemble_clique_laplacian(const CliqueSet& cliques,
                                          const Matrix& X, double theta);

}  // namespace locdisc
