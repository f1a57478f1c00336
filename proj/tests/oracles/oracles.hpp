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

// Independent reference computations used only by the test suites. They
// follow the formulas literally (explicit selection matrices, explicit
// inverses, O(n^2) ranking) and share no code path with the library
// routines they check.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "locdisc/dataset.hpp"
#include "locdisc/graph.hpp"
#include "locdisc/random.hpp"

namespace locdisc::oracle {

/// n x k 0/1 matrix with S(p, q) = 1 iff clique[q] == p.
Matrix selection_matrix(std::span<const Index> clique, Index n);

/// sum_i S_i L_i S_i^T by dense multiplication.
Matrix selection_assembly(const CliqueSet& cliques, const std::vector<Matrix>& terms,
                          Index n);

/// H (Xc^T Xc + theta I)^{-1} H with an explicit inverse.
Matrix dense_inverse_clique_term(const Matrix& local, double theta);

/// Tr(G^T H G - G^T Xc^T (Xc Xc^T + theta I)^{-1} Xc G), Xc = X_i H, built
/// from the scatter matrices S_t = Xc Xc^T and S_b = Xc G G^T Xc^T.
double local_fisher_score(const Matrix& local, const Matrix& G_local, double theta);

/// Average precision of class `cls` by counting, for every relevant sample,
/// how many samples are ranked at or above it. No sorting involved.
double naive_average_precision(const Matrix& scores, std::span<const int> truth,
                               int cls);
double naive_map(const Matrix& scores, std::span<const int> truth);

/// exp(-gamma ||x - y||^2) over all column pairs, via Eigen norms.
Matrix naive_rbf_gram(const Matrix& X_a, const Matrix& X_b, double gamma);

/// Random a with a^T K a = I_r: a = B (B^T K B)^{-1/2}, B Gaussian.
Matrix random_k_orthonormal(const Matrix& K, Index r, Rng& rng);

/// Tr(a^T K S K a) evaluated column by column with explicit loops.
double loop_objective(const Matrix& a, const Matrix& K, const Matrix& S);

/// out(l, j) = sum_i a(i, l) * Kc(j, i) by explicit loops.
Matrix loop_transform(const Matrix& a, const Matrix& K_cross);

/// Ridge weights from the explicitly inverted normal equations; returns the
/// (r + 1) x c stacked [weights; bias].
Matrix dense_ridge(const Matrix& features, std::span<const int> labels, int c,
                   double ridge);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& A);

/// Random d x n matrix with N(0, scale^2) entries.
Matrix gaussian_matrix(Index rows, Index cols, Rng& rng, double scale = 1.0);

}  // namespace locdisc::oracle
