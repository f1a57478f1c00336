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

#include <optional>
#include <span>
#include <vector>

#include "locdisc/solver.hpp"

namespace locdisc {

/// One-vs-rest ridge regression on +/-1 targets. Stands in for a linear SVM
/// when scoring learned features.
struct LinearClassifier {
  Matrix weights;  // r x c
  Vector bias;     // c
  double ridge = 1.0;

  Index classes() const { return weights.cols(); }
};

inline constexpr double kDefaultRidge = 1.0;

/// Solves (F~ F~^T + ridge I) w_t = F~ z_t for every class, F~ = [F; 1^T].
LinearClassifier fit_linear_classifier(const Matrix& features,
                                       std::span<const int> labels,
                                       int class_count, double ridge);

/// t x c matrix of w_t^T f_j + bias_t.
Matrix decision_scores(const LinearClassifier& clf, const Matrix& features);

/// Average precision of every class column. Samples are ranked by descending
/// score, ties broken by lower sample index. Classes without a relevant
/// sample yield std::nullopt.
std::vector<std::optional<double>> average_precision_per_class(
    const Matrix& scores, std::span<const int> truth);

/// Macro average of average_precision_per_class over classes present in
/// `truth`; absent classes are skipped with a warning.
double mean_average_precision(const Matrix& scores,
                              std::span<const int> truth);

/// Kernel PCA on the double-centred Gram JKJ. Columns of `a` are the top r
/// eigenvectors scaled by 1/sqrt(eigenvalue); the model carries the
/// centring statistics so test rows are centred consistently.
TransformModel kpca_baseline(const GramMatrix& K, Index r,
                             double drop_tolerance = kDefaultDropTolerance);

}  // namespace locdisc
