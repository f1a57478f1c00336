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

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "locdisc/dataset.hpp"

namespace locdisc {

/// exp(-gamma * ||x - y||^2)
struct RbfKernel {
  double gamma = 1.0;
};

/// exp(-gamma * sum_j (x_j - y_j)^2 / (x_j + y_j + epsilon)); inputs must be
/// nonnegative.
struct ChiSquaredKernel {
  double gamma = 1.0;
  double epsilon = 1e-10;
};

/// x^T y
struct LinearKernel {};

/// Square Gram matrix read from a CSV file. Only usable through
/// gram_matrix(); there are no samples to evaluate cross-kernels against.
struct PrecomputedKernel {
  std::filesystem::path path;
};

using KernelSpec =
    std::variant<RbfKernel, ChiSquaredKernel, LinearKernel, PrecomputedKernel>;

/// Throws DataError when gamma or epsilon are not strictly positive.
void validate(const KernelSpec& spec);

/// Short name used in logs, configs and model files: rbf, chi2, linear,
/// precomputed.
std::string kernel_name(const KernelSpec& spec);

struct GramMatrix {
  Matrix values;  // n x n, exactly symmetric
  KernelSpec spec;

  Index size() const { return values.rows(); }
};

double kernel_eval(const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y, const KernelSpec& spec);

/// Gram matrix of the columns of X, symmetrized as (A + A^T) / 2. For
/// PrecomputedKernel the matrix is loaded from disk, must be n x n and
/// symmetric to 1e-9.
GramMatrix gram_matrix(const Matrix& X, const KernelSpec& spec);

/// t x n matrix with entry (j, i) = k(test_j, train_i).
Matrix cross_gram(const Matrix& X_test, const Matrix& X_train,
                  const KernelSpec& spec);

/// 1 / median of squared Euclidean distances over pairs i < j. With an even
/// number of pairs the median is the mean of the two middle values.
double median_heuristic_gamma(const Matrix& X);

/// Tolerance applied to the symmetry check of precomputed kernels.
inline constexpr double kPrecomputedSymmetryTolerance = 1e-9;

}  // namespace locdisc
