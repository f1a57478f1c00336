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

#include "locdisc/graph.hpp"
#include "locdisc/kernels.hpp"

namespace locdisc {

inline constexpr double kDefaultDropTolerance = 1e-10;

/// Kept part of K = V Lambda V^T: eigenpairs whose eigenvalue exceeds
/// drop_tolerance * lambda_max, sorted by descending eigenvalue.
struct KernelEigen {
  Matrix V;       // n x rank
  Vector lambda;  // rank, descending, all > 0
  double drop_tolerance = kDefaultDropTolerance;

  Index rank() const { return lambda.size(); }
  /// V Lambda V^T.
  Matrix reconstruct() const;
};

/// Statistics of the training Gram needed to centre kernel rows the same
/// way JKJ centres the training Gram (used by the KPCA baseline).
struct KernelCentering {
  Vector column_means;
  double grand_mean = 0.0;
};

/// Learned kernel expansion: feature l of x is sum_i a(i, l) k(x, x_i).
struct TransformModel {
  Matrix a;  // n x r
  double lambda_reg = 0.0;
  double theta = 0.0;
  int k = 0;
  KernelSpec kernel;
  Vector eigenvalues_of_M;  // r, ascending (descending for KPCA)
  std::optional<KernelCentering> centering;  // set for KPCA models

  Index train_size() const { return a.rows(); }
  Index dims() const { return a.cols(); }
};

struct ObjectiveValue {
  double objective = 0.0;
  /// max |(a^T K a - I)_{ij}|
  double constraint_residual = 0.0;
};

/// Fixes the sign of a vector so that its entry of largest magnitude (lowest
/// index on ties) is positive.
void normalize_sign(Eigen::Ref<Vector> v);

KernelEigen eigendecompose_kernel(const GramMatrix& K,
                                  double drop_tolerance = kDefaultDropTolerance);

/// Minimises Tr(a^T K (L_w + lambda L) K a) subject to a^T K a = I by
/// reducing to the eigenproblem of
///   M = Lambda^{1/2} V^T (L_w + lambda L) V Lambda^{1/2}
/// and taking a = V Lambda^{-1/2} omega for its r smallest eigenvectors.
TransformModel fit(const GramMatrix& K, const SupervisedLaplacian& Lw,
                   const CliqueLaplacian& L, double lambda_reg, Index r,
                   double drop_tolerance = kDefaultDropTolerance);

/// Same as fit() but reuses an existing eigendecomposition of K.
TransformModel fit(const KernelEigen& eigen, const KernelSpec& kernel,
                   const SupervisedLaplacian& Lw, const CliqueLaplacian& L,
                   double lambda_reg, Index r);

ObjectiveValue objective_value(const Matrix& a, const GramMatrix& K,
                               const SupervisedLaplacian& Lw,
                               const CliqueLaplacian& L, double lambda_reg);

/// max |(a^T V Lambda V^T a - I)_{ij}|, evaluated in factored form.
double truncated_constraint_residual(const Matrix& a, const KernelEigen& eigen);

/// a^T K (r x n). K must be the Gram the model was fitted on.
Matrix transform_train(const GramMatrix& K, const TransformModel& model);

/// a^T K_cross^T (r x t) for a t x n cross-Gram against the training set.
Matrix transform_test(const Matrix& K_cross, const TransformModel& model);

}  // namespace locdisc
