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

#include "locdisc/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "locdisc/error.hpp"

namespace locdisc {
namespace {

void require_square(const Matrix& m, Index n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    throw DataError(std::string(name) + " is " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()) + ", expected " +
                    std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

void normalize_sign(Eigen::Ref<Vector> v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  }
  if (v.size() > 0 && v(best) < 0.0) v = -v;
}

Matrix KernelEigen::reconstruct() const {
  return V * lambda.asDiagonal() * V.transpose();
}

KernelEigen eigendecompose_kernel(const GramMatrix& K, double drop_tolerance) {
  if (!(drop_tolerance >= 0.0)) {
    throw DataError("drop tolerance must be nonnegative");
  }
  const Index n = K.size();
  require_square(K.values, n, "kernel matrix");
  if (n == 0) throw DataError("kernel matrix is empty");
  if (!K.values.allFinite()) {
    throw NumericError("kernel matrix contains non-finite values");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(K.values);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of the kernel matrix failed");
  }
  const Vector& values = solver.eigenvalues();  // ascending
  const double largest = values(n - 1);
  if (!(largest > 0.0)) {
    throw NumericError("kernel matrix has no positive eigenvalue");
  }
  const double threshold = drop_tolerance * largest;
  Index kept = 0;
  for (Index j = 0; j < n; ++j) {
    if (values(j) > threshold && values(j) > 0.0) ++kept;
  }
  KernelEigen out;
  out.drop_tolerance = drop_tolerance;
  out.V.resize(n, kept);
  out.lambda.resize(kept);
  for (Index c = 0; c < kept; ++c) {
    const Index src = n - 1 - c;
    out.lambda(c) = values(src);
    out.V.col(c) = solver.eigenvectors().col(src);
    normalize_sign(out.V.col(c));
  }
  return out;
}

TransformModel fit(const KernelEigen& eigen, const KernelSpec& kernel,
                   const SupervisedLaplacian& Lw, const CliqueLaplacian& L,
                   double lambda_reg, Index r) {
  const Index n = eigen.V.rows();
  require_square(Lw.values, n, "supervised Laplacian");
  require_square(L.values, n, "clique Laplacian");
  if (!(lambda_reg >= 0.0) || !std::isfinite(lambda_reg)) {
    throw DataError("lambda must be a finite nonnegative number");
  }
  if (r < 1) throw DataError("output dimensionality r must be positive");
  if (r > eigen.rank()) {
    throw RankError(static_cast<std::size_t>(r),
                    static_cast<std::size_t>(eigen.rank()));
  }
  if (!Lw.values.allFinite() || !L.values.allFinite()) {
    throw NumericError("Laplacian contains non-finite values");
  }

  const Matrix S = Lw.values + lambda_reg * L.values;
  const Vector sqrt_lambda = eigen.lambda.cwiseSqrt();
  const Matrix U = eigen.V * sqrt_lambda.asDiagonal();
  Matrix M = U.transpose() * S * U;
  M = 0.5 * (M + M.transpose());
  if (!M.allFinite()) throw NumericError("reduced matrix M is not finite");

  const Eigen::SelfAdjointEigenSolver<Matrix> solver(M);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of the reduced matrix failed");
  }
  Matrix omega = solver.eigenvectors().leftCols(r);
  for (Index l = 0; l < r; ++l) normalize_sign(omega.col(l));
  const Matrix beta = sqrt_lambda.cwiseInverse().asDiagonal() * omega;

  TransformModel model;
  model.a = eigen.V * beta;
  model.lambda_reg = lambda_reg;
  model.theta = L.theta;
  model.k = L.k;
  model.kernel = kernel;
  model.eigenvalues_of_M = solver.eigenvalues().head(r);
  return model;
}

TransformModel fit(const GramMatrix& K, const SupervisedLaplacian& Lw,
                   const CliqueLaplacian& L, double lambda_reg, Index r,
                   double drop_tolerance) {
  return fit(eigendecompose_kernel(K, drop_tolerance), K.spec, Lw, L,
             lambda_reg, r);
}

ObjectiveValue objective_value(const Matrix& a, const GramMatrix& K,
                               const SupervisedLaplacian& Lw,
                               const CliqueLaplacian& L, double lambda_reg) {
  const Index n = K.size();
  require_square(Lw.values, n, "supervised Laplacian");
  require_square(L.values, n, "clique Laplacian");
  if (a.rows() != n) {
    throw DataError("transformation has " + std::to_string(a.rows()) +
                    " rows, expected " + std::to_string(n));
  }
  const Matrix F = K.values * a;
  const Matrix S = Lw.values + lambda_reg * L.values;
  ObjectiveValue out;
  out.objective = (F.transpose() * S * F).trace();
  const Matrix gram = a.transpose() * F;
  out.constraint_residual =
      (gram - Matrix::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
  return out;
}

double truncated_constraint_residual(const Matrix& a, const KernelEigen& eigen) {
  if (a.rows() != eigen.V.rows()) {
    throw DataError("transformation and eigenbasis differ in row count");
  }
  const Matrix B = eigen.V.transpose() * a;
  const Matrix gram = B.transpose() * eigen.lambda.asDiagonal() * B;
  return (gram - Matrix::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

Matrix transform_test(const Matrix& K_cross, const TransformModel& model) {
  if (K_cross.cols() != model.train_size()) {
    throw DataError("cross-Gram has " + std::to_string(K_cross.cols()) +
                    " columns, model was trained on " +
                    std::to_string(model.train_size()) + " samples");
  }
  if (!model.centering) return model.a.transpose() * K_cross.transpose();
  const auto& c = *model.centering;
  Matrix centred = K_cross;
  const Vector row_means = K_cross.rowwise().mean();
  centred.colwise() -= row_means;
  centred.rowwise() -= c.column_means.transpose();
  centred.array() += c.grand_mean;
  return model.a.transpose() * centred.transpose();
}

Matrix transform_train(const GramMatrix& K, const TransformModel& model) {
  require_square(K.values, model.train_size(), "training kernel");
  return transform_test(K.values, model);
}

}  // namespace locdisc
