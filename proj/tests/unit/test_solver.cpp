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

#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "locdisc/error.hpp"
#include "locdisc/graph.hpp"
#include "locdisc/kernels.hpp"
#include "locdisc/model_io.hpp"
#include "locdisc/random.hpp"
#include "locdisc/solver.hpp"
#include "oracles.hpp"

namespace locdisc {
namespace {

double max_abs(const Matrix& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

struct Problem {
  Matrix X;
  GramMatrix K;
  SupervisedLaplacian Lw;
  CliqueLaplacian L;
  int c = 0;
};

Problem random_problem(Rng& rng, Index n, Index d, int c, Index m, int k) {
  Problem p;
  p.c = c;
  p.X = oracle::gaussian_matrix(d, n, rng);
  const KernelSpec spec = RbfKernel{median_heuristic_gamma(p.X)};
  p.K = gram_matrix(p.X, spec);
  std::vector<Label> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < m; ++i) {
    labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.index(static_cast<std::uint64_t>(c)));
  }
  p.Lw = build_supervised_laplacian(labels, m);
  p.L = assemble_clique_laplacian(knn_cliques(p.X, k), p.X, 1.0);
  return p;
}

Matrix orthonormal_basis(const Matrix& A) {
  Eigen::HouseholderQR<Matrix> qr(A);
  return qr.householderQ() * Matrix::Identity(A.rows(), A.cols());
}

TEST(EigendecomposeKernel, Identity) {
  const KernelEigen e = eigendecompose_kernel(GramMatrix{Matrix::Identity(3, 3), LinearKernel{}});
  EXPECT_EQ(e.rank(), 3);
  EXPECT_LE(max_abs(e.lambda - Vector::Ones(3)), 1e-15);
  EXPECT_LE(max_abs(e.V.transpose() * e.V - Matrix::Identity(3, 3)), 1e-14);
}

TEST(EigendecomposeKernel, RankOne) {
  const KernelEigen e =
      eigendecompose_kernel(GramMatrix{Matrix::Ones(2, 2), LinearKernel{}});
  ASSERT_EQ(e.rank(), 1);
  EXPECT_NEAR(e.lambda(0), 2.0, 1e-15);
  EXPECT_NEAR(e.V(0, 0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(e.V(1, 0), std::sqrt(0.5), 1e-15);
}

TEST(EigendecomposeKernel, ReconstructsRandomGrams) {
  Rng rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.index(60));
    const Matrix X = oracle::gaussian_matrix(3, n, rng);
    const GramMatrix K = gram_matrix(X, RbfKernel{0.5});
    const KernelEigen e = eigendecompose_kernel(K);
    EXPECT_LE(max_abs(e.reconstruct() - K.values), 1e-9);
    for (Index i = 1; i < e.rank(); ++i) EXPECT_GE(e.lambda(i - 1), e.lambda(i));
    EXPECT_GT(e.lambda(e.rank() - 1), e.drop_tolerance * e.lambda(0));
  }
}

TEST(EigendecomposeKernel, Errors) {
  EXPECT_THROW(eigendecompose_kernel(GramMatrix{Matrix::Zero(2, 2), LinearKernel{}}),
               NumericError);
  EXPECT_THROW(eigendecompose_kernel(GramMatrix{Matrix::Identity(2, 2), LinearKernel{}}, -1.0),
               DataError);
}

TEST(NormalizeSign, LargestEntryPositiveLowerIndexOnTies) {
  Vector v(3);
  v << 0.5, -2.0, 1.0;
  normalize_sign(v);
  EXPECT_EQ(v, (Vector(3) << -0.5, 2.0, -1.0).finished());
  Vector tie(2);
  tie << -1.0, 1.0;
  normalize_sign(tie);
  EXPECT_EQ(tie, (Vector(2) << 1.0, -1.0).finished());
}

TEST(Fit, DegenerateObjectiveStillSatisfiesConstraint) {
  Rng rng(21);
  const Matrix X = oracle::gaussian_matrix(2, 10, rng);
  const GramMatrix K = gram_matrix(X, RbfKernel{1.0});
  const SupervisedLaplacian Lw{Matrix::Zero(10, 10)};
  const CliqueLaplacian L = assemble_clique_laplacian(knn_cliques(X, 3), X, 1.0);
  const TransformModel model = fit(K, Lw, L, 0.0, 2);
  ASSERT_EQ(model.a.rows(), 10);
  ASSERT_EQ(model.a.cols(), 2);
  EXPECT_EQ(max_abs(model.eigenvalues_of_M), 0.0);
  const ObjectiveValue v = objective_value(model.a, K, Lw, L, 0.0);
  EXPECT_EQ(v.objective, 0.0);
  EXPECT_LE(truncated_constraint_residual(model.a, eigendecompose_kernel(K)), 1e-8);
}

TEST(Fit, ConstraintOnTruncatedKernel) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 5 + static_cast<Index>(rng.index(196));
    const int c = 2 + static_cast<int>(rng.index(3));
    const Problem p = random_problem(rng, n, 3, c, c * 2, 3);
    const KernelEigen eigen = eigendecompose_kernel(p.K);
    const Index r = std::min<Index>(c, eigen.rank());
    const TransformModel model = fit(eigen, p.K.spec, p.Lw, p.L, 1.0, r);
    // a^T (V Lambda V^T) a, associated as (V^T a)^T Lambda (V^T a): forming
    // V Lambda V^T first adds rounding of order eps * lambda_max that the
    // Lambda^{-1/2} factors in a amplify well past the tolerance.
    const Matrix Va = eigen.V.transpose() * model.a;
    const Matrix aKa = Va.transpose() * eigen.lambda.asDiagonal() * Va;
    EXPECT_LE(max_abs(aKa - Matrix::Identity(r, r)), 1e-8) << "n=" << n;
    EXPECT_LE(truncated_constraint_residual(model.a, eigen), 1e-8);
  }
}

TEST(Fit, ObjectiveIsSumOfSmallestEigenvaluesAndBeatsCompetitors) {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 10 + static_cast<Index>(rng.index(30));
    const Problem p = random_problem(rng, n, 3, 3, 9, 3);
    const double lambda = std::array{0.0, 0.1, 1.0, 10.0}[rng.index(4)];
    const Index r = 1 + static_cast<Index>(rng.index(3));
    const TransformModel model = fit(p.K, p.Lw, p.L, lambda, r);
    for (Index i = 1; i < r; ++i) {
      EXPECT_LE(model.eigenvalues_of_M(i - 1), model.eigenvalues_of_M(i));
    }
    const double best = objective_value(model.a, p.K, p.Lw, p.L, lambda).objective;
    EXPECT_NEAR(best, model.eigenvalues_of_M.sum(), 1e-8 * std::max(1.0, std::abs(best)));

    const Matrix S = p.Lw.values + lambda * p.L.values;
    for (int j = 0; j < 100; ++j) {
      const Matrix a = oracle::random_k_orthonormal(p.K.values, r, rng);
      EXPECT_GE(oracle::loop_objective(a, p.K.values, S), best - 1e-8);
    }
  }
}

TEST(Fit, RankErrorNamesMaxFeasible) {
  const GramMatrix K{Matrix::Ones(3, 3), LinearKernel{}};
  const SupervisedLaplacian Lw{Matrix::Zero(3, 3)};
  const CliqueLaplacian L{Matrix::Zero(3, 3), 1.0, 1};
  try {
    fit(K, Lw, L, 1.0, 2);
    FAIL() << "expected RankError";
  } catch (const RankError& e) {
    EXPECT_EQ(e.requested(), 2u);
    EXPECT_EQ(e.max_feasible(), 1u);
    EXPECT_NE(std::string(e.what()).find("max feasible r is 1"), std::string::npos);
    EXPECT_EQ(e.category(), Error::Category::kNumeric);
  }
  EXPECT_THROW(fit(K, Lw, L, -1.0, 1), DataError);
  EXPECT_THROW(fit(K, Lw, L, 1.0, 0), DataError);
}

TEST(Fit, MonotoneNesting) {
  Rng rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const Problem p = random_problem(rng, 30, 2, 3, 9, 3);
    const TransformModel small = fit(p.K, p.Lw, p.L, 1.0, 2);
    const TransformModel large = fit(p.K, p.Lw, p.L, 1.0, 3);
    EXPECT_LE(max_abs(large.a.leftCols(2) - small.a), 1e-12);
  }
}

TEST(Fit, ScaleCouplingPreservesSpan) {
  Rng rng(25);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Problem p = random_problem(rng, 25, 3, 3, 12, 3);
    const Index r = 2;
    const TransformModel base = fit(p.K, p.Lw, p.L, 0.5, r + 1);
    const Vector ev = base.eigenvalues_of_M;
    if (ev(1) - ev(0) < 1e-6 || ev(2) - ev(1) < 1e-6) continue;
    ++checked;
    const SupervisedLaplacian Lw2{2.0 * p.Lw.values};
    const TransformModel a1 = fit(p.K, p.Lw, p.L, 0.5, r);
    const TransformModel a2 = fit(p.K, Lw2, p.L, 1.0, r);
    const Matrix Q1 = orthonormal_basis(a1.a);
    const Matrix Q2 = orthonormal_basis(a2.a);
    const Matrix residual = Q2 - Q1 * (Q1.transpose() * Q2);
    // Largest singular value of the residual is the sine of the largest
    // principal angle.
    Eigen::JacobiSVD<Matrix> svd(residual);
    EXPECT_LE(svd.singularValues()(0), 1e-6);
    EXPECT_NEAR(a2.eigenvalues_of_M.sum(), 2.0 * a1.eigenvalues_of_M.sum(),
                1e-8 * std::max(1.0, std::abs(a1.eigenvalues_of_M.sum())));
  }
  EXPECT_GT(checked, 5);
}

TEST(ObjectiveValue, ZeroTransformViolatesConstraint) {
  const GramMatrix K{Matrix::Identity(3, 3), LinearKernel{}};
  const SupervisedLaplacian Lw{Matrix::Zero(3, 3)};
  const CliqueLaplacian L{Matrix::Identity(3, 3), 1.0, 2};
  const ObjectiveValue v = objective_value(Matrix::Zero(3, 2), K, Lw, L, 1.0);
  EXPECT_EQ(v.objective, 0.0);
  EXPECT_EQ(v.constraint_residual, 1.0);
}

TEST(ObjectiveValue, MatchesLoopOracleAndRotationInvariance) {
  Rng rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const Problem p = random_problem(rng, 15, 2, 2, 6, 3);
    const Matrix a = oracle::gaussian_matrix(15, 3, rng);
    for (double lambda : {0.0, 2.0}) {
      const Matrix S = p.Lw.values + lambda * p.L.values;
      const double got = objective_value(a, p.K, p.Lw, p.L, lambda).objective;
      EXPECT_NEAR(got, oracle::loop_objective(a, p.K.values, S),
                  1e-10 * std::max(1.0, std::abs(got)));
      const Matrix Q = orthonormal_basis(oracle::gaussian_matrix(3, 3, rng));
      EXPECT_NEAR(objective_value(a * Q, p.K, p.Lw, p.L, lambda).objective, got,
                  1e-10 * std::max(1.0, std::abs(got)));
    }
  }
}

TEST(Transform, IdentityKernel) {
  TransformModel model;
  model.a = Matrix::Zero(3, 1);
  model.a(0, 0) = 1.0;
  model.kernel = LinearKernel{};
  const GramMatrix K{Matrix::Identity(3, 3), LinearKernel{}};
  EXPECT_EQ(transform_train(K, model), model.a.transpose());
}

TEST(Transform, TestMatchesTrainAndLoopOracle) {
  Rng rng(27);
  const Problem p = random_problem(rng, 20, 3, 2, 6, 3);
  const TransformModel model = fit(p.K, p.Lw, p.L, 1.0, 2);
  const Matrix train = transform_train(p.K, model);
  EXPECT_TRUE(transform_test(p.K.values, model) == train);

  const Index j = 7;
  const Matrix dup = cross_gram(p.X.col(j), p.X, p.K.spec);
  EXPECT_LE(max_abs(transform_test(dup, model) - train.col(j)), 1e-12);

  const Matrix test = oracle::gaussian_matrix(3, 5, rng);
  const Matrix Kc = cross_gram(test, p.X, p.K.spec);
  EXPECT_LE(max_abs(transform_test(Kc, model) - oracle::loop_transform(model.a, Kc)),
            1e-12);
  EXPECT_THROW(transform_test(Matrix::Zero(2, 19), model), DataError);
}

TEST(ModelIo, ExactRoundTrip) {
  Rng rng(28);
  const Problem p = random_problem(rng, 12, 2, 2, 4, 3);
  TransformModel model = fit(p.K, p.Lw, p.L, 0.3, 2);
  model.theta = 1.0;
  model.k = 3;
  std::ostringstream out;
  write_model(out, model);
  std::istringstream in(out.str());
  const TransformModel back = read_model(in);
  EXPECT_TRUE(back.a == model.a);
  EXPECT_TRUE(back.eigenvalues_of_M == model.eigenvalues_of_M);
  EXPECT_EQ(back.lambda_reg, 0.3);
  EXPECT_EQ(back.k, 3);
  EXPECT_EQ(std::get<RbfKernel>(back.kernel).gamma, std::get<RbfKernel>(model.kernel).gamma);
  EXPECT_FALSE(back.centering.has_value());

  std::ostringstream again;
  write_model(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(ModelIo, RejectsMalformed) {
  std::istringstream bad_header("locdisc-model v2\n");
  EXPECT_THROW(read_model(bad_header), DataError);
  std::istringstream truncated("locdisc-model v1\nn,2\nr,1\n");
  EXPECT_THROW(read_model(truncated), DataError);
}

}  // namespace
}  // namespace locdisc
