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

#include "locdisc/eval.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "locdisc/error.hpp"
#include "locdisc/log.hpp"

namespace locdisc {

LinearClassifier fit_linear_classifier(const Matrix& features,
                                       std::span<const int> labels,
                                       int class_count, double ridge) {
  const Index m = features.cols();
  const Index r = features.rows();
  if (m < 1) throw DataError("classifier needs at least one labeled sample");
  if (static_cast<Index>(labels.size()) != m) {
    throw DataError("classifier got " + std::to_string(labels.size()) +
                    " labels for " + std::to_string(m) + " samples");
  }
  if (class_count < 1) throw DataError("class count must be positive");
  if (!(ridge > 0.0)) throw DataError("ridge must be positive");
  if (!features.allFinite()) {
    throw NumericError("classifier features contain non-finite values");
  }

  Matrix augmented(r + 1, m);
  augmented.topRows(r) = features;
  augmented.row(r).setOnes();

  Matrix targets = Matrix::Constant(m, class_count, -1.0);
  for (Index j = 0; j < m; ++j) {
    const int t = labels[static_cast<std::size_t>(j)];
    if (t < 0 || t >= class_count) {
      throw DataError("classifier label " + std::to_string(t) + " out of range");
    }
    targets(j, t) = 1.0;
  }

  Matrix normal = augmented * augmented.transpose();
  normal.diagonal().array() += ridge;
  const Eigen::LLT<Matrix> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw NumericError("classifier normal equations are not positive definite");
  }
  const Matrix w = llt.solve(augmented * targets);

  LinearClassifier clf;
  clf.weights = w.topRows(r);
  clf.bias = w.row(r).transpose();
  clf.ridge = ridge;
  return clf;
}

Matrix decision_scores(const LinearClassifier& clf, const Matrix& features) {
  if (features.rows() != clf.weights.rows()) {
    throw DataError("features have dimension " +
                    std::to_string(features.rows()) + ", classifier expects " +
                    std::to_string(clf.weights.rows()));
  }
  Matrix scores = features.transpose() * clf.weights;
  scores.rowwise() += clf.bias.transpose();
  return scores;
}

std::vector<std::optional<double>> average_precision_per_class(
    const Matrix& scores, std::span<const int> truth) {
  const Index t = scores.rows();
  if (t == 0) throw DataError("average precision needs at least one sample");
  if (static_cast<Index>(truth.size()) != t) {
    throw DataError("score rows and truth labels differ in length");
  }
  const Index c = scores.cols();
  for (const int label : truth) {
    if (label < 0 || label >= c) {
      throw DataError("truth label " + std::to_string(label) +
                      " has no score column");
    }
  }
  std::vector<std::optional<double>> out(static_cast<std::size_t>(c));
  std::vector<Index> order(static_cast<std::size_t>(t));
  for (Index cls = 0; cls < c; ++cls) {
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return scores(a, cls) > scores(b, cls);
    });
    double sum = 0.0;
    Index hits = 0;
    for (Index rank = 0; rank < t; ++rank) {
      if (truth[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] ==
          cls) {
        ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
      }
    }
    if (hits > 0) out[static_cast<std::size_t>(cls)] = sum / static_cast<double>(hits);
  }
  return out;
}

double mean_average_precision(const Matrix& scores, std::span<const int> truth) {
  const auto per_class = average_precision_per_class(scores, truth);
  double sum = 0.0;
  int included = 0;
  for (std::size_t cls = 0; cls < per_class.size(); ++cls) {
    if (per_class[cls]) {
      sum += *per_class[cls];
      ++included;
    } else {
      log::warn("class " + std::to_string(cls) +
                " has no test sample; excluded from MAP");
    }
  }
  if (included == 0) throw DataError("no class has a relevant sample");
  return sum / included;
}

TransformModel kpca_baseline(const GramMatrix& K, Index r,
                             double drop_tolerance) {
  const Index n = K.size();
  if (K.values.rows() != n || K.values.cols() != n || n == 0) {
    throw DataError("KPCA needs a square, nonempty kernel matrix");
  }
  if (r < 1) throw DataError("KPCA needs r >= 1");

  KernelCentering centering;
  centering.column_means = K.values.colwise().mean().transpose();
  centering.grand_mean = centering.column_means.mean();
  Matrix centred = K.values;
  centred.colwise() -= centering.column_means;  // K symmetric: row means
  centred.rowwise() -= centering.column_means.transpose();
  centred.array() += centering.grand_mean;
  centred = 0.5 * (centred + centred.transpose());

  const Eigen::SelfAdjointEigenSolver<Matrix> solver(centred);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of the centred kernel failed");
  }
  const Vector& values = solver.eigenvalues();
  const double largest = values(n - 1);
  Index rank = 0;
  if (largest > 0.0) {
    for (Index j = 0; j < n; ++j) {
      if (values(j) > drop_tolerance * largest && values(j) > 0.0) ++rank;
    }
  }
  if (r > rank) {
    throw RankError(static_cast<std::size_t>(r), static_cast<std::size_t>(rank));
  }

  TransformModel model;
  model.kernel = K.spec;
  model.a.resize(n, r);
  model.eigenvalues_of_M.resize(r);
  for (Index l = 0; l < r; ++l) {
    const Index src = n - 1 - l;
    Vector v = solver.eigenvectors().col(src);
    normalize_sign(v);
    model.a.col(l) = v / std::sqrt(values(src));
    model.eigenvalues_of_M(l) = values(src);
  }
  model.centering = std::move(centering);
  return model;
}

}  // namespace locdisc
