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

#include "locdisc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Cholesky>

#include "locdisc/error.hpp"

namespace locdisc {

SupervisedLaplacian build_supervised_laplacian(std::span<const Label> labels,
                                               Index labeled_count) {
  const auto n = static_cast<Index>(labels.size());
  if (labeled_count < 0 || labeled_count > n) {
    throw DataError("labeled count out of range");
  }
  for (Index i = 0; i < labeled_count; ++i) {
    if (!labels[static_cast<std::size_t>(i)]) {
      throw DataError("sample " + std::to_string(i) +
                      " is unlabeled but lies in the labeled block");
    }
  }
  Matrix W = Matrix::Zero(n, n);
  for (Index i = 0; i < labeled_count; ++i) {
    for (Index j = 0; j < labeled_count; ++j) {
      if (*labels[static_cast<std::size_t>(i)] ==
          *labels[static_cast<std::size_t>(j)]) {
        W(i, j) = 1.0;
      }
    }
  }
  Matrix Lw = -W;
  Lw.diagonal() += W.rowwise().sum();
  return {std::move(Lw)};
}

CliqueSet knn_cliques(const Matrix& X, int k) {
  const Index n = X.cols();
  if (k < 1) throw DataError("clique size must be at least 1");
  if (k > n) {
    throw DataError("clique size " + std::to_string(k) +
                    " exceeds the sample count " + std::to_string(n));
  }
  Matrix d2(n, n);
  for (Index i = 0; i < n; ++i) {
    d2(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (Index f = 0; f < X.rows(); ++f) {
        const double diff = X(f, i) - X(f, j);
        sum += diff * diff;
      }
      d2(i, j) = sum;
      d2(j, i) = sum;
    }
  }
  CliqueSet out;
  out.k = k;
  out.cliques.resize(static_cast<std::size_t>(n));
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    order.clear();
    for (Index j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    const auto by_distance = [&](Index a, Index b) {
      if (d2(i, a) != d2(i, b)) return d2(i, a) < d2(i, b);
      return a < b;
    };
    const auto middle = order.begin() + (k - 1);
    std::partial_sort(order.begin(), middle, order.end(), by_distance);
    auto& clique = out.cliques[static_cast<std::size_t>(i)];
    clique.reserve(static_cast<std::size_t>(k));
    clique.push_back(i);
    clique.insert(clique.end(), order.begin(), middle);
  }
  return out;
}

CenteringMatrix centering_matrix(int k) {
  if (k < 1) throw DataError("centering matrix needs k >= 1");
  const double off = -1.0 / static_cast<double>(k);
  Matrix H = Matrix::Constant(k, k, off);
  H.diagonal().array() = 1.0 + off;
  return {std::move(H)};
}

Matrix local_samples(const Matrix& X, std::span<const Index> clique) {
  Matrix out(X.rows(), static_cast<Index>(clique.size()));
  for (std::size_t q = 0; q < clique.size(); ++q) {
    out.col(static_cast<Index>(q)) = X.col(clique[q]);
  }
  return out;
}

Matrix clique_laplacian_term(const Matrix& local, double theta) {
  if (!(theta > 0.0)) throw DataError("theta must be positive");
  if (!local.allFinite()) {
    throw NumericError("clique samples contain non-finite values");
  }
  const auto k = static_cast<int>(local.cols());
  const Matrix H = centering_matrix(k).H;
  const Matrix centred = local * H;
  Matrix A = centred.transpose() * centred;
  A.diagonal().array() += theta;
  const Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NumericError("Cholesky factorization of the local scatter failed");
  }
  const Matrix term = H * llt.solve(H);
  return 0.5 * (term + term.transpose());
}

CliqueLaplacian assemble_clique_laplacian(const CliqueSet& cliques,
                                          const Matrix& X, double theta) {
  const Index n = X.cols();
  if (cliques.size() != n) {
    throw DataError("clique set has " + std::to_string(cliques.size()) +
                    " cliques for " + std::to_string(n) + " samples");
  }
  if (!(theta > 0.0)) throw DataError("theta must be positive");
  std::vector<Matrix> terms;
  terms.reserve(cliques.cliques.size());
  for (const auto& clique : cliques.cliques) {
    for (const Index p : clique) {
      if (p < 0 || p >= n) throw DataError("clique index out of range");
    }
    terms.push_back(clique_laplacian_term(local_samples(X, clique), theta));
  }
  // Fixed accumulation order: ascending clique, then row-major within a term.
  Matrix L = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& clique = cliques.cliques[i];
    const Matrix& term = terms[i];
    for (Index a = 0; a < term.rows(); ++a) {
      for (Index b = 0; b < term.cols(); ++b) {
        L(clique[static_cast<std::size_t>(a)],
          clique[static_cast<std::size_t>(b)]) += term(a, b);
      }
    }
  }
  return {std::move(L), theta, cliques.k};
}

}  // namespace locdisc
