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

#include "locdisc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "locdisc/csv.hpp"
#include "locdisc/error.hpp"

namespace locdisc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double squared_distance(const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& y) {
  double sum = 0.0;
  for (Index j = 0; j < x.size(); ++j) {
    const double diff = x(j) - y(j);
    sum += diff * diff;
  }
  return sum;
}

Matrix load_precomputed(const PrecomputedKernel& spec, Index n) {
  Matrix values = csv::read_matrix(spec.path);
  if (values.rows() != values.cols()) {
    throw DataError("precomputed kernel " + spec.path.string() +
                    " is not square");
  }
  if (values.rows() != n) {
    throw DataError("precomputed kernel " + spec.path.string() + " is " +
                    std::to_string(values.rows()) + "x" +
                    std::to_string(values.cols()) + ", expected " +
                    std::to_string(n) + "x" + std::to_string(n));
  }
  const double asym = (values - values.transpose()).cwiseAbs().maxCoeff();
  if (asym > kPrecomputedSymmetryTolerance) {
    throw DataError("precomputed kernel " + spec.path.string() +
                    " is not symmetric (max asymmetry " +
                    csv::format_real(asym) + ")");
  }
  return values;
}

}  // namespace

void validate(const KernelSpec& spec) {
  std::visit(Overloaded{
                 [](const RbfKernel& k) {
                   if (!(k.gamma > 0.0) || !std::isfinite(k.gamma)) {
                     throw DataError("RBF gamma must be positive");
                   }
                 },
                 [](const ChiSquaredKernel& k) {
                   if (!(k.gamma > 0.0) || !std::isfinite(k.gamma)) {
                     throw DataError("chi-squared gamma must be positive");
                   }
                   if (!(k.epsilon > 0.0)) {
                     throw DataError("chi-squared epsilon must be positive");
                   }
                 },
                 [](const LinearKernel&) {},
                 [](const PrecomputedKernel&) {},
             },
             spec);
}

std::string kernel_name(const KernelSpec& spec) {
  return std::visit(Overloaded{
                        [](const RbfKernel&) { return std::string("rbf"); },
                        [](const ChiSquaredKernel&) { return std::string("chi2"); },
                        [](const LinearKernel&) { return std::string("linear"); },
                        [](const PrecomputedKernel&) {
                          return std::string("precomputed");
                        },
                    },
                    spec);
}

double kernel_eval(const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y, const KernelSpec& spec) {
  if (x.size() != y.size()) {
    throw DataError("kernel arguments differ in dimension (" +
                    std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()) + ")");
  }
  return std::visit(
      Overloaded{
          [&](const RbfKernel& k) {
            return std::exp(-k.gamma * squared_distance(x, y));
          },
          [&](const ChiSquaredKernel& k) {
            double sum = 0.0;
            for (Index j = 0; j < x.size(); ++j) {
              if (x(j) < 0.0 || y(j) < 0.0) {
                throw DataError("chi-squared kernel needs nonnegative inputs");
              }
              const double diff = x(j) - y(j);
              sum += diff * diff / (x(j) + y(j) + k.epsilon);
            }
            return std::exp(-k.gamma * sum);
          },
          [&](const LinearKernel&) {
            double sum = 0.0;
            for (Index j = 0; j < x.size(); ++j) sum += x(j) * y(j);
            return sum;
          },
          [&](const PrecomputedKernel&) -> double {
            throw DataError(
                "a precomputed kernel cannot be evaluated on raw samples");
          },
      },
      spec);
}

GramMatrix gram_matrix(const Matrix& X, const KernelSpec& spec) {
  if (X.cols() < 1) throw DataError("Gram matrix needs at least one sample");
  validate(spec);
  const Index n = X.cols();
  if (const auto* pre = std::get_if<PrecomputedKernel>(&spec)) {
    Matrix values = load_precomputed(*pre, n);
    Matrix sym = 0.5 * (values + values.transpose());
    return {std::move(sym), spec};
  }
  // Every cell depends only on its own pair of columns, so the row loop can
  // be split across workers without changing the result.
  Matrix values(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      values(i, j) = kernel_eval(X.col(i), X.col(j), spec);
    }
  }
  Matrix sym = 0.5 * (values + values.transpose());
  return {std::move(sym), spec};
}

Matrix cross_gram(const Matrix& X_test, const Matrix& X_train,
                  const KernelSpec& spec) {
  if (X_test.rows() != X_train.rows()) {
    throw DataError("test samples have dimension " +
                    std::to_string(X_test.rows()) + ", training samples " +
                    std::to_string(X_train.rows()));
  }
  validate(spec);
  Matrix out(X_test.cols(), X_train.cols());
  for (Index j = 0; j < X_test.cols(); ++j) {
    for (Index i = 0; i < X_train.cols(); ++i) {
      out(j, i) = kernel_eval(X_test.col(j), X_train.col(i), spec);
    }
  }
  return out;
}

double median_heuristic_gamma(const Matrix& X) {
  const Index n = X.cols();
  if (n < 2) throw DataError("median heuristic needs at least two samples");
  std::vector<double> d2;
  d2.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      d2.push_back(squared_distance(X.col(i), X.col(j)));
    }
  }
  std::sort(d2.begin(), d2.end());
  const std::size_t m = d2.size();
  const double median =
      m % 2 == 1 ? d2[m / 2] : 0.5 * (d2[m / 2 - 1] + d2[m / 2]);
  if (!(median > 0.0)) {
    throw DataError("median pairwise distance is zero; samples are identical");
  }
  return 1.0 / median;
}

}  // namespace locdisc
