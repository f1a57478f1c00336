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

#include <cmath>

#include <gtest/gtest.h>

#include "locdisc/dataset.hpp"
#include "locdisc/error.hpp"
#include "locdisc/eval.hpp"
#include "locdisc/experiment.hpp"
#include "locdisc/kernels.hpp"
#include "locdisc/random.hpp"
#include "oracles.hpp"

namespace locdisc {
namespace {

double max_abs(const Matrix& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

TEST(Classifier, SeparableOneDimensional) {
  const Matrix F{{-1.0, 1.0}};
  const std::vector<int> labels{0, 1};
  const LinearClassifier clf = fit_linear_classifier(F, labels, 2, 1e-8);
  const Matrix scores = decision_scores(clf, F);
  EXPECT_GT(clf.weights(0, 1), 0.0);
  EXPECT_LT(clf.weights(0, 0), 0.0);
  EXPECT_GT(scores(1, 1), 0.0);
  EXPECT_LT(scores(0, 1), 0.0);
  EXPECT_GT(scores(0, 0), 0.0);
  EXPECT_LT(scores(1, 0), 0.0);
}

TEST(Classifier, ShrinkageBound) {
  Rng rng(30);
  const Matrix F = oracle::gaussian_matrix(3, 20, rng);
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) labels.push_back(i % 3);
  Matrix Ft(4, 20);
  Ft << F, Matrix::Ones(1, 20);
  for (double ridge : {1e2, 1e4, 1e6}) {
    const LinearClassifier clf = fit_linear_classifier(F, labels, 3, ridge);
    for (int t = 0; t < 3; ++t) {
      Vector z(20);
      for (int i = 0; i < 20; ++i) z(i) = labels[static_cast<std::size_t>(i)] == t ? 1.0 : -1.0;
      Vector w(4);
      w << clf.weights.col(t), clf.bias(t);
      EXPECT_LE(w.norm(), (Ft * z).norm() / ridge * (1.0 + 1e-12));
    }
  }
}

TEST(Classifier, MatchesDenseOracleAndIsBitwiseDeterministic) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Index r = 1 + static_cast<Index>(rng.index(5));
    const Index m = 1 + static_cast<Index>(rng.index(30));
    const int c = 1 + static_cast<int>(rng.index(4));
    const Matrix F = oracle::gaussian_matrix(r, m, rng);
    std::vector<int> labels;
    for (Index i = 0; i < m; ++i) labels.push_back(static_cast<int>(rng.index(static_cast<std::uint64_t>(c))));
    const double ridge = std::array{1e-2, 1.0, 1e2}[rng.index(3)];
    const LinearClassifier clf = fit_linear_classifier(F, labels, c, ridge);
    const Matrix expected = oracle::dense_ridge(F, labels, c, ridge);
    EXPECT_LE(max_abs(clf.weights - expected.topRows(r)), 1e-9);
    EXPECT_LE(max_abs(clf.bias.transpose() - expected.bottomRows(1)), 1e-9);

    const LinearClassifier again = fit_linear_classifier(F, labels, c, ridge);
    EXPECT_TRUE(clf.weights == again.weights);
    EXPECT_TRUE(clf.bias == again.bias);
  }
}

TEST(Classifier, Errors) {
  const Matrix F{{1.0, 2.0}};
  EXPECT_THROW(fit_linear_classifier(F, std::vector<int>{0}, 1, 1.0), DataError);
  EXPECT_THROW(fit_linear_classifier(F, std::vector<int>{0, 2}, 2, 1.0), DataError);
  EXPECT_THROW(fit_linear_classifier(F, std::vector<int>{0, 1}, 2, 0.0), DataError);
}

TEST(DecisionScores, ZeroAndDuplicate) {
  LinearClassifier zero{Matrix::Zero(2, 3), Vector::Zero(3), 1.0};
  EXPECT_EQ(decision_scores(zero, Matrix::Ones(2, 4)), Matrix::Zero(4, 3));

  Rng rng(32);
  LinearClassifier clf{oracle::gaussian_matrix(2, 3, rng), oracle::gaussian_matrix(3, 1, rng), 1.0};
  Matrix F = oracle::gaussian_matrix(2, 3, rng);
  F.col(2) = F.col(0);
  const Matrix s = decision_scores(clf, F);
  EXPECT_TRUE(s.row(0) == s.row(2));
}

TEST(Map, PerfectOrdering) {
  const Matrix scores{{0.9, 0.1}, {0.8, 0.2}, {0.3, 0.7}};
  EXPECT_EQ(mean_average_precision(scores, std::vector<int>{0, 0, 1}), 1.0);
}

TEST(Map, FiveSixths) {
  const Matrix scores{{3.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}};
  const auto ap = average_precision_per_class(scores, std::vector<int>{0, 1, 0});
  ASSERT_TRUE(ap[0].has_value());
  EXPECT_DOUBLE_EQ(*ap[0], 5.0 / 6.0);
}

TEST(Map, TiesGoToLowerIndex) {
  const Matrix scores{{1.0, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(*average_precision_per_class(scores, std::vector<int>{0, 1})[0], 1.0);
  EXPECT_EQ(*average_precision_per_class(scores, std::vector<int>{1, 0})[0], 0.5);
}

TEST(Map, AbsentClassIsSkipped) {
  const Matrix scores{{1.0, 0.0}, {0.5, 0.0}};
  const auto ap = average_precision_per_class(scores, std::vector<int>{0, 0});
  EXPECT_FALSE(ap[1].has_value());
  EXPECT_EQ(mean_average_precision(scores, std::vector<int>{0, 0}), 1.0);
}

TEST(Map, Errors) {
  EXPECT_THROW(mean_average_precision(Matrix::Zero(0, 2), std::vector<int>{}), DataError);
  EXPECT_THROW(mean_average_precision(Matrix::Zero(2, 2), std::vector<int>{0}), DataError);
  EXPECT_THROW(mean_average_precision(Matrix::Zero(1, 2), std::vector<int>{2}), DataError);
}

struct MapInstance {
  Matrix scores;
  std::vector<int> truth;
};

MapInstance random_map_instance(Rng& rng) {
  const Index t = 1 + static_cast<Index>(rng.index(20));
  const int c = 1 + static_cast<int>(rng.index(4));
  MapInstance inst;
  inst.scores = Matrix(t, c);
  const bool coarse = rng.index(2) == 0;
  for (Index i = 0; i < t; ++i) {
    for (int j = 0; j < c; ++j) {
      inst.scores(i, j) = coarse ? static_cast<double>(rng.index(4)) : rng.normal();
    }
  }
  for (Index i = 0; i < t; ++i) {
    inst.truth.push_back(static_cast<int>(rng.index(static_cast<std::uint64_t>(c))));
  }
  return inst;
}

TEST(Map, MatchesNaiveOracleRangeAndMonotoneInvariance) {
  Rng rng(33);
  for (int trial = 0; trial < 1000; ++trial) {
    MapInstance inst = random_map_instance(rng);
    const double got = mean_average_precision(inst.scores, inst.truth);
    EXPECT_NEAR(got, oracle::naive_map(inst.scores, inst.truth), 1e-12);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);

    const auto col = static_cast<Index>(rng.index(static_cast<std::uint64_t>(inst.scores.cols())));
    inst.scores.col(col) = inst.scores.col(col).unaryExpr([](double x) { return 3.0 * x + 1.0; });
    EXPECT_EQ(mean_average_precision(inst.scores, inst.truth), got);
  }
}

TEST(Kpca, IdenticalSamplesHaveNoComponent) {
  const GramMatrix K{Matrix::Ones(4, 4), RbfKernel{1.0}};
  EXPECT_THROW(kpca_baseline(K, 1), RankError);
}

TEST(Kpca, TwoPointsGiveOneComponent) {
  const Matrix X{{0.0, 1.0}};
  const GramMatrix K = gram_matrix(X, RbfKernel{1.0});
  const TransformModel model = kpca_baseline(K, 1);
  EXPECT_EQ(model.dims(), 1);
  try {
    kpca_baseline(K, 2);
    FAIL() << "expected RankError";
  } catch (const RankError& e) {
    EXPECT_EQ(e.max_feasible(), 1u);
  }
}

TEST(Kpca, CentredFeaturesHaveZeroMean) {
  Rng rng(34);
  const Matrix X = oracle::gaussian_matrix(3, 40, rng);
  const GramMatrix K = gram_matrix(X, RbfKernel{0.4});
  const TransformModel model = kpca_baseline(K, 5);
  ASSERT_TRUE(model.centering.has_value());
  const Matrix F = transform_train(K, model);
  EXPECT_LE(max_abs(F.rowwise().mean()), 1e-9);
  // Components are orthogonal with variance equal to their eigenvalue.
  const Matrix cov = F * F.transpose();
  EXPECT_LE(max_abs(cov - Matrix(model.eigenvalues_of_M.asDiagonal())), 1e-8);
  for (Index i = 1; i < 5; ++i) {
    EXPECT_GE(model.eigenvalues_of_M(i - 1), model.eigenvalues_of_M(i));
  }
}

ExperimentConfig blob_config(int p) {
  ExperimentConfig cfg;
  cfg.labels_per_class = p;
  cfg.dataset_id = "blobs";
  return cfg;
}

TEST(Split, StratifiedFloorPerClass) {
  const Dataset ds = make_gaussian_blobs(3, 7, 2, 1.0, 1);
  const TrainTestSplit split = stratified_train_test_split(ds, 0.5, 4);
  EXPECT_EQ(split.test.size(), 9u);
  EXPECT_EQ(split.train.size(), 12u);
  EXPECT_TRUE(std::is_sorted(split.train.begin(), split.train.end()));
  const TrainTestSplit again = stratified_train_test_split(ds, 0.5, 4);
  EXPECT_EQ(split.test, again.test);
  const Dataset pair = make_gaussian_blobs(2, 1, 2, 1.0, 1);
  EXPECT_EQ(stratified_train_test_split(pair, 0.9, 0).train.size(), 2u);
}

TEST(RunExperiment, RepeatsMeanAndTrainOnlyShapes) {
  const Dataset ds = make_gaussian_blobs(2, 30, 2, 0.5, 3);
  const ExperimentReport report = run_experiment(ds, blob_config(3), Method::kOurs, 5, 10);
  ASSERT_EQ(report.per_repeat_map.size(), 5u);
  double sum = 0.0;
  for (double v : report.per_repeat_map) sum += v;
  EXPECT_DOUBLE_EQ(report.mean_map, sum / 5.0);
  for (std::size_t i = 0; i < 5; ++i) {
    const RepeatRecord& rec = report.repeats[i];
    EXPECT_EQ(rec.seed, 10u + i);
    EXPECT_EQ(rec.train_size + rec.test_size, ds.size());
    EXPECT_EQ(rec.gram_size, rec.train_size);
    EXPECT_EQ(rec.labeled_count, 6);
  }
}

TEST(RunExperiment, SingleRepeatHasZeroStd) {
  const Dataset ds = make_gaussian_blobs(2, 20, 2, 0.5, 3);
  EXPECT_EQ(run_experiment(ds, blob_config(2), Method::kKpca, 1, 0).std_map, 0.0);
}

TEST(RunExperiment, DeterministicReport) {
  const Dataset ds = make_concentric_rings(30, 0.1, 2);
  for (Method method : {Method::kOurs, Method::kOursLambda0, Method::kKpca}) {
    auto a = report_to_json(run_experiment(ds, blob_config(2), method, 3, 7));
    auto b = report_to_json(run_experiment(ds, blob_config(2), method, 3, 7));
    a.erase("wall_time_seconds");
    b.erase("wall_time_seconds");
    EXPECT_EQ(a.dump(), b.dump());
  }
}

TEST(RunExperiment, NearSeparableBlobs) {
  const Dataset ds = make_gaussian_blobs(2, 50, 2, 0.3, 1);
  const ExperimentReport report = run_experiment(ds, blob_config(10), Method::kOurs, 5, 0);
  EXPECT_GE(report.mean_map, 0.99);
}

TEST(RunExperiment, ErrorsKeepCategory) {
  const Dataset ds = make_gaussian_blobs(2, 10, 2, 0.5, 3);
  ExperimentConfig cfg = blob_config(2);
  cfg.r = 500;
  try {
    run_experiment(ds, cfg, Method::kOurs, 2, 0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), Error::Category::kNumeric);
    EXPECT_NE(std::string(e.what()).find("repeat 0"), std::string::npos);
  }
  cfg.r.reset();
  cfg.k = 0;
  cfg.ridge = -1.0;
  try {
    run_experiment(ds, cfg, Method::kOurs, 1, 0);
    FAIL() << "expected a config error";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("k must"), std::string::npos);
    EXPECT_NE(msg.find("ridge must"), std::string::npos);
  }
}

TEST(Methods, NamesRoundTrip) {
  for (Method m : {Method::kOurs, Method::kOursLambda0, Method::kKpca}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_method("svm"), ConfigError);
}

}  // namespace
}  // namespace locdisc
