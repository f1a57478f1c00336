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

#include "locdisc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "locdisc/error.hpp"
#include "locdisc/log.hpp"
#include "locdisc/random.hpp"

namespace locdisc {

std::string to_string(Method method) {
  switch (method) {
    case Method::kOurs:
      return "ours";
    case Method::kOursLambda0:
      return "ours_lambda0";
    case Method::kKpca:
      return "kpca";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "ours") return Method::kOurs;
  if (name == "ours_lambda0") return Method::kOursLambda0;
  if (name == "kpca") return Method::kKpca;
  throw ConfigError("unknown method '" + name +
                    "' (expected ours, ours_lambda0 or kpca)");
}

KernelSpec resolve_kernel(const KernelChoice& choice, const Matrix& train) {
  switch (choice.kind) {
    case KernelChoice::Kind::kRbf:
      return RbfKernel{choice.gamma ? *choice.gamma
                                    : median_heuristic_gamma(train)};
    case KernelChoice::Kind::kChiSquared:
      return ChiSquaredKernel{
          choice.gamma ? *choice.gamma : median_heuristic_gamma(train),
          choice.epsilon};
    case KernelChoice::Kind::kLinear:
      return LinearKernel{};
  }
  throw ConfigError("unknown kernel kind");
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  if (kernel.gamma && !(*kernel.gamma > 0.0)) {
    problems.push_back("kernel gamma must be positive");
  }
  if (!(kernel.epsilon > 0.0)) problems.push_back("kernel epsilon must be positive");
  if (!(theta > 0.0) || !std::isfinite(theta)) problems.push_back("theta must be positive");
  if (k < 1) problems.push_back("k must be at least 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    problems.push_back("lambda must be finite and nonnegative");
  }
  if (r && *r < 1) problems.push_back("r must be at least 1");
  if (!(drop_tolerance >= 0.0)) problems.push_back("drop_tolerance must be nonnegative");
  if (!(ridge > 0.0) || !std::isfinite(ridge)) problems.push_back("ridge must be positive");
  if (labels_per_class < 1) problems.push_back("labels_per_class must be at least 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    problems.push_back("test_fraction must lie in (0, 1)");
  }
  if (!problems.empty()) {
    std::string msg = "invalid experiment configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

TrainTestSplit stratified_train_test_split(const Dataset& ds,
                                           double test_fraction,
                                           std::uint64_t seed) {
  if (!ds.fully_labeled()) {
    throw DataError("train/test split needs ground-truth labels for every sample");
  }
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(ds.class_count));
  for (Index i = 0; i < ds.size(); ++i) {
    members[static_cast<std::size_t>(*ds.labels[static_cast<std::size_t>(i)])]
        .push_back(i);
  }
  TrainTestSplit split;
  Rng rng(seed);
  for (auto& pool : members) {
    if (pool.empty()) continue;
    rng.shuffle(pool);
    auto n_test = static_cast<std::size_t>(
        std::floor(static_cast<double>(pool.size()) * test_fraction));
    n_test = std::min(n_test, pool.size() - 1);
    split.test.insert(split.test.end(), pool.begin(),
                      pool.begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train.insert(split.train.end(),
                       pool.begin() + static_cast<std::ptrdiff_t>(n_test),
                       pool.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

FittedPipeline fit_pipeline(const Dataset& train, const ExperimentConfig& cfg,
                            Method method) {
  cfg.validate();
  train.validate();
  auto [ordered, permutation] = reorder_labeled_first(train);
  (void)permutation;
  const Index m = ordered.labeled_count();
  if (m == 0) throw DataError("training set has no labeled sample");

  const KernelSpec kernel = resolve_kernel(cfg.kernel, ordered.samples);
  const GramMatrix K = gram_matrix(ordered.samples, kernel);
  const Index r = cfg.r ? *cfg.r : ordered.class_count;

  FittedPipeline out;
  out.gram_size = K.size();
  if (method == Method::kKpca) {
    out.model = kpca_baseline(K, r, cfg.drop_tolerance);
  } else {
    const auto Lw = build_supervised_laplacian(ordered.labels, m);
    const auto cliques = knn_cliques(ordered.samples, cfg.k);
    const auto L = assemble_clique_laplacian(cliques, ordered.samples, cfg.theta);
    const double lambda = method == Method::kOursLambda0 ? 0.0 : cfg.lambda;
    out.model = fit(K, Lw, L, lambda, r, cfg.drop_tolerance);
  }

  const Matrix features = transform_train(K, out.model).leftCols(m);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    labels.push_back(*ordered.labels[static_cast<std::size_t>(i)]);
  }
  out.classifier =
      fit_linear_classifier(features, labels, ordered.class_count, cfg.ridge);
  out.train = std::move(ordered);
  return out;
}

Matrix score_samples(const FittedPipeline& pipeline, const Matrix& samples) {
  const Matrix K_cross =
      cross_gram(samples, pipeline.train.samples, pipeline.model.kernel);
  return decision_scores(pipeline.classifier,
                         transform_test(K_cross, pipeline.model));
}

ExperimentReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg,
                                Method method, int repeats,
                                std::uint64_t base_seed) {
  cfg.validate();
  ds.validate();
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.method = method;
  report.config = cfg;
  report.base_seed = base_seed;
  for (int i = 0; i < repeats; ++i) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    try {
      const auto split = stratified_train_test_split(ds, cfg.test_fraction, seed);
      const Dataset full_train = select_samples(ds, split.train);
      const auto labeled = sample_labels_per_class(
          full_train, cfg.labels_per_class, derive_seed(seed, 1));
      const Dataset train = apply_split(full_train, labeled);
      const Dataset test = select_samples(ds, split.test);

      const FittedPipeline pipeline = fit_pipeline(train, cfg, method);
      if (pipeline.gram_size != train.size() ||
          pipeline.model.train_size() != train.size()) {
        throw NumericError("fitted model is not sized to the training set");
      }
      const Matrix scores = score_samples(pipeline, test.samples);
      std::vector<int> truth;
      truth.reserve(test.labels.size());
      for (const auto& l : test.labels) truth.push_back(*l);

      RepeatRecord rec;
      rec.seed = seed;
      rec.train_size = train.size();
      rec.test_size = test.size();
      rec.labeled_count = train.labeled_count();
      rec.gram_size = pipeline.gram_size;
      rec.map = mean_average_precision(scores, truth);
      report.repeats.push_back(rec);
      report.per_repeat_map.push_back(rec.map);
      log::debug(to_string(method) + " repeat " + std::to_string(i) +
                 " seed " + std::to_string(seed) +
                 " MAP " + std::to_string(rec.map));
    } catch (const Error& e) {
      throw Error(e.category(), to_string(method) + " repeat " +
                                    std::to_string(i) + " (seed " +
                                    std::to_string(seed) + "): " + e.what());
    }
  }

  const auto count = static_cast<double>(report.per_repeat_map.size());
  double sum = 0.0;
  for (const double v : report.per_repeat_map) sum += v;
  report.mean_map = sum / count;
  double sq = 0.0;
  for (const double v : report.per_repeat_map) {
    sq += (v - report.mean_map) * (v - report.mean_map);
  }
  report.std_map = std::sqrt(sq / count);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  const auto& cfg = report.config;
  nlohmann::json kernel;
  switch (cfg.kernel.kind) {
    case KernelChoice::Kind::kRbf:
      kernel["type"] = "rbf";
      break;
    case KernelChoice::Kind::kChiSquared:
      kernel["type"] = "chi2";
      kernel["epsilon"] = cfg.kernel.epsilon;
      break;
    case KernelChoice::Kind::kLinear:
      kernel["type"] = "linear";
      break;
  }
  if (cfg.kernel.kind != KernelChoice::Kind::kLinear) {
    kernel["gamma"] = cfg.kernel.gamma ? nlohmann::json(*cfg.kernel.gamma)
                                       : nlohmann::json("median");
  }

  nlohmann::json params;
  params["kernel"] = kernel;
  params["theta"] = cfg.theta;
  params["k"] = cfg.k;
  params["lambda"] = report.method == Method::kOursLambda0 ? 0.0 : cfg.lambda;
  params["r"] = cfg.r ? nlohmann::json(*cfg.r) : nlohmann::json("classes");
  params["drop_tolerance"] = cfg.drop_tolerance;
  params["ridge"] = cfg.ridge;
  params["labels_per_class"] = cfg.labels_per_class;
  params["test_fraction"] = cfg.test_fraction;

  nlohmann::json seeds = nlohmann::json::array();
  nlohmann::json detail = nlohmann::json::array();
  for (const auto& rec : report.repeats) {
    seeds.push_back(rec.seed);
    detail.push_back({{"seed", rec.seed},
                      {"train_size", rec.train_size},
                      {"test_size", rec.test_size},
                      {"labeled_count", rec.labeled_count},
                      {"gram_size", rec.gram_size},
                      {"map", rec.map}});
  }

  nlohmann::json out;
  out["method"] = to_string(report.method);
  out["dataset"] = cfg.dataset_id;
  out["params"] = params;
  out["base_seed"] = report.base_seed;
  out["seeds"] = seeds;
  out["repeats"] = detail;
  out["per_repeat_map"] = report.per_repeat_map;
  out["mean_map"] = report.mean_map;
  out["std_map"] = report.std_map;
  out["wall_time_seconds"] = report.wall_time_seconds;
  return out;
}

}  // namespace locdisc
