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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "locdisc/eval.hpp"

namespace locdisc {

enum class Method { kOurs, kOursLambda0, kKpca };

std::string to_string(Method method);
/// Accepts "ours", "ours_lambda0" and "kpca".
Method parse_method(const std::string& name);

/// Kernel request before it is bound to a training set. A missing gamma is
/// filled in with median_heuristic_gamma() on the training samples.
struct KernelChoice {
  enum class Kind { kRbf, kChiSquared, kLinear };
  Kind kind = Kind::kRbf;
  std::optional<double> gamma;
  double epsilon = 1e-10;
};

KernelSpec resolve_kernel(const KernelChoice& choice, const Matrix& train);

struct ExperimentConfig {
  KernelChoice kernel;
  double theta = kDefaultTheta;
  int k = kDefaultCliqueSize;
  double lambda = 1.0;
  std::optional<int> r;  // defaults to the class count
  double drop_tolerance = kDefaultDropTolerance;
  double ridge = kDefaultRidge;
  int labels_per_class = 1;
  double test_fraction = 0.5;
  std::string dataset_id;

  /// Throws ConfigError listing every out-of-range parameter.
  void validate() const;
};

/// Stratified train/test partition; indices ascending within each side.
struct TrainTestSplit {
  std::vector<Index> train;
  std::vector<Index> test;
};

/// Per class, floor(size * test_fraction) members go to the test side,
/// keeping at least one member of every class on the training side.
TrainTestSplit stratified_train_test_split(const Dataset& ds,
                                           double test_fraction,
                                           std::uint64_t seed);

/// Everything learned from the training portion of one repeat.
struct FittedPipeline {
  Dataset train;  // reordered, labeled first
  TransformModel model;
  LinearClassifier classifier;
  Index gram_size = 0;
};

/// Fits the feature transform and the classifier on a partially labeled
/// training set. Nothing outside `train` is read.
FittedPipeline fit_pipeline(const Dataset& train, const ExperimentConfig& cfg,
                            Method method);

/// Test-set scores (t x c) of a fitted pipeline.
Matrix score_samples(const FittedPipeline& pipeline, const Matrix& samples);

struct RepeatRecord {
  std::uint64_t seed = 0;
  Index train_size = 0;
  Index test_size = 0;
  Index labeled_count = 0;
  Index gram_size = 0;
  double map = 0.0;
};

struct ExperimentReport {
  Method method = Method::kOurs;
  ExperimentConfig config;
  std::uint64_t base_seed = 0;
  std::vector<RepeatRecord> repeats;
  std::vector<double> per_repeat_map;
  double mean_map = 0.0;
  double std_map = 0.0;  // population standard deviation
  double wall_time_seconds = 0.0;
};

/// Repeat i uses seed base_seed + i: stratified train/test split, p labels
/// per class inside the training side, fit on training samples only, MAP of
/// the classifier scores on the test side.
ExperimentReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg,
                                Method method, int repeats,
                                std::uint64_t base_seed);

/// {method, params, seeds, per_repeat_map, mean_map, std_map,
///  wall_time_seconds}
nlohmann::json report_to_json(const ExperimentReport& report);

}  // namespace locdisc
