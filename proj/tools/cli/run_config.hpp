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
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "locdisc/experiment.hpp"

namespace locdisc::cli {

struct CsvSource {
  std::filesystem::path samples;
  std::filesystem::path labels;
  std::string id;
};

struct BlobsSource {
  int classes = 2;
  int per_class = 50;
  int dim = 2;
  double spread = 1.0;
  std::uint64_t seed = 0;
};

struct RingsSource {
  int per_class = 50;
  double noise = 0.1;
  std::uint64_t seed = 0;
};

using DataSource = std::variant<CsvSource, BlobsSource, RingsSource>;

struct KernelConfig {
  enum class Kind { kRbf, kChiSquared, kLinear, kPrecomputed };
  Kind kind = Kind::kRbf;
  std::optional<double> gamma;
  double epsilon = 1e-10;
  std::filesystem::path path;  // precomputed only
};

enum class SweepAxis { kLambda, kR, kK, kTheta };

std::string to_string(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

struct SweepConfig {
  SweepAxis axis = SweepAxis::kLambda;
  std::vector<double> values;
};

/// Everything a command needs. Built from a strict JSON document: unknown
/// keys and out-of-range values are reported together as one ConfigError.
struct RunConfig {
  DataSource dataset = RingsSource{};
  std::optional<DataSource> test_dataset;
  KernelConfig kernel;
  double theta = 1.0;
  int k = 3;
  double lambda = 1.0;
  std::optional<int> r;
  double drop_tolerance = 1e-10;
  double ridge = 1.0;
  int labels_per_class = 1;
  double test_fraction = 0.5;
  int repeats = 5;
  std::uint64_t base_seed = 0;
  std::vector<Method> methods = {Method::kOurs};
  std::filesystem::path output_dir = "locdisc-out";
  std::optional<std::filesystem::path> model_path;
  std::optional<SweepConfig> sweep;

  /// Model file location: model_path, or <output_dir>/model.txt.
  std::filesystem::path resolved_model_path() const;
  std::string dataset_id() const;
  /// Experiment parameters; throws ConfigError for precomputed kernels.
  ExperimentConfig experiment() const;
};

/// Relative paths inside `doc` are resolved against `base_dir`.
RunConfig parse_run_config(const nlohmann::json& doc,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Fully explicit form (defaults filled in, paths absolute). Parsing it back
/// yields an equivalent RunConfig.
nlohmann::json to_json(const RunConfig& cfg);

/// Loads or generates the dataset described by `source`.
Dataset materialize(const DataSource& source);

}  // namespace locdisc::cli
