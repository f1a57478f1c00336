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

#include <filesystem>
#include <optional>
#include <vector>

#include "run_config.hpp"

namespace locdisc::cli {

struct CommandOptions {
  std::optional<std::filesystem::path> out_dir;
  bool dump_laplacians = false;
  std::optional<SweepAxis> axis;
  std::optional<std::vector<double>> values;
};

struct GenResult {
  std::filesystem::path data_path;
  std::filesystem::path labels_path;
  Index n = 0;
  Index d = 0;
  int c = 0;
};

struct FitResult {
  std::filesystem::path model_path;
  Index rank = 0;
  Vector eigenvalues_of_M;
  double objective = 0.0;
  double constraint_residual = 0.0;
  bool degenerate = false;  // L_w = 0 and lambda = 0
};

struct TransformResult {
  std::filesystem::path features_path;
  Index samples = 0;
  Index dims = 0;
};

struct EvalResult {
  std::vector<std::filesystem::path> report_paths;
  std::filesystem::path table_path;
  std::vector<ExperimentReport> reports;
};

struct SweepPoint {
  double value = 0.0;
  double mean_map = 0.0;
  double std_map = 0.0;
};

struct SweepResult {
  std::filesystem::path curve_path;
  std::vector<SweepPoint> points;
};

/// Writes data.csv and labels.csv for a synthetic dataset.
GenResult cmd_gen(const RunConfig& cfg, const CommandOptions& opts);

/// Fits the transform on the configured dataset. Fully labeled data is
/// reduced to labels_per_class labels (seeded by base_seed); partially
/// labeled data is used as given. The first configured method decides
/// between the learned transform and the KPCA baseline.
FitResult cmd_fit(const RunConfig& cfg, const CommandOptions& opts);

/// Projects test_dataset (or the training set itself) with a saved model.
TransformResult cmd_transform(const RunConfig& cfg, const CommandOptions& opts);

/// One report_<method>.json per method plus summary.csv.
EvalResult cmd_eval(const RunConfig& cfg, const CommandOptions& opts);

/// sweep_<axis>.csv with (axis_value, mean_map, std_map) rows in input
/// order, evaluated with the first configured method.
SweepResult cmd_sweep(const RunConfig& cfg, const CommandOptions& opts);

/// Entry point for the locdisc executable. Returns the process exit code:
/// 0 success, 2 config error, 3 data error, 4 numeric error.
int run(int argc, char** argv);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

}  // namespace locdisc::cli
