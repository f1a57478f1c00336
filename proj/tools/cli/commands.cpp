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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "locdisc/csv.hpp"
#include "locdisc/error.hpp"
#include "locdisc/log.hpp"
#include "locdisc/model_io.hpp"

namespace locdisc::cli {
namespace {

std::filesystem::path output_dir(const RunConfig& cfg, const CommandOptions& opts) {
  const auto dir = opts.out_dir ? *opts.out_dir : cfg.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string());
  return dir;
}

std::string join(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += csv::format_real(v(i));
  }
  return out;
}

/// out(perm[i], perm[j]) = in(i, j)
Matrix unpermute_square(const Matrix& in, const std::vector<Index>& perm) {
  Matrix out(in.rows(), in.cols());
  for (Index i = 0; i < in.rows(); ++i) {
    for (Index j = 0; j < in.cols(); ++j) {
      out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) =
          in(i, j);
    }
  }
  return out;
}

GramMatrix permuted_gram(const Dataset& original, const KernelSpec& spec,
                         const std::vector<Index>& perm) {
  const GramMatrix K = gram_matrix(original.samples, spec);
  const auto n = static_cast<Index>(perm.size());
  Matrix values(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      values(i, j) = K.values(perm[static_cast<std::size_t>(i)],
                              perm[static_cast<std::size_t>(j)]);
    }
  }
  return {std::move(values), spec};
}

KernelSpec fit_kernel(const RunConfig& cfg, const Matrix& samples) {
  if (cfg.kernel.kind == KernelConfig::Kind::kPrecomputed) {
    return PrecomputedKernel{cfg.kernel.path};
  }
  return resolve_kernel(cfg.experiment().kernel, samples);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

void check_sweep_value(SweepAxis axis, double v) {
  const auto is_int = [](double x) { return std::floor(x) == x && std::isfinite(x); };
  switch (axis) {
    case SweepAxis::kLambda:
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ConfigError("sweep value " + csv::format_real(v) +
                          " is not a legal lambda (must be >= 0)");
      }
      break;
    case SweepAxis::kTheta:
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError("sweep value " + csv::format_real(v) +
                          " is not a legal theta (must be > 0)");
      }
      break;
    case SweepAxis::kR:
    case SweepAxis::kK:
      if (!is_int(v) || v < 1.0) {
        throw ConfigError("sweep value " + csv::format_real(v) + " is not a legal " +
                          to_string(axis) + " (must be an integer >= 1)");
      }
      break;
  }
}

}  // namespace

GenResult cmd_gen(const RunConfig& cfg, const CommandOptions& opts) {
  if (std::holds_alternative<CsvSource>(cfg.dataset)) {
    throw ConfigError("gen needs a synthetic dataset (type blobs or rings)");
  }
  const Dataset ds = materialize(cfg.dataset);
  const auto dir = output_dir(cfg, opts);
  GenResult out;
  out.data_path = dir / "data.csv";
  out.labels_path = dir / "labels.csv";
  save_csv_dataset(ds, out.data_path, out.labels_path);
  out.n = ds.size();
  out.d = ds.dim();
  out.c = ds.class_count;
  return out;
}

FitResult cmd_fit(const RunConfig& cfg, const CommandOptions& opts) {
  Dataset ds = materialize(cfg.dataset);
  ds.validate();
  if (ds.fully_labeled()) {
    const auto split =
        sample_labels_per_class(ds, cfg.labels_per_class, cfg.base_seed);
    ds = apply_split(ds, split);
    log::info("sampled " + std::to_string(split.labeled_count()) +
              " labels (" + std::to_string(cfg.labels_per_class) +
              " per class, seed " + std::to_string(cfg.base_seed) + ")");
  }
  auto [ordered, perm] = reorder_labeled_first(ds);
  const Index m = ordered.labeled_count();
  if (m == 0) throw DataError("training set has no labeled sample");

  const KernelSpec spec = fit_kernel(cfg, ds.samples);
  log::info("kernel " + kernel_name(spec) + ", n=" + std::to_string(ds.size()) +
            ", m=" + std::to_string(m) + ", c=" + std::to_string(ds.class_count));
  const GramMatrix K = permuted_gram(ds, spec, perm);
  const Index r = cfg.r ? *cfg.r : ordered.class_count;
  const Method method = cfg.methods.front();

  FitResult out;
  TransformModel model;
  const auto dir = output_dir(cfg, opts);
  if (method == Method::kKpca) {
    model = kpca_baseline(K, r, cfg.drop_tolerance);
    out.rank = r;
    log::info("KPCA eigenvalues (descending): " + join(model.eigenvalues_of_M));
  } else {
    const double lambda = method == Method::kOursLambda0 ? 0.0 : cfg.lambda;
    const auto Lw = build_supervised_laplacian(ordered.labels, m);
    const auto cliques = knn_cliques(ordered.samples, cfg.k);
    const auto L = assemble_clique_laplacian(cliques, ordered.samples, cfg.theta);
    out.degenerate = Lw.values.isZero(0.0) && lambda == 0.0;
    if (out.degenerate) {
      log::warn(
          "L_w = 0 (one labeled sample per class) and lambda = 0: the objective "
          "is degenerate (identically zero) and the learned basis is arbitrary");
    }
    const KernelEigen eigen = eigendecompose_kernel(K, cfg.drop_tolerance);
    out.rank = eigen.rank();
    log::info("kernel rank rho=" + std::to_string(eigen.rank()));
    model = fit(eigen, spec, Lw, L, lambda, r);
    out.objective = objective_value(model.a, K, Lw, L, lambda).objective;
    out.constraint_residual = truncated_constraint_residual(model.a, eigen);
    log::info("eigenvalues of M (ascending): " + join(model.eigenvalues_of_M));
    log::info("objective " + csv::format_real(out.objective));
    log::info("constraint residual " + csv::format_real(out.constraint_residual));
    if (opts.dump_laplacians) {
      csv::write_matrix(dir / "Lw.csv", unpermute_square(Lw.values, perm));
      csv::write_matrix(dir / "L.csv", unpermute_square(L.values, perm));
      log::info("wrote Lw.csv and L.csv to " + dir.string());
    }
  }
  out.eigenvalues_of_M = model.eigenvalues_of_M;

  // Store coefficients in input order so transform can use the data as given.
  Matrix a(model.a.rows(), model.a.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    a.row(perm[i]) = model.a.row(static_cast<Index>(i));
  }
  model.a = std::move(a);
  if (model.centering) {
    Vector means(model.centering->column_means.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      means(perm[i]) = model.centering->column_means(static_cast<Index>(i));
    }
    model.centering->column_means = std::move(means);
  }

  out.model_path = opts.out_dir ? *opts.out_dir / "model.txt"
                                : cfg.resolved_model_path();
  if (out.model_path.has_parent_path()) {
    std::filesystem::create_directories(out.model_path.parent_path());
  }
  write_model(out.model_path, model);
  log::info("wrote model " + out.model_path.string());
  return out;
}

TransformResult cmd_transform(const RunConfig& cfg, const CommandOptions& opts) {
  const auto model_path = opts.out_dir ? *opts.out_dir / "model.txt"
                                       : cfg.resolved_model_path();
  const TransformModel model = read_model(model_path);
  if (std::holds_alternative<PrecomputedKernel>(model.kernel)) {
    throw ConfigError("models fitted on a precomputed kernel cannot project new samples");
  }
  const Dataset train = materialize(cfg.dataset);
  if (train.size() != model.train_size()) {
    throw DataError("model was fitted on " + std::to_string(model.train_size()) +
                    " samples but the dataset has " + std::to_string(train.size()));
  }
  const Dataset target = cfg.test_dataset ? materialize(*cfg.test_dataset) : train;
  const Matrix features =
      transform_test(cross_gram(target.samples, train.samples, model.kernel), model);
  const auto dir = output_dir(cfg, opts);
  TransformResult out;
  out.features_path = dir / "features.csv";
  out.samples = features.cols();
  out.dims = features.rows();
  csv::write_matrix(out.features_path, features.transpose());
  log::info("wrote " + std::to_string(out.samples) + "x" + std::to_string(out.dims) +
            " features to " + out.features_path.string());
  return out;
}

EvalResult cmd_eval(const RunConfig& cfg, const CommandOptions& opts) {
  const ExperimentConfig exp = cfg.experiment();
  const Dataset ds = materialize(cfg.dataset);
  if (!ds.fully_labeled()) {
    throw DataError("eval needs ground-truth labels for every sample");
  }
  const auto dir = output_dir(cfg, opts);
  EvalResult out;
  std::ostringstream table;
  table << "method,p,mean_map,std_map\n";
  for (const Method method : cfg.methods) {
    ExperimentReport report =
        run_experiment(ds, exp, method, cfg.repeats, cfg.base_seed);
    nlohmann::json doc = report_to_json(report);
    doc["config"] = to_json(cfg);
    const auto path = dir / ("report_" + to_string(method) + ".json");
    write_text(path, doc.dump(2) + "\n");
    log::info(to_string(method) + ": mean MAP " + csv::format_real(report.mean_map) +
              " +/- " + csv::format_real(report.std_map));
    table << to_string(method) << ',' << cfg.labels_per_class << ','
          << csv::format_real(report.mean_map) << ','
          << csv::format_real(report.std_map) << '\n';
    out.report_paths.push_back(path);
    out.reports.push_back(std::move(report));
  }
  out.table_path = dir / "summary.csv";
  write_text(out.table_path, table.str());
  return out;
}

SweepResult cmd_sweep(const RunConfig& cfg, const CommandOptions& opts) {
  std::optional<SweepAxis> axis = opts.axis;
  std::optional<std::vector<double>> values = opts.values;
  if (cfg.sweep) {
    if (!axis) axis = cfg.sweep->axis;
    if (!values) values = cfg.sweep->values;
  }
  if (!axis) throw ConfigError("sweep needs an axis (--axis or sweep.axis)");
  if (!values || values->empty()) {
    throw ConfigError("sweep needs a nonempty list of values");
  }
  for (const double v : *values) check_sweep_value(*axis, v);

  const ExperimentConfig base = cfg.experiment();
  const Dataset ds = materialize(cfg.dataset);
  if (!ds.fully_labeled()) {
    throw DataError("sweep needs ground-truth labels for every sample");
  }
  const Method method = cfg.methods.front();
  SweepResult out;
  std::ostringstream curve;
  curve << to_string(*axis) << ",mean_map,std_map\n";
  for (const double v : *values) {
    ExperimentConfig exp = base;
    switch (*axis) {
      case SweepAxis::kLambda:
        exp.lambda = v;
        break;
      case SweepAxis::kTheta:
        exp.theta = v;
        break;
      case SweepAxis::kR:
        exp.r = static_cast<int>(v);
        break;
      case SweepAxis::kK:
        exp.k = static_cast<int>(v);
        break;
    }
    const auto report = run_experiment(ds, exp, method, cfg.repeats, cfg.base_seed);
    out.points.push_back({v, report.mean_map, report.std_map});
    curve << csv::format_real(v) << ',' << csv::format_real(report.mean_map) << ','
          << csv::format_real(report.std_map) << '\n';
    log::info(to_string(*axis) + "=" + csv::format_real(v) + ": mean MAP " +
              csv::format_real(report.mean_map));
  }
  const auto dir = output_dir(cfg, opts);
  out.curve_path = dir / ("sweep_" + to_string(*axis) + ".csv");
  write_text(out.curve_path, curve.str());
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Semi-supervised kernel feature learning with local discriminant cliques"};
  app.require_subcommand(1);
  app.fallthrough();
  std::filesystem::path config_path;
  std::string out_dir;
  bool dump = false;
  bool verbose = false;
  bool quiet = false;
  std::string axis;
  std::vector<double> values;
  app.add_flag("-v,--verbose", verbose, "Log per-repeat details");
  app.add_flag("-q,--quiet", quiet, "Only log warnings and errors");

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    sub->add_flag("--dump-laplacians", dump, "Write Lw.csv and L.csv (fit only)");
  };
  auto* gen = app.add_subcommand("gen", "Write a synthetic dataset as CSV");
  auto* fit_cmd = app.add_subcommand("fit", "Fit the feature transform");
  auto* transform = app.add_subcommand("transform", "Project samples with a saved model");
  auto* eval = app.add_subcommand("eval", "Repeated-split MAP evaluation");
  auto* sweep = app.add_subcommand("sweep", "Evaluate along one parameter axis");
  for (auto* sub : {gen, fit_cmd, transform, eval, sweep}) add_common(sub);
  sweep->add_option("--axis", axis, "lambda, r, k or theta");
  sweep->add_option("--values", values, "Axis values")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  log::set_level(verbose ? log::Level::kDebug
                 : quiet ? log::Level::kWarning
                         : log::Level::kInfo);

  try {
    const RunConfig cfg = load_run_config(config_path);
    CommandOptions opts;
    if (!out_dir.empty()) opts.out_dir = std::filesystem::path(out_dir);
    opts.dump_laplacians = dump;
    if (!axis.empty()) opts.axis = parse_axis(axis);
    if (!values.empty()) opts.values = values;

    if (gen->parsed()) {
      const auto r = cmd_gen(cfg, opts);
      std::cout << "n=" << r.n << " d=" << r.d << " c=" << r.c << '\n';
    } else if (fit_cmd->parsed()) {
      cmd_fit(cfg, opts);
    } else if (transform->parsed()) {
      cmd_transform(cfg, opts);
    } else if (eval->parsed()) {
      cmd_eval(cfg, opts);
    } else if (sweep->parsed()) {
      cmd_sweep(cfg, opts);
    }
  } catch (const Error& e) {
    log::error(e.what());
    switch (e.category()) {
      case Error::Category::kConfig:
        return kExitConfig;
      case Error::Category::kData:
        return kExitData;
      case Error::Category::kNumeric:
        return kExitNumeric;
    }
  } catch (const std::exception& e) {
    log::error(e.what());
    return 1;
  }
  return kExitOk;
}

}  // namespace locdisc::cli
