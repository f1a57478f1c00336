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

#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>

#include "locdisc/error.hpp"

namespace locdisc::cli {
namespace {

using json = nlohmann::json;

/// Reads keys from one JSON object, collecting every problem instead of
/// stopping at the first one.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string where,
               std::vector<std::string>& errors)
      : obj_(obj), where_(std::move(where)), errors_(errors) {
    if (!obj_.is_object()) error("", "must be a JSON object");
  }

  ~ObjectReader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!known_.contains(key)) error(key, "unknown key");
    }
  }

  bool has(const std::string& key) {
    known_.insert(key);
    return obj_.is_object() && obj_.contains(key) && !obj_.at(key).is_null();
  }

  const json* raw(const std::string& key) {
    return has(key) ? &obj_.at(key) : nullptr;
  }

  template <typename Check>
  void real(const std::string& key, double& out, Check ok, const char* rule) {
    if (const json* v = raw(key)) {
      if (!v->is_number()) {
        error(key, "must be a number");
      } else if (!ok(v->get<double>())) {
        error(key, rule);
      } else {
        out = v->get<double>();
      }
    }
  }

  template <typename Check>
  void integer(const std::string& key, int& out, Check ok, const char* rule) {
    if (const json* v = raw(key)) {
      if (!v->is_number_integer()) {
        error(key, "must be an integer");
      } else if (!ok(v->get<long long>())) {
        error(key, rule);
      } else {
        out = static_cast<int>(v->get<long long>());
      }
    }
  }

  void seed(const std::string& key, std::uint64_t& out) {
    if (const json* v = raw(key)) {
      if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() &&
                                      v->get<long long>() < 0)) {
        error(key, "must be a nonnegative integer");
      } else {
        out = v->get<std::uint64_t>();
      }
    }
  }

  void string(const std::string& key, std::string& out, bool required) {
    if (const json* v = raw(key)) {
      if (!v->is_string()) {
        error(key, "must be a string");
      } else {
        out = v->get<std::string>();
      }
    } else if (required) {
      error(key, "is required");
    }
  }

  void error(const std::string& key, const std::string& what) {
    std::string loc = where_;
    if (!key.empty()) loc += loc.empty() ? key : "." + key;
    errors_.push_back((loc.empty() ? std::string("config") : loc) + ": " + what);
  }

 private:
  const json& obj_;
  std::string where_;
  std::vector<std::string>& errors_;
  std::set<std::string> known_;
};

const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
const auto nonnegative = [](double v) { return v >= 0.0 && std::isfinite(v); };
const auto at_least_one = [](long long v) { return v >= 1; };

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path.lexically_normal();
}

DataSource parse_source(const json& doc, const std::string& where,
                        const std::filesystem::path& base,
                        std::vector<std::string>& errors) {
  ObjectReader in(doc, where, errors);
  std::string type;
  in.string("type", type, true);
  if (type == "csv") {
    CsvSource src;
    std::string samples, labels;
    in.string("samples", samples, true);
    in.string("labels", labels, true);
    in.string("id", src.id, false);
    src.samples = resolve(base, samples);
    src.labels = resolve(base, labels);
    if (src.id.empty()) src.id = src.samples.filename().string();
    return src;
  }
  if (type == "blobs") {
    BlobsSource src;
    in.integer("classes", src.classes, at_least_one, "must be at least 1");
    in.integer("per_class", src.per_class, at_least_one, "must be at least 1");
    in.integer("dim", src.dim, at_least_one, "must be at least 1");
    in.real("spread", src.spread, nonnegative, "must be nonnegative");
    in.seed("seed", src.seed);
    if (src.classes > 2 * src.dim) {
      in.error("classes", "must not exceed 2 * dim");
    }
    return src;
  }
  if (type == "rings") {
    RingsSource src;
    in.integer("per_class", src.per_class,
               [](long long v) { return v >= 3; }, "must be at least 3");
    in.real("noise", src.noise, nonnegative, "must be nonnegative");
    in.seed("seed", src.seed);
    return src;
  }
  if (!type.empty()) in.error("type", "must be one of csv, blobs, rings");
  return RingsSource{};
}

json source_to_json(const DataSource& source) {
  if (const auto* csv = std::get_if<CsvSource>(&source)) {
    return {{"type", "csv"},
            {"samples", std::filesystem::absolute(csv->samples).string()},
            {"labels", std::filesystem::absolute(csv->labels).string()},
            {"id", csv->id}};
  }
  if (const auto* b = std::get_if<BlobsSource>(&source)) {
    return {{"type", "blobs"},   {"classes", b->classes}, {"per_class", b->per_class},
            {"dim", b->dim},     {"spread", b->spread},   {"seed", b->seed}};
  }
  const auto& rg = std::get<RingsSource>(source);
  return {{"type", "rings"},
          {"per_class", rg.per_class},
          {"noise", rg.noise},
          {"seed", rg.seed}};
}

}  // namespace

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kLambda:
      return "lambda";
    case SweepAxis::kR:
      return "r";
    case SweepAxis::kK:
      return "k";
    case SweepAxis::kTheta:
      return "theta";
  }
  return "unknown";
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "lambda") return SweepAxis::kLambda;
  if (name == "r") return SweepAxis::kR;
  if (name == "k") return SweepAxis::kK;
  if (name == "theta") return SweepAxis::kTheta;
  throw ConfigError("unknown sweep axis '" + name +
                    "' (expected lambda, r, k or theta)");
}

std::filesystem::path RunConfig::resolved_model_path() const {
  return model_path ? *model_path : output_dir / "model.txt";
}

std::string RunConfig::dataset_id() const {
  if (const auto* csv = std::get_if<CsvSource>(&dataset)) return csv->id;
  if (const auto* b = std::get_if<BlobsSource>(&dataset)) {
    return "blobs(c=" + std::to_string(b->classes) + ",per_class=" +
           std::to_string(b->per_class) + ",d=" + std::to_string(b->dim) +
           ",seed=" + std::to_string(b->seed) + ")";
  }
  const auto& rg = std::get<RingsSource>(dataset);
  return "rings(per_class=" + std::to_string(rg.per_class) +
         ",seed=" + std::to_string(rg.seed) + ")";
}

ExperimentConfig RunConfig::experiment() const {
  ExperimentConfig cfg;
  switch (kernel.kind) {
    case KernelConfig::Kind::kRbf:
      cfg.kernel.kind = KernelChoice::Kind::kRbf;
      break;
    case KernelConfig::Kind::kChiSquared:
      cfg.kernel.kind = KernelChoice::Kind::kChiSquared;
      break;
    case KernelConfig::Kind::kLinear:
      cfg.kernel.kind = KernelChoice::Kind::kLinear;
      break;
    case KernelConfig::Kind::kPrecomputed:
      throw ConfigError(
          "precomputed kernels cannot be re-split for evaluation; use the fit "
          "command, or supply samples with an rbf/chi2/linear kernel");
  }
  cfg.kernel.gamma = kernel.gamma;
  cfg.kernel.epsilon = kernel.epsilon;
  cfg.theta = theta;
  cfg.k = k;
  cfg.lambda = lambda;
  cfg.r = r;
  cfg.drop_tolerance = drop_tolerance;
  cfg.ridge = ridge;
  cfg.labels_per_class = labels_per_class;
  cfg.test_fraction = test_fraction;
  cfg.dataset_id = dataset_id();
  return cfg;
}

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base) {
  std::vector<std::string> errors;
  RunConfig cfg;
  {
    ObjectReader in(doc, "", errors);
    if (const json* d = in.raw("dataset")) {
      cfg.dataset = parse_source(*d, "dataset", base, errors);
    } else {
      in.error("dataset", "is required");
    }
    if (const json* d = in.raw("test_dataset")) {
      cfg.test_dataset = parse_source(*d, "test_dataset", base, errors);
    }
    if (const json* kj = in.raw("kernel")) {
      ObjectReader kin(*kj, "kernel", errors);
      std::string type = "rbf";
      kin.string("type", type, false);
      if (type == "rbf") {
        cfg.kernel.kind = KernelConfig::Kind::kRbf;
      } else if (type == "chi2") {
        cfg.kernel.kind = KernelConfig::Kind::kChiSquared;
      } else if (type == "linear") {
        cfg.kernel.kind = KernelConfig::Kind::kLinear;
      } else if (type == "precomputed") {
        cfg.kernel.kind = KernelConfig::Kind::kPrecomputed;
      } else {
        kin.error("type", "must be one of rbf, chi2, linear, precomputed");
      }
      if (kin.has("gamma")) {
        const json& g = kj->at("gamma");
        if (g.is_string() && g.get<std::string>() == "median") {
          cfg.kernel.gamma.reset();
        } else {
          double gamma = 0.0;
          kin.real("gamma", gamma, positive, "must be positive or \"median\"");
          if (gamma > 0.0) cfg.kernel.gamma = gamma;
        }
      }
      kin.real("epsilon", cfg.kernel.epsilon, positive, "must be positive");
      std::string path;
      kin.string("path", path, cfg.kernel.kind == KernelConfig::Kind::kPrecomputed);
      if (!path.empty()) cfg.kernel.path = resolve(base, path);
    }
    in.real("theta", cfg.theta, positive, "must be positive");
    in.integer("k", cfg.k, at_least_one, "must be at least 1");
    in.real("lambda", cfg.lambda, nonnegative, "must be nonnegative");
    if (const json* rj = in.raw("r")) {
      if (rj->is_string() && rj->get<std::string>() == "classes") {
        cfg.r.reset();
      } else {
        int r = 0;
        in.integer("r", r, at_least_one, "must be at least 1 or \"classes\"");
        if (r >= 1) cfg.r = r;
      }
    }
    in.real("drop_tolerance", cfg.drop_tolerance, nonnegative,
            "must be nonnegative");
    in.real("ridge", cfg.ridge, positive, "must be positive");
    in.integer("labels_per_class", cfg.labels_per_class, at_least_one,
               "must be at least 1");
    in.real("test_fraction", cfg.test_fraction,
            [](double v) { return v > 0.0 && v < 1.0; }, "must lie in (0, 1)");
    in.integer("repeats", cfg.repeats, at_least_one, "must be at least 1");
    in.seed("base_seed", cfg.base_seed);
    if (const json* mj = in.raw("methods")) {
      if (!mj->is_array() || mj->empty()) {
        in.error("methods", "must be a nonempty array");
      } else {
        cfg.methods.clear();
        for (const auto& m : *mj) {
          try {
            if (!m.is_string()) throw ConfigError("method names must be strings");
            cfg.methods.push_back(parse_method(m.get<std::string>()));
          } catch (const ConfigError& e) {
            in.error("methods", e.what());
          }
        }
      }
    }
    std::string out_dir;
    in.string("output_dir", out_dir, false);
    if (!out_dir.empty()) cfg.output_dir = resolve(base, out_dir);
    std::string model;
    in.string("model_path", model, false);
    if (!model.empty()) cfg.model_path = resolve(base, model);
    if (const json* sj = in.raw("sweep")) {
      ObjectReader sin(*sj, "sweep", errors);
      SweepConfig sweep;
      std::string axis;
      sin.string("axis", axis, true);
      try {
        if (!axis.empty()) sweep.axis = parse_axis(axis);
      } catch (const ConfigError& e) {
        sin.error("axis", e.what());
      }
      if (const json* vj = sin.raw("values")) {
        if (!vj->is_array() || vj->empty()) {
          sin.error("values", "must be a nonempty array of numbers");
        } else {
          for (const auto& v : *vj) {
            if (!v.is_number()) {
              sin.error("values", "must contain only numbers");
              break;
            }
            sweep.values.push_back(v.get<double>());
          }
        }
      } else {
        sin.error("values", "is required");
      }
      cfg.sweep = std::move(sweep);
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration (" + std::to_string(errors.size()) +
                      " problem" + (errors.size() == 1 ? "" : "s") + "):";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " +
                      e.what());
  }
  return parse_run_config(doc, std::filesystem::absolute(path).parent_path());
}

json to_json(const RunConfig& cfg) {
  json kernel;
  switch (cfg.kernel.kind) {
    case KernelConfig::Kind::kRbf:
      kernel["type"] = "rbf";
      break;
    case KernelConfig::Kind::kChiSquared:
      kernel["type"] = "chi2";
      break;
    case KernelConfig::Kind::kLinear:
      kernel["type"] = "linear";
      break;
    case KernelConfig::Kind::kPrecomputed:
      kernel["type"] = "precomputed";
      kernel["path"] = std::filesystem::absolute(cfg.kernel.path).string();
      break;
  }
  kernel["gamma"] = cfg.kernel.gamma ? json(*cfg.kernel.gamma) : json("median");
  kernel["epsilon"] = cfg.kernel.epsilon;

  json methods = json::array();
  for (const auto m : cfg.methods) methods.push_back(to_string(m));

  json out;
  out["dataset"] = source_to_json(cfg.dataset);
  if (cfg.test_dataset) out["test_dataset"] = source_to_json(*cfg.test_dataset);
  out["kernel"] = kernel;
  out["theta"] = cfg.theta;
  out["k"] = cfg.k;
  out["lambda"] = cfg.lambda;
  out["r"] = cfg.r ? json(*cfg.r) : json("classes");
  out["drop_tolerance"] = cfg.drop_tolerance;
  out["ridge"] = cfg.ridge;
  out["labels_per_class"] = cfg.labels_per_class;
  out["test_fraction"] = cfg.test_fraction;
  out["repeats"] = cfg.repeats;
  out["base_seed"] = cfg.base_seed;
  out["methods"] = methods;
  out["output_dir"] = std::filesystem::absolute(cfg.output_dir).string();
  if (cfg.model_path) {
    out["model_path"] = std::filesystem::absolute(*cfg.model_path).string();
  }
  if (cfg.sweep) {
    out["sweep"] = {{"axis", to_string(cfg.sweep->axis)},
                    {"values", cfg.sweep->values}};
  }
  return out;
}

Dataset materialize(const DataSource& source) {
  if (const auto* csv = std::get_if<CsvSource>(&source)) {
    return load_csv_dataset(csv->samples, csv->labels);
  }
  if (const auto* b = std::get_if<BlobsSource>(&source)) {
    return make_gaussian_blobs(b->classes, b->per_class, b->dim, b->spread,
                               b->seed);
  }
  const auto& rg = std::get<RingsSource>(source);
  return make_concentric_rings(rg.per_class, rg.noise, rg.seed);
}

}  // namespace locdisc::cli
