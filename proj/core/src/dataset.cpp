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

#include "locdisc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "locdisc/csv.hpp"
#include "locdisc/error.hpp"
#include "locdisc/random.hpp"

namespace locdisc {

Index Dataset::labeled_count() const {
  return static_cast<Index>(
      std::count_if(labels.begin(), labels.end(),
                    [](const Label& l) { return l.has_value(); }));
}

bool Dataset::fully_labeled() const {
  return std::all_of(labels.begin(), labels.end(),
                     [](const Label& l) { return l.has_value(); });
}

bool Dataset::labeled_first() const {
  const auto first_unlabeled =
      std::find_if(labels.begin(), labels.end(),
                   [](const Label& l) { return !l.has_value(); });
  return std::none_of(first_unlabeled, labels.end(),
                      [](const Label& l) { return l.has_value(); });
}

void Dataset::validate() const {
  if (dim() < 1 || size() < 1) {
    throw DataError("dataset must have at least one feature and one sample");
  }
  if (static_cast<Index>(labels.size()) != size()) {
    throw DataError("label count " + std::to_string(labels.size()) +
                    " does not match sample count " + std::to_string(size()));
  }
  if (class_count < 1) throw DataError("class count must be positive");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] && (*labels[i] < 0 || *labels[i] >= class_count)) {
      throw DataError("label of sample " + std::to_string(i) +
                      " is outside [0, " + std::to_string(class_count - 1) +
                      "]");
    }
  }
  if (!samples.allFinite()) throw DataError("samples contain non-finite values");
}

Index SplitSpec::labeled_count() const {
  Index total = 0;
  for (const auto& cls : labeled_indices) total += static_cast<Index>(cls.size());
  return total;
}

namespace {

std::vector<Label> read_labels(std::istream& in) {
  std::vector<Label> labels;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view cell(text);
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ' ||
                             cell.back() == '\t')) {
      cell.remove_suffix(1);
    }
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
      cell.remove_prefix(1);
    }
    if (cell.empty()) continue;
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ParseError(ParseError::Kind::kNonNumeric, line,
                       "label is not an integer: '" + std::string(cell) + "'");
    }
    if (value < kUnlabeledToken) {
      throw ParseError(ParseError::Kind::kLabelOutOfRange, line,
                       "label must be >= 0, or -1 for unlabeled");
    }
    labels.push_back(value == kUnlabeledToken ? Label{} : Label{value});
  }
  return labels;
}

}  // namespace

Dataset load_csv_dataset(std::istream& data, std::istream& labels_in,
                         std::optional<int> class_count) {
  const Matrix rows = csv::read_matrix(data);
  std::vector<Label> labels = read_labels(labels_in);
  if (static_cast<Index>(labels.size()) != rows.rows()) {
    throw ParseError(ParseError::Kind::kLabelCountMismatch, labels.size(),
                     "label file has " + std::to_string(labels.size()) +
                         " labels but data file has " +
                         std::to_string(rows.rows()) + " rows");
  }
  int max_label = -1;
  for (const auto& l : labels) {
    if (l) max_label = std::max(max_label, *l);
  }
  const int c = class_count.value_or(max_label + 1);
  if (c < 1) {
    throw DataError("no labeled sample; the class count cannot be inferred");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] && *labels[i] >= c) {
      throw ParseError(ParseError::Kind::kLabelOutOfRange, i + 1,
                       "label " + std::to_string(*labels[i]) +
                           " is not below the class count " + std::to_string(c));
    }
  }
  Dataset ds{rows.transpose(), std::move(labels), c};
  ds.validate();
  return ds;
}

Dataset load_csv_dataset(const std::filesystem::path& data_path,
                         const std::filesystem::path& labels_path,
                         std::optional<int> class_count) {
  std::ifstream data(data_path);
  if (!data) throw DataError("cannot open " + data_path.string());
  std::ifstream labels(labels_path);
  if (!labels) throw DataError("cannot open " + labels_path.string());
  return load_csv_dataset(data, labels, class_count);
}

void save_csv_dataset(const Dataset& ds, const std::filesystem::path& data_path,
                      const std::filesystem::path& labels_path) {
  csv::write_matrix(data_path, ds.samples.transpose());
  std::ofstream out(labels_path);
  if (!out) throw DataError("cannot write " + labels_path.string());
  for (const auto& l : ds.labels) out << (l ? *l : kUnlabeledToken) << '\n';
  if (!out) throw DataError("failed writing " + labels_path.string());
}

Dataset select_samples(const Dataset& ds, std::span<const Index> indices) {
  Dataset out;
  out.class_count = ds.class_count;
  out.samples.resize(ds.dim(), static_cast<Index>(indices.size()));
  out.labels.reserve(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const Index src = indices[j];
    if (src < 0 || src >= ds.size()) {
      throw DataError("sample index " + std::to_string(src) + " out of range");
    }
    out.samples.col(static_cast<Index>(j)) = ds.samples.col(src);
    out.labels.push_back(ds.labels[static_cast<std::size_t>(src)]);
  }
  return out;
}

std::pair<Dataset, std::vector<Index>> reorder_labeled_first(const Dataset& ds) {
  std::vector<Index> perm(static_cast<std::size_t>(ds.size()));
  for (Index i = 0; i < ds.size(); ++i) perm[static_cast<std::size_t>(i)] = i;
  std::stable_partition(perm.begin(), perm.end(), [&](Index i) {
    return ds.labels[static_cast<std::size_t>(i)].has_value();
  });
  return {select_samples(ds, perm), std::move(perm)};
}

SplitSpec sample_labels_per_class(const Dataset& ds, int labels_per_class,
                                  std::uint64_t seed) {
  if (labels_per_class <= 0) {
    throw DataError("labels per class must be positive");
  }
  if (!ds.fully_labeled()) {
    throw DataError("label sampling needs a fully labeled dataset");
  }
  std::vector<std::vector<Index>> members(
      static_cast<std::size_t>(ds.class_count));
  for (Index i = 0; i < ds.size(); ++i) {
    members[static_cast<std::size_t>(*ds.labels[static_cast<std::size_t>(i)])]
        .push_back(i);
  }
  SplitSpec split;
  split.seed = seed;
  split.labels_per_class = labels_per_class;
  split.labeled_indices.resize(members.size());
  std::vector<bool> chosen(static_cast<std::size_t>(ds.size()), false);
  Rng rng(seed);
  for (std::size_t t = 0; t < members.size(); ++t) {
    auto pool = members[t];
    const std::size_t take =
        std::min(pool.size(), static_cast<std::size_t>(labels_per_class));
    // Partial Fisher-Yates: position i receives a uniform pick from [i, size).
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.index(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    for (const Index i : pool) chosen[static_cast<std::size_t>(i)] = true;
    split.labeled_indices[t] = std::move(pool);
  }
  for (Index i = 0; i < ds.size(); ++i) {
    if (!chosen[static_cast<std::size_t>(i)]) split.unlabeled_indices.push_back(i);
  }
  return split;
}

Dataset apply_split(const Dataset& ds, const SplitSpec& split) {
  Dataset out = ds;
  std::fill(out.labels.begin(), out.labels.end(), Label{});
  for (const auto& cls : split.labeled_indices) {
    for (const Index i : cls) {
      out.labels[static_cast<std::size_t>(i)] =
          ds.labels[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

ScaledAssignment scaled_assignment(std::span<const Label> labels,
                                   int class_count) {
  const auto n = static_cast<Index>(labels.size());
  std::vector<int> counts(static_cast<std::size_t>(class_count), 0);
  for (const auto& l : labels) {
    if (l) {
      if (*l < 0 || *l >= class_count) {
        throw DataError("label " + std::to_string(*l) + " out of range");
      }
      ++counts[static_cast<std::size_t>(*l)];
    }
  }
  ScaledAssignment out{Matrix::Zero(n, class_count)};
  for (Index i = 0; i < n; ++i) {
    const auto& l = labels[static_cast<std::size_t>(i)];
    if (l) {
      out.G(i, *l) =
          1.0 / std::sqrt(static_cast<double>(counts[static_cast<std::size_t>(*l)]));
    }
  }
  return out;
}

Dataset make_gaussian_blobs(int classes, int per_class, int dim, double spread,
                            std::uint64_t seed) {
  if (classes < 1 || per_class < 1 || dim < 1) {
    throw DataError("blobs need positive classes, per_class and dim");
  }
  if (spread < 0.0) throw DataError("blob spread must be nonnegative");
  if (classes > 2 * dim) {
    throw DataError("blobs place at most 2*dim class centres on the axes");
  }
  Dataset ds;
  ds.class_count = classes;
  ds.samples.resize(dim, static_cast<Index>(classes) * per_class);
  ds.labels.reserve(static_cast<std::size_t>(classes) * per_class);
  Rng rng(seed);
  Index col = 0;
  for (int t = 0; t < classes; ++t) {
    Vector centre = Vector::Zero(dim);
    centre(t % dim) = (t < dim ? 10.0 : -10.0) * spread;
    for (int s = 0; s < per_class; ++s, ++col) {
      for (Index j = 0; j < dim; ++j) {
        ds.samples(j, col) = centre(j) + spread * rng.normal();
      }
      ds.labels.emplace_back(t);
    }
  }
  return ds;
}

Dataset make_concentric_rings(int per_class, double noise, std::uint64_t seed) {
  if (per_class < 3) throw DataError("rings need at least 3 samples per class");
  if (noise < 0.0) throw DataError("ring noise must be nonnegative");
  constexpr double kRadii[2] = {1.0, 3.0};
  Dataset ds;
  ds.class_count = 2;
  ds.samples.resize(2, 2 * static_cast<Index>(per_class));
  Rng rng(seed);
  Index col = 0;
  for (int t = 0; t < 2; ++t) {
    for (int s = 0; s < per_class; ++s, ++col) {
      const double angle = 2.0 * 3.14159265358979323846 * rng.uniform();
      const double radius = kRadii[t] + noise * rng.normal();
      ds.samples(0, col) = radius * std::cos(angle);
      ds.samples(1, col) = radius * std::sin(angle);
      ds.labels.emplace_back(t);
    }
  }
  return ds;
}

}  // namespace locdisc
