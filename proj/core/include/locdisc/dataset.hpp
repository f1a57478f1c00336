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
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace locdisc {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Class label of one sample; std::nullopt marks an unlabeled sample.
using Label = std::optional<int>;

/// Value written to and read from label files for unlabeled samples.
inline constexpr int kUnlabeledToken = -1;

/// Samples stored column-wise (d x n). Labeled samples are expected to
/// occupy columns 0..m-1 before any graph is built; see
/// reorder_labeled_first().
struct Dataset {
  Matrix samples;
  std::vector<Label> labels;
  int class_count = 0;

  Index dim() const { return samples.rows(); }
  Index size() const { return samples.cols(); }
  Index labeled_count() const;
  bool fully_labeled() const;
  /// True when every labeled sample precedes every unlabeled one.
  bool labeled_first() const;

  /// Throws DataError if the shape or label invariants are violated.
  void validate() const;
};

/// Labeled samples chosen per class for one experiment repeat.
struct SplitSpec {
  std::vector<std::vector<Index>> labeled_indices;  // one list per class
  std::vector<Index> unlabeled_indices;
  std::uint64_t seed = 0;
  int labels_per_class = 0;

  Index labeled_count() const;
};

/// n x c matrix G = Y (Y^T Y)^{-1/2} for one-hot Y.
struct ScaledAssignment {
  Matrix G;
};

/// Reads a row-per-sample CSV plus a one-integer-per-line label file. The
/// class count is 1 + max label unless `class_count` is given, in which case
/// labels must lie below it.
Dataset load_csv_dataset(const std::filesystem::path& data_path,
                         const std::filesystem::path& labels_path,
                         std::optional<int> class_count = std::nullopt);
Dataset load_csv_dataset(std::istream& data, std::istream& labels,
                         std::optional<int> class_count = std::nullopt);

/// Writes the CSV pair read by load_csv_dataset (17 significant digits).
void save_csv_dataset(const Dataset& ds,
                      const std::filesystem::path& data_path,
                      const std::filesystem::path& labels_path);

/// Stable partition of labeled columns ahead of unlabeled ones. The returned
/// permutation maps new index to original index.
std::pair<Dataset, std::vector<Index>> reorder_labeled_first(const Dataset& ds);

/// Selects the columns `indices` (in order) into a new dataset.
Dataset select_samples(const Dataset& ds, std::span<const Index> indices);

/// Draws min(p, class size) labeled samples per class without replacement.
/// Classes are visited in ascending order, each drawing from one Rng seeded
/// with `seed`; chosen indices are reported in ascending order.
SplitSpec sample_labels_per_class(const Dataset& ds, int labels_per_class,
                                  std::uint64_t seed);

/// Copy of `ds` whose labels outside `split` are cleared.
Dataset apply_split(const Dataset& ds, const SplitSpec& split);

ScaledAssignment scaled_assignment(std::span<const Label> labels,
                                   int class_count);

/// c Gaussian clusters; class t is centred at 10*spread*(+/-)e_{t mod d}
/// (sign flips once the axes are used up), members drawn with standard
/// deviation `spread`. Requires c <= 2d.
Dataset make_gaussian_blobs(int classes, int per_class, int dim, double spread,
                            std::uint64_t seed);

/// Two classes in the plane on circles of radius 1 and 3.
Dataset make_concentric_rings(int per_class, double noise, std::uint64_t seed);

}  // namespace locdisc
