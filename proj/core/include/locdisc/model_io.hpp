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
#include <iosfwd>

#include "locdisc/solver.hpp"

namespace locdisc {

/// Text model format:
///
///   locdisc-model v1
///   n,<n>
///   r,<r>
///   lambda,<lambda>
///   theta,<theta>
///   k,<k>
///   kernel,<name>[,<param>...]
///   eigenvalues,<r values>
///   [centering,<grand mean>,<n column means>]
///   a
///   <n rows of r comma-separated values>
///
/// Reals are printed with 17 significant digits so a round trip is exact.
void write_model(std::ostream& out, const TransformModel& model);
void write_model(const std::filesystem::path& path,
                 const TransformModel& model);

TransformModel read_model(std::istream& in);
TransformModel read_model(const std::filesystem::path& path);

inline constexpr const char* kModelHeader = "locdisc-model v1";

}  // namespace locdisc
