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

#include "locdisc/dataset.hpp"

namespace locdisc::csv {

/// Reads a headerless comma-separated table of finite reals. The returned
/// matrix has one row per line. Throws ParseError naming the 1-based line.
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);

/// One row per matrix row, 17 significant digits, LF line endings.
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// Shortest round-trip text for a double (17 significant digits).
std::string format_real(double value);

}  // namespace locdisc::csv
