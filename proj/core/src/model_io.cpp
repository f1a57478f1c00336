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

#include "locdisc/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "locdisc/csv.hpp"
#include "locdisc/error.hpp"

namespace locdisc {
namespace {

std::vector<std::string> split(const std::string& line, std::size_t max_parts) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (parts.size() + 1 < max_parts) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) break;
    parts.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  parts.push_back(line.substr(start));
  return parts;
}

class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (!text.empty()) return text;
    }
    fail("unexpected end of model file");
  }

  std::vector<std::string> keyed(const std::string& key,
                                 std::size_t max_parts = std::string::npos) {
    auto parts = split(next(), max_parts);
    if (parts.front() != key) fail("expected '" + key + "'");
    return parts;
  }

  double real(const std::string& cell) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      fail("not a real: '" + cell + "'");
    }
    return v;
  }

  long long integer(const std::string& cell) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      fail("not an integer: '" + cell + "'");
    }
    return v;
  }

  double keyed_real(const std::string& key) {
    const auto parts = keyed(key);
    if (parts.size() != 2) fail("expected '" + key + ",<value>'");
    return real(parts[1]);
  }

  long long keyed_integer(const std::string& key) {
    const auto parts = keyed(key);
    if (parts.size() != 2) fail("expected '" + key + ",<value>'");
    return integer(parts[1]);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseError::Kind::kNonNumeric, line_, "model: " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::string kernel_line(const KernelSpec& spec) {
  std::string out = "kernel," + kernel_name(spec);
  if (const auto* rbf = std::get_if<RbfKernel>(&spec)) {
    out += "," + csv::format_real(rbf->gamma);
  } else if (const auto* chi = std::get_if<ChiSquaredKernel>(&spec)) {
    out += "," + csv::format_real(chi->gamma) + "," + csv::format_real(chi->epsilon);
  } else if (const auto* pre = std::get_if<PrecomputedKernel>(&spec)) {
    out += "," + pre->path.string();
  }
  return out;
}

}  // namespace

void write_model(std::ostream& out, const TransformModel& model) {
  out << kModelHeader << '\n';
  out << "n," << model.a.rows() << '\n';
  out << "r," << model.a.cols() << '\n';
  out << "lambda," << csv::format_real(model.lambda_reg) << '\n';
  out << "theta," << csv::format_real(model.theta) << '\n';
  out << "k," << model.k << '\n';
  out << kernel_line(model.kernel) << '\n';
  out << "eigenvalues";
  for (Index l = 0; l < model.eigenvalues_of_M.size(); ++l) {
    out << ',' << csv::format_real(model.eigenvalues_of_M(l));
  }
  out << '\n';
  if (model.centering) {
    out << "centering," << csv::format_real(model.centering->grand_mean);
    for (Index i = 0; i < model.centering->column_means.size(); ++i) {
      out << ',' << csv::format_real(model.centering->column_means(i));
    }
    out << '\n';
  }
  out << "a\n";
  csv::write_matrix(out, model.a);
}

void write_model(const std::filesystem::path& path, const TransformModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_model(out, model);
  if (!out) throw DataError("failed writing " + path.string());
}

TransformModel read_model(std::istream& in) {
  ModelReader reader(in);
  if (reader.next() != kModelHeader) reader.fail("missing header");
  const long long n = reader.keyed_integer("n");
  const long long r = reader.keyed_integer("r");
  if (n < 1 || r < 1 || r > n) reader.fail("invalid n or r");

  TransformModel model;
  model.lambda_reg = reader.keyed_real("lambda");
  model.theta = reader.keyed_real("theta");
  model.k = static_cast<int>(reader.keyed_integer("k"));

  const auto kernel = reader.keyed("kernel", 3);
  if (kernel.size() < 2) reader.fail("kernel line has no kernel name");
  const std::string& name = kernel[1];
  if (name == "rbf" && kernel.size() == 3) {
    model.kernel = RbfKernel{reader.real(kernel[2])};
  } else if (name == "chi2" && kernel.size() == 3) {
    const auto params = split(kernel[2], 2);
    if (params.size() != 2) reader.fail("chi2 kernel needs gamma and epsilon");
    model.kernel = ChiSquaredKernel{reader.real(params[0]), reader.real(params[1])};
  } else if (name == "linear" && kernel.size() == 2) {
    model.kernel = LinearKernel{};
  } else if (name == "precomputed" && kernel.size() == 3) {
    model.kernel = PrecomputedKernel{kernel[2]};
  } else {
    reader.fail("unknown kernel specification");
  }

  const auto eig = reader.keyed("eigenvalues");
  if (static_cast<long long>(eig.size()) != r + 1) {
    reader.fail("expected " + std::to_string(r) + " eigenvalues");
  }
  model.eigenvalues_of_M.resize(r);
  for (long long l = 0; l < r; ++l) {
    model.eigenvalues_of_M(l) = reader.real(eig[static_cast<std::size_t>(l + 1)]);
  }

  auto line = reader.next();
  if (line.rfind("centering,", 0) == 0) {
    const auto parts = split(line, std::string::npos);
    if (static_cast<long long>(parts.size()) != n + 2) {
      reader.fail("centering needs a grand mean and n column means");
    }
    KernelCentering c;
    c.grand_mean = reader.real(parts[1]);
    c.column_means.resize(n);
    for (long long i = 0; i < n; ++i) {
      c.column_means(i) = reader.real(parts[static_cast<std::size_t>(i + 2)]);
    }
    model.centering = std::move(c);
    line = reader.next();
  }
  if (line != "a") reader.fail("expected 'a'");

  model.a.resize(n, r);
  for (long long i = 0; i < n; ++i) {
    const auto cells = split(reader.next(), std::string::npos);
    if (static_cast<long long>(cells.size()) != r) {
      reader.fail("row of a has " + std::to_string(cells.size()) +
                  " values, expected " + std::to_string(r));
    }
    for (long long l = 0; l < r; ++l) {
      model.a(i, l) = reader.real(cells[static_cast<std::size_t>(l)]);
    }
  }
  return model;
}

TransformModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_model(in);
}

}  // namespace locdisc
