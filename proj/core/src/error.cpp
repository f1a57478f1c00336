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

#include "locdisc/error.hpp"

#include <string>

namespace locdisc {

ParseError::ParseError(Kind kind, std::size_t line, const std::string& what)
    : DataError("line " + std::to_string(line) + ": " + what),
      kind_(kind),
      line_(line) {}

RankError::RankError(std::size_t requested, std::size_t max_feasible)
    : NumericError("requested r=" + std::to_string(requested) +
                   " exceeds the kernel rank; max feasible r is " +
                   std::to_string(max_feasible)),
      requested_(requested),
      max_feasible_(max_feasible) {}

}  // namespace locdisc
