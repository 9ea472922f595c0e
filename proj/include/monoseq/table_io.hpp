// Copyright 2026 The monoseq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Table cache files.
//
//   # monoseq value table mode=float64 version=1.0.0
//   n,s,kstar
//   1,1,0
//   2,1.5,1
//   ...
//
// s is printed with 17 significant digits so doubles round-trip exactly.
// kstar is 0 on the n=1 row, where no maximization happens.

#include <iosfwd>
#include <optional>
#include <string>

#include "monoseq/value_table.hpp"

namespace monoseq {

/// Formats a double with 17 significant digits.
std::string format_real(double x);

/// First violated table invariant, if any.
std::optional<std::string> find_invariant_violation(const ValueTable& table);

void write_table_csv(std::ostream& out, const ValueTable& table);

/// Parses and validates a cache file. Throws std::runtime_error on malformed
/// input or a table that breaks any invariant.
ValueTable read_table_csv(std::istream& in);

void save_table(const std::string& path, const ValueTable& table);
ValueTable load_table(const std::string& path);

}  // namespace monoseq
