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

#include "monoseq/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace monoseq {
namespace {

constexpr const char* kMagic = "# monoseq value table";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) fields.push_back(field);
  return fields;
}

Index parse_index(const std::string& text, Index line_no) {
  Index value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad integer '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text, Index line_no) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad real '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::optional<std::string> find_invariant_violation(const ValueTable& table) {
  if (table.n_max() < 1) return "table is empty";
  if (table(0) != 0.0) return "s(0) must be 0";
  if (table(1) != 1.0) return "s(1) must be exactly 1";
  for (Index n = 1; n <= table.n_max(); ++n) {
    if (!std::isfinite(table(n))) return "s(" + std::to_string(n) + ") is not finite";
    if (table(n) > static_cast<double>(n)) return "s(" + std::to_string(n) + ") exceeds n";
    if (n >= 2) {
      const double gap = table(n) - table(n - 1);
      if (!(gap > 0.0) || gap > 1.0) {
        return "increment s(" + std::to_string(n) + ") - s(" + std::to_string(n - 1) +
               ") outside (0, 1]";
      }
      const Index k = table.kstar(n);
      if (k < 1 || k > n - 1) return "kstar(" + std::to_string(n) + ") outside [1, n-1]";
    }
  }
  return std::nullopt;
}

void write_table_csv(std::ostream& out, const ValueTable& table) {
  out << kMagic << " mode=" << to_string(table.mode()) << " version=" << MONOSEQ_VERSION << '\n';
  out << "n,s,kstar\n";
  for (Index n = 1; n <= table.n_max(); ++n) {
    out << n << ',' << format_real(table(n)) << ',' << (n >= 2 ? table.kstar(n) : 0) << '\n';
  }
}

ValueTable read_table_csv(std::istream& in) {
  std::string line;
  Index line_no = 0;
  Mode mode = Mode::float64;

  if (!std::getline(in, line)) throw std::runtime_error("empty table file");
  ++line_no;
  if (line.rfind(kMagic, 0) != 0) throw std::runtime_error("missing table comment line");
  if (auto pos = line.find("mode="); pos != std::string::npos) {
    mode = parse_mode(line.substr(pos + 5, line.find(' ', pos) - (pos + 5)));
  }
  if (!std::getline(in, line) || line != "n,s,kstar") {
    throw std::runtime_error("expected header 'n,s,kstar'");
  }
  ++line_no;

  ValueTable table(1, mode);
  bool seen_first = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const Index n = parse_index(fields[0], line_no);
    const double s = parse_real(fields[1], line_no);
    const Index k = parse_index(fields[2], line_no);
    if (n == 1) {
      if (s != 1.0) throw std::runtime_error("s(1) must be exactly 1");
      seen_first = true;
      continue;
    }
    if (!seen_first || n != table.n_max() + 1) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": rows must be n=1,2,3,...");
    }
    table.append(s, k);
  }
  if (!seen_first) throw std::runtime_error("table has no rows");
  if (auto bad = find_invariant_violation(table)) {
    throw std::runtime_error("table invariant violated: " + *bad);
  }
  return table;
}

void save_table(const std::string& path, const ValueTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_table_csv(out, table);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ValueTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_table_csv(in);
}

}  // namespace monoseq
