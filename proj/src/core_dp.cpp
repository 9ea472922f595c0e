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

#include "monoseq/core_dp.hpp"

namespace monoseq {

ValueTable to_float_table(const ExactValueTable& exact) {
  ValueTable table(exact.n_max(), Mode::exact_rational);
  for (Index n = 2; n <= exact.n_max(); ++n) {
    table.append(to_double(exact(n)), exact.kstar(n));
  }
  return table;
}

ValueTable build_table(Index n_max, Mode mode, const BuildOptions& options) {
  if (mode == Mode::exact_rational) {
    return to_float_table(build_table_as<Rational>(n_max, options));
  }
  return build_table_as<double>(n_max, options);
}

}  // namespace monoseq
