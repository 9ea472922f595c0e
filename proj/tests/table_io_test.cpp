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

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "monoseq/core_dp.hpp"
#include "monoseq/random.hpp"
#include "monoseq/table_io.hpp"

namespace monoseq {
namespace {

std::string to_csv(const ValueTable& table) {
  std::ostringstream out;
  write_table_csv(out, table);
  return out.str();
}

ValueTable from_csv(const std::string& text) {
  std::istringstream in(text);
  return read_table_csv(in);
}

TEST(TableIo, RoundTripIsBitIdentical) {
  Xoshiro256 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n_max = 1 + static_cast<Index>(uniform_below(rng, 3000));
    const ValueTable table = build_table(n_max);
    const ValueTable loaded = from_csv(to_csv(table));
    ASSERT_EQ(loaded.n_max(), n_max);
    EXPECT_FALSE(find_invariant_violation(loaded).has_value());
    for (Index n = 1; n <= n_max; ++n) ASSERT_EQ(loaded(n), table(n)) << "n=" << n;
    for (Index n = 2; n <= n_max; ++n) ASSERT_EQ(loaded.kstar(n), table.kstar(n));
  }
}

TEST(TableIo, HeaderAndModeLine) {
  const std::string text = to_csv(build_table(3, Mode::exact_rational));
  EXPECT_EQ(text.rfind("# monoseq value table mode=exact-rational version=", 0), 0u);
  EXPECT_NE(text.find("\nn,s,kstar\n1,1,0\n2,1.5,1\n3,2,2\n"), std::string::npos) << text;
  EXPECT_EQ(from_csv(text).mode(), Mode::exact_rational);
}

TEST(TableIo, SeventeenSignificantDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(1.5), "1.5");
}

TEST(TableIo, RejectsBrokenFiles) {
  const std::string head = "# monoseq value table mode=float64 version=1.0.0\nn,s,kstar\n";
  EXPECT_THROW(from_csv(""), std::runtime_error);
  EXPECT_THROW(from_csv("n,s,kstar\n1,1,0\n"), std::runtime_error);
  EXPECT_THROW(from_csv(head), std::runtime_error);
  EXPECT_THROW(from_csv(head + "1,1.1,0\n"), std::runtime_error);
  // decreasing
  EXPECT_THROW(from_csv(head + "1,1,0\n2,0.9,1\n"), std::runtime_error);
  // jump larger than one
  EXPECT_THROW(from_csv(head + "1,1,0\n2,2.5,1\n"), std::runtime_error);
  // skipped row
  EXPECT_THROW(from_csv(head + "1,1,0\n3,2,1\n"), std::runtime_error);
  // bad kstar
  EXPECT_THROW(from_csv(head + "1,1,0\n2,1.5,0\n"), std::runtime_error);
  EXPECT_THROW(from_csv(head + "1,1,0\n2,abc,1\n"), std::runtime_error);
  EXPECT_NO_THROW(from_csv(head + "1,1,0\n2,1.5,1\n"));
}

}  // namespace
}  // namespace monoseq
