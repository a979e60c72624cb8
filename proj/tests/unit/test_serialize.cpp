// Copyright 2026 The ttk Authors.
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

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ttk {
namespace {

TEST(Serialize, VectorRoundTripIsExact) {
  const TTVector v = random_gaussian_tt({3, 4, 2}, {2, 3}, 1);
  std::stringstream ss;
  write_tt(ss, v);
  const TTVector back = read_tt_vector(ss);
  ASSERT_EQ(back.ranks(), v.ranks());
  for (Index k = 0; k < v.order(); ++k) {
    const auto a = v.core(k).data();
    const auto b = back.core(k).data();
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST(Serialize, OperatorRoundTripIsExact) {
  const TTOperator a = kron_sum_operator({Matrix::Random(3, 3), Matrix::Random(2, 2)});
  std::stringstream ss;
  write_tt(ss, a);
  const TTOperator back = read_tt_operator(ss);
  EXPECT_EQ((tt_op_to_dense(a) - tt_op_to_dense(back)).norm(), 0.0);
}

TEST(Serialize, RejectsGarbage) {
  std::stringstream bad("not a tensor");
  EXPECT_THROW(read_tt_vector(bad), FormatError);
  const TTVector v = TTVector::ones({2, 2});
  std::stringstream ss;
  write_tt(ss, v);
  EXPECT_THROW(read_tt_operator(ss), FormatError);
  std::stringstream cut;
  write_tt(cut, v);
  std::string s = cut.str();
  s.resize(s.size() - 4);
  std::stringstream truncated(s);
  EXPECT_THROW(read_tt_vector(truncated), FormatError);
}

}  // namespace
}  // namespace ttk
