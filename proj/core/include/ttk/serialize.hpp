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

#pragma once

#include <filesystem>
#include <iosfwd>

#include "ttk/tt_operator.hpp"

namespace ttk {

// Binary container, all integers u64 and all reals f64, little-endian:
//   magic[8] | d | dims (d values; operators: row dims then col dims)
//   | ranks (d+1 values) | core payloads, each row-major over its indices.
inline constexpr char kVectorMagic[8] = {'T', 'T', 'K', 'V', 'E', 'C', '0', '1'};
inline constexpr char kOperatorMagic[8] = {'T', 'T', 'K', 'O', 'P', 'R', '0', '1'};

void write_tt(std::ostream& os, const TTVector& v);
TTVector read_tt_vector(std::istream& is);
void write_tt(std::ostream& os, const TTOperator& a);
TTOperator read_tt_operator(std::istream& is);

void save(const std::filesystem::path& path, const TTVector& v);
void save(const std::filesystem::path& path, const TTOperator& a);
TTVector load_vector(const std::filesystem::path& path);
TTOperator load_operator(const std::filesystem::path& path);

}  // namespace ttk
