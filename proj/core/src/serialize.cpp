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

#include "ttk/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace ttk {
namespace {

constexpr std::uint64_t kMaxExtent = std::uint64_t{1} << 32;

std::uint64_t to_le(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t y = 0;
    for (int i = 0; i < 8; ++i) y |= ((x >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return y;
  }
  return x;
}

void put_u64(std::ostream& os, std::uint64_t x) {
  const std::uint64_t le = to_le(x);
  os.write(reinterpret_cast<const char*>(&le), 8);
}

void put_f64(std::ostream& os, double x) { put_u64(os, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t le = 0;
  if (!is.read(reinterpret_cast<char*>(&le), 8)) throw FormatError("truncated TT container");
  return to_le(le);
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

Index get_extent(std::istream& is) {
  const std::uint64_t x = get_u64(is);
  if (x == 0 || x > kMaxExtent) throw FormatError("implausible extent in TT container");
  return static_cast<Index>(x);
}

void expect_magic(std::istream& is, const char (&magic)[8]) {
  char buf[8];
  if (!is.read(buf, 8) || std::memcmp(buf, magic, 8) != 0) {
    throw FormatError("bad magic in TT container");
  }
}

}  // namespace

void write_tt(std::ostream& os, const TTVector& v) {
  os.write(kVectorMagic, 8);
  put_u64(os, static_cast<std::uint64_t>(v.order()));
  for (Index n : v.dims()) put_u64(os, static_cast<std::uint64_t>(n));
  for (Index r : v.ranks()) put_u64(os, static_cast<std::uint64_t>(r));
  for (const auto& c : v.cores())
    for (Index a = 0; a < c.r0(); ++a)
      for (Index i = 0; i < c.n(); ++i)
        for (Index b = 0; b < c.r1(); ++b) put_f64(os, c(a, i, b));
  if (!os) throw FormatError("failed writing TT container");
}

TTVector read_tt_vector(std::istream& is) {
  expect_magic(is, kVectorMagic);
  const Index d = get_extent(is);
  Dims dims(d);
  for (auto& n : dims) n = get_extent(is);
  std::vector<Index> ranks(d + 1);
  for (auto& r : ranks) r = get_extent(is);
  std::vector<TTCore> cores;
  cores.reserve(d);
  for (Index k = 0; k < d; ++k) {
    TTCore c(ranks[k], dims[k], ranks[k + 1]);
    for (Index a = 0; a < c.r0(); ++a)
      for (Index i = 0; i < c.n(); ++i)
        for (Index b = 0; b < c.r1(); ++b) c(a, i, b) = get_f64(is);
    cores.push_back(std::move(c));
  }
  try {
    return TTVector(std::move(cores));
  } catch (const ShapeError& e) {
    throw FormatError(e.what());
  }
}

void write_tt(std::ostream& os, const TTOperator& a) {
  os.write(kOperatorMagic, 8);
  put_u64(os, static_cast<std::uint64_t>(a.order()));
  for (Index n : a.row_dims()) put_u64(os, static_cast<std::uint64_t>(n));
  for (Index n : a.col_dims()) put_u64(os, static_cast<std::uint64_t>(n));
  for (Index r : a.ranks()) put_u64(os, static_cast<std::uint64_t>(r));
  for (const auto& c : a.cores())
    for (Index al = 0; al < c.rho0(); ++al)
      for (Index i = 0; i < c.rows(); ++i)
        for (Index j = 0; j < c.cols(); ++j)
          for (Index b = 0; b < c.rho1(); ++b) put_f64(os, c(al, i, j, b));
  if (!os) throw FormatError("failed writing TT container");
}

TTOperator read_tt_operator(std::istream& is) {
  expect_magic(is, kOperatorMagic);
  const Index d = get_extent(is);
  Dims rows(d), cols(d);
  for (auto& n : rows) n = get_extent(is);
  for (auto& n : cols) n = get_extent(is);
  std::vector<Index> ranks(d + 1);
  for (auto& r : ranks) r = get_extent(is);
  std::vector<OpCore> cores;
  cores.reserve(d);
  for (Index k = 0; k < d; ++k) {
    OpCore c(ranks[k], rows[k], cols[k], ranks[k + 1]);
    for (Index al = 0; al < c.rho0(); ++al)
      for (Index i = 0; i < c.rows(); ++i)
        for (Index j = 0; j < c.cols(); ++j)
          for (Index b = 0; b < c.rho1(); ++b) c(al, i, j, b) = get_f64(is);
    cores.push_back(std::move(c));
  }
  try {
    return TTOperator(std::move(cores));
  } catch (const ShapeError& e) {
    throw FormatError(e.what());
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  return is;
}

}  // namespace

void save(const std::filesystem::path& path, const TTVector& v) {
  auto os = open_out(path);
  write_tt(os, v);
}

void save(const std::filesystem::path& path, const TTOperator& a) {
  auto os = open_out(path);
  write_tt(os, a);
}

TTVector load_vector(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_tt_vector(is);
}

TTOperator load_operator(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_tt_operator(is);
}

}  // namespace ttk
