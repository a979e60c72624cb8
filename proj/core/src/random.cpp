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

#include "ttk/random.hpp"

#include <cmath>

namespace ttk {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL))) {}

TTVector random_gaussian_tt(const Dims& dims, const std::vector<Index>& ranks,
                            std::uint64_t seed) {
  if (dims.empty()) throw ShapeError("TT tensor needs at least one mode");
  if (ranks.size() + 1 != dims.size()) throw ShapeError("need d-1 interior ranks");
  const Index d = static_cast<Index>(dims.size());
  std::vector<TTCore> cores;
  cores.reserve(d);
  for (Index k = 0; k < d; ++k) {
    const Index r0 = k == 0 ? 1 : ranks[k - 1];
    const Index r1 = k == d - 1 ? 1 : ranks[k];
    if (r0 < 1 || r1 < 1) throw ShapeError("TT ranks must be positive");
    TTCore c(r0, dims[k], r1);
    NormalStream rng(seed, static_cast<std::uint64_t>(k));
    const double sd = 1.0 / std::sqrt(static_cast<double>(r0 * dims[k] * r1));
    for (double& x : c.data()) x = rng(sd);
    cores.push_back(std::move(c));
  }
  return TTVector(std::move(cores));
}

}  // namespace ttk
