// Copyright 2026 The atomcompact Authors
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

#include <vector>

#include "atomcompact/atom.hpp"

namespace atomcompact {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact rank by fraction-free row reduction over the rationals.
size_t matrix_rank(Matrix m);

struct Solution {
  bool consistent = false;
  size_t rank = 0;
  std::vector<Rational> x;  // one solution when consistent; free variables set to 0
};

/// Solves a x = b exactly.
Solution solve(Matrix a, std::vector<Rational> b);

}  // namespace atomcompact
