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

#include "atomcompact/linalg.hpp"

#include "atomcompact/error.hpp"

namespace atomcompact {

namespace {

// Gauss-Jordan elimination in place; returns the pivot column of each pivot row.
std::vector<size_t> reduce(Matrix& m, size_t cols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

size_t matrix_rank(Matrix m) {
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  for (const auto& r : m)
    if (r.size() != cols) fail(ErrorCode::InvalidArgument, "ragged matrix");
  return reduce(m, cols).size();
}

Solution solve(Matrix a, std::vector<Rational> b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "right-hand side has the wrong length");
  size_t cols = a.empty() ? 0 : a[0].size();
  for (size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != cols) fail(ErrorCode::InvalidArgument, "ragged matrix");
    a[r].push_back(b[r]);
  }
  auto pivots = reduce(a, cols);
  Solution out;
  out.rank = pivots.size();
  out.x.assign(cols, 0);
  for (size_t r = pivots.size(); r < a.size(); ++r)
    if (a[r][cols] != 0) return out;
  out.consistent = true;
  for (size_t r = 0; r < pivots.size(); ++r) out.x[pivots[r]] = a[r][cols];
  return out;
}

}  // namespace atomcompact
