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

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "atomcompact/atom.hpp"
#include "atomcompact/symbolic.hpp"

namespace atomcompact {

/// One coordinate of an orbit cell.
///
/// EQ: slot >= 0 pins the coordinate to support atom `slot`; slot == -1 puts
/// it in block `rank` (blocks numbered by first occurrence).
///
/// DLO: with support q_0 < ... < q_{k-1}, odd slot 2j+1 pins the coordinate to
/// q_j and even slot 2j places it in the open interval (q_{j-1}, q_j) with
/// infinite ends. Inside an interval `rank` is the position in the ordered
/// partition of the coordinates sharing that interval; points use rank 0.
struct Coord {
  int slot = 0;
  int rank = 0;

  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

inline constexpr int kBlockSlot = -1;

struct Cell {
  std::vector<Coord> coords;

  size_t arity() const { return coords.size(); }

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct TaggedCell {
  std::string tag;
  Cell cell;

  friend bool operator==(const TaggedCell&, const TaggedCell&) = default;
  friend auto operator<=>(const TaggedCell&, const TaggedCell&) = default;
};

struct TaggedTuple {
  std::string tag;
  std::vector<Atom> atoms;

  std::string str() const;

  friend bool operator==(const TaggedTuple&, const TaggedTuple&) = default;
  friend auto operator<=>(const TaggedTuple&, const TaggedTuple&) = default;
};

struct SymTagged {
  std::string tag;
  SymTuple atoms;
};

namespace cells {

Cell canonical(Theory theory, Cell cell);

/// Splits a cell over `from` into the orbits over the larger support `to`.
std::vector<Cell> refine(Theory theory, const Cell& cell, const Support& from, const Support& to);

/// Every orbit of A^n over the support.
std::vector<Cell> all(Theory theory, size_t arity, const Support& support);

/// The orbit of a (possibly symbolic) tuple over the support.
Cell classify(Theory theory, std::span<const SymAtom> tuple, const Support& support);
Cell classify(Theory theory, std::span<const Atom> tuple, const Support& support);

/// A concrete element of the cell.
std::vector<Atom> witness(Theory theory, const Cell& cell, const Support& support);

/// Orbits of the product of two cells over a common support.
std::vector<Cell> product(Theory theory, const Cell& left, const Cell& right);

Cell project(Theory theory, const Cell& cell, std::span<const size_t> coords);

/// Number of EQ blocks, or of distinct DLO interval positions.
size_t free_count(Theory theory, const Cell& cell);

/// Every weak order on `n` items as a rank vector onto 0..m-1.
std::vector<std::vector<int>> weak_orders(size_t n);

std::string str(Theory theory, const Cell& cell, const Support& support);

}  // namespace cells

}  // namespace atomcompact

namespace atomcompact::cells {

/// Concrete atoms covering every orbit over the support: the support itself
/// plus `per_gap` extra atoms in each gap (DLO) or beyond the support (EQ).
std::vector<Atom> sample_pool(Theory theory, const Support& support, size_t per_gap);

}  // namespace atomcompact::cells
