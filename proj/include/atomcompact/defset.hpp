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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atomcompact/cell.hpp"

namespace atomcompact {

/// A definable set: tagged orbit cells over one support. Cells are kept
/// canonical, sorted and unique, so two DefSets over the same support denote
/// the same set exactly when they compare equal.
class DefSet {
 public:
  DefSet() = default;
  DefSet(Theory theory, Support support, std::vector<TaggedCell> cells = {});

  Theory theory() const { return theory_; }
  const Support& support() const { return support_; }
  const std::vector<TaggedCell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  /// Tag to arity for every tag present.
  std::map<std::string, size_t> arities() const;
  std::optional<size_t> arity_of(const std::string& tag) const;

  size_t orbit_count() const { return cells_.size(); }
  /// Number of elements when finite, nullopt when countably infinite.
  std::optional<size_t> cardinality() const;

  DefSet refine(const Support& support) const;

  bool member(const TaggedTuple& x) const;
  bool member(const std::string& tag, std::span<const SymAtom> x) const;
  bool contains_cell(const TaggedCell& cell) const;

  std::string str() const;

  friend bool operator==(const DefSet&, const DefSet&) = default;

 private:
  Theory theory_ = Theory::Eq;
  Support support_;
  std::vector<TaggedCell> cells_;
};

DefSet set_union(const DefSet& s, const DefSet& t);
DefSet set_intersect(const DefSet& s, const DefSet& t);
DefSet set_difference(const DefSet& s, const DefSet& t);
/// Complement inside `ambient`; a null ambient raises AmbientMissing.
DefSet set_complement(const DefSet& s, const DefSet* ambient);
/// Cartesian product; the tag of a pair is "(" + left tag + "," + right tag + ")".
DefSet set_product(const DefSet& s, const DefSet& t);
/// Disjoint union; the two sets must use disjoint tags.
DefSet coproduct(const DefSet& s, const DefSet& t);
DefSet project(const DefSet& s, std::span<const size_t> coords, const std::string& tag);

bool same_set(const DefSet& s, const DefSet& t);
bool is_subset(const DefSet& s, const DefSet& t);

std::string product_tag(const std::string& left, const std::string& right);

/// The whole of A^n over the support, under a single tag.
DefSet power(Theory theory, const std::string& tag, size_t arity, const Support& support = {});

/// Both sets refined to their joint support.
std::pair<DefSet, DefSet> aligned(const DefSet& s, const DefSet& t);

}  // namespace atomcompact
