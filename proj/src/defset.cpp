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

#include "atomcompact/defset.hpp"

#include <algorithm>

#include "atomcompact/error.hpp"

namespace atomcompact {

DefSet::DefSet(Theory theory, Support support, std::vector<TaggedCell> cells)
    : theory_(theory), support_(std::move(support)), cells_(std::move(cells)) {
  std::map<std::string, size_t> arity;
  for (auto& c : cells_) {
    for (const auto& coord : c.cell.coords) {
      bool bad = theory_ == Theory::Eq
                     ? (coord.slot != kBlockSlot && (coord.slot < 0 || coord.slot >= static_cast<int>(support_.size())))
                     : (coord.slot < 0 || coord.slot > 2 * static_cast<int>(support_.size()));
      if (bad) fail(ErrorCode::InvalidArgument, "cell coordinate refers outside the support " + support_.str());
    }
    c.cell = cells::canonical(theory_, c.cell);
    auto [it, inserted] = arity.emplace(c.tag, c.cell.arity());
    if (!inserted && it->second != c.cell.arity())
      fail(ErrorCode::ArityMismatch, "tag '" + c.tag + "' used with arities " + std::to_string(it->second) + " and " +
                                         std::to_string(c.cell.arity()));
  }
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

std::map<std::string, size_t> DefSet::arities() const {
  std::map<std::string, size_t> out;
  for (const auto& c : cells_) out.emplace(c.tag, c.cell.arity());
  return out;
}

std::optional<size_t> DefSet::arity_of(const std::string& tag) const {
  for (const auto& c : cells_)
    if (c.tag == tag) return c.cell.arity();
  return std::nullopt;
}

std::optional<size_t> DefSet::cardinality() const {
  for (const auto& c : cells_)
    if (cells::free_count(theory_, c.cell) > 0) return std::nullopt;
  return cells_.size();
}

DefSet DefSet::refine(const Support& support) const {
  if (support == support_) return *this;
  std::vector<TaggedCell> out;
  for (const auto& c : cells_)
    for (auto& r : cells::refine(theory_, c.cell, support_, support)) out.push_back({c.tag, std::move(r)});
  return DefSet(theory_, support, std::move(out));
}

bool DefSet::member(const std::string& tag, std::span<const SymAtom> x) const {
  auto arity = arity_of(tag);
  if (!arity) return false;
  if (*arity != x.size())
    fail(ErrorCode::ArityMismatch, "tag '" + tag + "' has arity " + std::to_string(*arity) + ", got a tuple of length " +
                                       std::to_string(x.size()));
  return contains_cell({tag, cells::classify(theory_, x, support_)});
}

bool DefSet::member(const TaggedTuple& x) const {
  SymTuple lifted = lift(x.atoms);
  return member(x.tag, lifted);
}

bool DefSet::contains_cell(const TaggedCell& cell) const {
  return std::binary_search(cells_.begin(), cells_.end(), cell);
}

std::string DefSet::str() const {
  std::string out = std::string(theory_name(theory_)) + " over " + support_.str() + ":";
  for (const auto& c : cells_) out += " " + c.tag + cells::str(theory_, c.cell, support_);
  return out;
}

namespace {

void check_theory(const DefSet& s, const DefSet& t) {
  if (s.theory() != t.theory())
    fail(ErrorCode::TheoryMismatch, "cannot combine " + std::string(theory_name(s.theory())) + " and " +
                                        std::string(theory_name(t.theory())) + " sets");
}

void check_arities(const DefSet& s, const DefSet& t) {
  auto a = s.arities();
  for (const auto& [tag, n] : t.arities()) {
    auto it = a.find(tag);
    if (it != a.end() && it->second != n)
      fail(ErrorCode::ArityMismatch, "tag '" + tag + "' has arity " + std::to_string(it->second) + " and " +
                                         std::to_string(n));
  }
}

}  // namespace

std::pair<DefSet, DefSet> aligned(const DefSet& s, const DefSet& t) {
  check_theory(s, t);
  Support joint = s.support().joined(t.support());
  return {s.refine(joint), t.refine(joint)};
}

DefSet set_union(const DefSet& s, const DefSet& t) {
  check_arities(s, t);
  auto [a, b] = aligned(s, t);
  std::vector<TaggedCell> cells = a.cells();
  cells.insert(cells.end(), b.cells().begin(), b.cells().end());
  return DefSet(a.theory(), a.support(), std::move(cells));
}

DefSet set_intersect(const DefSet& s, const DefSet& t) {
  check_arities(s, t);
  auto [a, b] = aligned(s, t);
  std::vector<TaggedCell> cells;
  std::set_intersection(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                        std::back_inserter(cells));
  return DefSet(a.theory(), a.support(), std::move(cells));
}

DefSet set_difference(const DefSet& s, const DefSet& t) {
  check_arities(s, t);
  auto [a, b] = aligned(s, t);
  std::vector<TaggedCell> cells;
  std::set_difference(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                      std::back_inserter(cells));
  return DefSet(a.theory(), a.support(), std::move(cells));
}

DefSet set_complement(const DefSet& s, const DefSet* ambient) {
  if (ambient == nullptr) fail(ErrorCode::AmbientMissing, "complement needs an ambient set");
  return set_difference(*ambient, s);
}

std::string product_tag(const std::string& left, const std::string& right) { return "(" + left + "," + right + ")"; }

DefSet set_product(const DefSet& s, const DefSet& t) {
  auto [a, b] = aligned(s, t);
  std::vector<TaggedCell> cells;
  for (const auto& x : a.cells())
    for (const auto& y : b.cells())
      for (auto& c : cells::product(a.theory(), x.cell, y.cell)) cells.push_back({product_tag(x.tag, y.tag), std::move(c)});
  return DefSet(a.theory(), a.support(), std::move(cells));
}

DefSet coproduct(const DefSet& s, const DefSet& t) {
  auto a = s.arities();
  for (const auto& [tag, n] : t.arities())
    if (a.count(tag)) fail(ErrorCode::InvalidArgument, "coproduct summands share the tag '" + tag + "'");
  return set_union(s, t);
}

DefSet project(const DefSet& s, std::span<const size_t> coords, const std::string& tag) {
  std::vector<TaggedCell> cells;
  for (const auto& c : s.cells()) cells.push_back({tag, cells::project(s.theory(), c.cell, coords)});
  return DefSet(s.theory(), s.support(), std::move(cells));
}

bool same_set(const DefSet& s, const DefSet& t) {
  if (s.theory() != t.theory()) return false;
  auto [a, b] = aligned(s, t);
  return a.cells() == b.cells();
}

bool is_subset(const DefSet& s, const DefSet& t) {
  if (s.theory() != t.theory()) return false;
  auto [a, b] = aligned(s, t);
  return std::includes(b.cells().begin(), b.cells().end(), a.cells().begin(), a.cells().end());
}

DefSet power(Theory theory, const std::string& tag, size_t arity, const Support& support) {
  std::vector<TaggedCell> cells;
  for (auto& c : cells::all(theory, arity, support)) cells.push_back({tag, std::move(c)});
  return DefSet(theory, support, std::move(cells));
}

}  // namespace atomcompact
