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

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "atomcompact/defset.hpp"
#include "atomcompact/error.hpp"

namespace atomcompact {

/// A function on a DefSet given by one value per orbit of the domain over
/// `support`. The pieces are exactly the cells of the domain refined to the
/// support, so lookup is a classification followed by a binary search.
template <class Out>
class Piecewise {
 public:
  using Piece = std::pair<TaggedCell, Out>;
  using Rule = std::function<Out(const TaggedCell&, const std::vector<Atom>&)>;

  Piecewise() = default;

  Piecewise(DefSet domain, Support support, std::vector<Piece> pieces)
      : domain_(std::move(domain)), support_(std::move(support)), pieces_(std::move(pieces)) {
    if (!support_.includes(domain_.support())) support_ = support_.joined(domain_.support());
    for (auto& p : pieces_) p.first.cell = cells::canonical(domain_.theory(), p.first.cell);
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.first < b.first; });
    for (size_t i = 1; i < pieces_.size(); ++i)
      if (pieces_[i - 1].first == pieces_[i].first)
        fail(ErrorCode::InvalidArgument, "two pieces for the cell " + describe(pieces_[i].first));
    DefSet refined = domain_.refine(support_);
    for (const auto& p : pieces_)
      if (!refined.contains_cell(p.first)) fail(ErrorCode::NotInDomain, "piece " + describe(p.first) + " lies outside the domain");
    if (refined.cells().size() != pieces_.size())
      fail(ErrorCode::NotTotal, "pieces cover " + std::to_string(pieces_.size()) + " of the " +
                                    std::to_string(refined.cells().size()) + " domain orbits over " + support_.str());
  }

  /// Builds the function by evaluating `rule` on one witness per orbit.
  static Piecewise from_rule(const DefSet& domain, const Support& support, const Rule& rule) {
    Support s = support.joined(domain.support());
    std::vector<Piece> pieces;
    DefSet refined = domain.refine(s);
    for (const auto& c : refined.cells())
      pieces.emplace_back(c, rule(c, cells::witness(domain.theory(), c.cell, s)));
    return Piecewise(domain, s, std::move(pieces));
  }

  const DefSet& domain() const { return domain_; }
  const Support& support() const { return support_; }
  Theory theory() const { return domain_.theory(); }
  const std::vector<Piece>& pieces() const { return pieces_; }

  const Out* find(const std::string& tag, std::span<const SymAtom> x) const {
    auto arity = domain_.arity_of(tag);
    if (!arity) return nullptr;
    if (*arity != x.size()) fail(ErrorCode::ArityMismatch, "tag '" + tag + "' expects arity " + std::to_string(*arity));
    TaggedCell key{tag, cells::classify(theory(), x, support_)};
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), key,
                               [](const Piece& p, const TaggedCell& k) { return p.first < k; });
    if (it == pieces_.end() || it->first != key) return nullptr;
    return &it->second;
  }

  const Out& at(const std::string& tag, std::span<const SymAtom> x) const {
    if (const Out* out = find(tag, x)) return *out;
    std::string text = tag + "(";
    for (size_t i = 0; i < x.size(); ++i) text += (i ? " " : "") + x[i].str();
    fail(ErrorCode::NotInDomain, text + ") is not in the domain");
  }

  const Out& at(const TaggedTuple& x) const {
    SymTuple lifted = lift(x.atoms);
    return at(x.tag, lifted);
  }

  /// Same function, split along a larger support.
  Piecewise refined(const Support& support) const {
    Support s = support.joined(support_);
    if (s == support_) return *this;
    std::vector<Piece> out;
    for (const auto& [cell, value] : pieces_)
      for (auto& c : cells::refine(theory(), cell.cell, support_, s)) out.emplace_back(TaggedCell{cell.tag, std::move(c)}, value);
    return Piecewise(domain_, s, std::move(out));
  }

  template <class F>
  auto map(F&& f) const -> Piecewise<decltype(f(std::declval<const Out&>()))> {
    using R = decltype(f(std::declval<const Out&>()));
    std::vector<std::pair<TaggedCell, R>> out;
    for (const auto& [cell, value] : pieces_) out.emplace_back(cell, f(value));
    return Piecewise<R>(domain_, support_, std::move(out));
  }

 private:
  std::string describe(const TaggedCell& c) const { return c.tag + cells::str(theory(), c.cell, support_); }

  DefSet domain_;
  Support support_;
  std::vector<Piece> pieces_;
};

}  // namespace atomcompact
