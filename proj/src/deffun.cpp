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

#include "atomcompact/deffun.hpp"

#include <algorithm>

namespace atomcompact {

SymAtom evaluate(const Term& term, std::span<const SymAtom> input) {
  if (!term.is_input()) return SymAtom(term.constant);
  if (static_cast<size_t>(term.input) >= input.size())
    fail(ErrorCode::ArityMismatch, "term in:" + std::to_string(term.input) + " exceeds input arity " +
                                       std::to_string(input.size()));
  return input[term.input];
}

SymTuple evaluate(std::span<const Term> terms, std::span<const SymAtom> input) {
  SymTuple out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(evaluate(t, input));
  return out;
}

std::vector<Term> symbolize(std::span<const Atom> output, std::span<const Atom> input, const Support& support) {
  std::vector<Term> out;
  for (const auto& a : output) {
    if (support.contains(a)) {
      out.push_back(Term::cst(a));
      continue;
    }
    auto it = std::find(input.begin(), input.end(), a);
    if (it == input.end())
      fail(ErrorCode::KernelNotDefinable, "output atom " + a.str() + " is neither an input coordinate nor a parameter");
    out.push_back(Term::in(static_cast<int>(it - input.begin())));
  }
  return out;
}

std::vector<Atom> constants_of(std::span<const Term> terms) {
  std::vector<Atom> out;
  for (const auto& t : terms)
    if (!t.is_input()) out.push_back(t.constant);
  return out;
}

DefFun::DefFun(Piecewise<FunOut> map, DefSet codomain) : map_(std::move(map)), codomain_(std::move(codomain)) {
  if (map_.theory() != codomain_.theory()) fail(ErrorCode::TheoryMismatch, "domain and codomain use different theories");
  std::vector<Atom> consts;
  for (const auto& [cell, out] : map_.pieces()) {
    for (const auto& t : out.terms)
      if (t.is_input() && static_cast<size_t>(t.input) >= cell.cell.arity())
        fail(ErrorCode::ArityMismatch, "term in:" + std::to_string(t.input) + " exceeds the arity of tag '" + cell.tag + "'");
    auto c = constants_of(out.terms);
    consts.insert(consts.end(), c.begin(), c.end());
  }
  map_ = map_.refined(Support(consts));
  Support check = map_.support().joined(codomain_.support());
  for (const auto& [cell, out] : map_.pieces()) {
    auto arity = codomain_.arity_of(out.tag);
    if (arity && *arity != out.terms.size())
      fail(ErrorCode::ArityMismatch, "output tag '" + out.tag + "' has arity " + std::to_string(*arity));
    for (const auto& sub : cells::refine(theory(), cell.cell, map_.support(), check)) {
      auto w = cells::witness(theory(), sub, check);
      SymTuple x = lift(w);
      if (!codomain_.member(out.tag, evaluate(out.terms, x)))
        fail(ErrorCode::InvalidArgument, "the piece for " + cell.tag + cells::str(theory(), cell.cell, map_.support()) +
                                             " maps outside the codomain");
    }
  }
}

TaggedTuple DefFun::apply(const TaggedTuple& x) const {
  SymTuple lifted = lift(x.atoms);
  SymTagged y = apply_generic(x.tag, lifted);
  TaggedTuple out{y.tag, {}};
  for (const auto& a : y.atoms) out.atoms.push_back(a.concrete());
  return out;
}

SymTagged DefFun::apply_generic(const std::string& tag, std::span<const SymAtom> x) const {
  const FunOut& out = map_.at(tag, x);
  return {out.tag, evaluate(out.terms, x)};
}

DefFun DefFun::from_rule(const DefSet& domain, const DefSet& codomain, const Support& support,
                         const std::function<TaggedTuple(const TaggedCell&, const std::vector<Atom>&)>& rule) {
  Support s = support.joined(domain.support());
  auto map = Piecewise<FunOut>::from_rule(domain, s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    TaggedTuple y = rule(c, w);
    auto terms = symbolize(y.atoms, w, s);
    return FunOut{y.tag, std::move(terms)};
  });
  return DefFun(std::move(map), codomain);
}

DefFun DefFun::identity(const DefSet& s) {
  return from_rule(s, s, s.support(), [](const TaggedCell& c, const std::vector<Atom>& w) { return TaggedTuple{c.tag, w}; });
}

DefFun compose(const DefFun& g, const DefFun& f) {
  if (!is_subset(f.codomain(), g.domain())) fail(ErrorCode::NotInDomain, "codomain of the inner map is not inside the outer domain");
  Support s = f.support().joined(g.support());
  return DefFun::from_rule(f.domain(), g.codomain(), s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    return g.apply(f.apply({c.tag, w}));
  });
}

DefSet preimage(const DefFun& f, const DefSet& d) {
  Support s = f.support().joined(d.support());
  std::vector<TaggedCell> out;
  DefSet refined = f.domain().refine(s);
  for (const auto& c : refined.cells()) {
    auto w = cells::witness(f.theory(), c.cell, s);
    if (d.member(f.apply({c.tag, w}))) out.push_back(c);
  }
  return DefSet(f.theory(), s, std::move(out));
}

ScalarFun ScalarFun::from_rule(const DefSet& domain, const Support& support,
                               const std::function<Rational(const TaggedCell&, const std::vector<Atom>&)>& rule) {
  return ScalarFun(Piecewise<Rational>::from_rule(domain, support, rule));
}

ScalarFun ScalarFun::constant(const DefSet& domain, const Rational& value) {
  return from_rule(domain, domain.support(), [&](const TaggedCell&, const std::vector<Atom>&) { return value; });
}

ScalarFun ScalarFun::indicator(const DefSet& domain, const DefSet& subset) {
  return from_rule(domain, subset.support(), [&](const TaggedCell& c, const std::vector<Atom>& w) {
    return Rational(subset.member({c.tag, w}) ? 1 : 0);
  });
}

ScalarFun ScalarFun::normalized() const {
  Piecewise<Rational> cur = map_;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : cur.support().atoms()) {
      if (cur.domain().support().contains(a)) continue;
      std::vector<Atom> rest;
      for (const auto& b : cur.support().atoms())
        if (b != a) rest.push_back(b);
      Support smaller(rest);
      std::vector<std::pair<TaggedCell, Rational>> pieces;
      bool ok = true;
      DefSet coarse = cur.domain().refine(smaller);
      for (const auto& c : coarse.cells()) {
        std::optional<Rational> value;
        for (const auto& sub : cells::refine(theory(), c.cell, smaller, cur.support())) {
          auto w = cells::witness(theory(), sub, cur.support());
          SymTuple x = lift(w);
          Rational v = cur.at(c.tag, x);
          if (value && *value != v) ok = false;
          value = v;
        }
        if (!ok) break;
        pieces.emplace_back(c, *value);
      }
      if (!ok) continue;
      cur = Piecewise<Rational>(cur.domain(), smaller, std::move(pieces));
      changed = true;
      break;
    }
  }
  return ScalarFun(std::move(cur));
}

bool same_function(const ScalarFun& f, const ScalarFun& g) {
  if (!same_set(f.domain(), g.domain())) return false;
  Support s = f.support().joined(g.support());
  auto a = f.map().refined(s);
  auto b = g.map().refined(s);
  auto da = a.domain().refine(s), db = b.domain().refine(s);
  if (da.cells() != db.cells()) return false;
  for (const auto& [cell, value] : a.pieces()) {
    auto w = cells::witness(f.theory(), cell.cell, s);
    SymTuple x = lift(w);
    if (b.at(cell.tag, x) != value) return false;
  }
  return true;
}

}  // namespace atomcompact
