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

#include "atomcompact/automata.hpp"

namespace atomcompact {

TaggedTuple transition_input(const TaggedTuple& letter, const TaggedTuple& state) {
  TaggedTuple out{product_tag(letter.tag, state.tag), letter.atoms};
  out.atoms.insert(out.atoms.end(), state.atoms.begin(), state.atoms.end());
  return out;
}

namespace {

void check_letter(const DefSet& alphabet, const TaggedTuple& letter) {
  bool ok = false;
  try {
    ok = alphabet.member(letter);
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) fail(ErrorCode::LetterNotInAlphabet, "letter " + letter.str() + " is not in the alphabet");
}

void check_transition_domain(const DefSet& domain, const DefSet& alphabet, const DefSet& states) {
  if (!same_set(domain, set_product(alphabet, states)))
    fail(ErrorCode::NotTotal, "transitions must be defined on exactly alphabet x states");
}

SymTuple joined(const TaggedTuple& letter, std::span<const SymAtom> state) {
  SymTuple out = lift(letter.atoms);
  out.insert(out.end(), state.begin(), state.end());
  return out;
}

}  // namespace

const DefSet& alphabet_of(const Automaton& a) {
  return std::visit([](const auto& m) -> const DefSet& { return m.alphabet; }, a);
}

std::string_view kind_name(const Automaton& a) {
  static constexpr std::string_view names[] = {"det", "ultra", "weighted", "prob"};
  return names[a.index()];
}

void DetAutomaton::validate() const {
  check_transition_domain(delta.domain(), alphabet, states);
  if (!is_subset(delta.codomain(), states)) fail(ErrorCode::NotASubset, "transition codomain is not inside the states");
  if (!states.member(initial)) fail(ErrorCode::NotInDomain, "initial state " + initial.str() + " is not a state");
  if (!is_subset(finals, states)) fail(ErrorCode::NotASubset, "final states are not inside the states");
}

TaggedTuple det_step(const DetAutomaton& a, const TaggedTuple& state, const TaggedTuple& letter) {
  check_letter(a.alphabet, letter);
  return a.delta.apply(transition_input(letter, state));
}

bool run_det(const DetAutomaton& a, const Word& w) {
  TaggedTuple s = a.initial;
  for (const auto& letter : w) s = det_step(a, s, letter);
  return a.finals.member(s);
}

void UltraAutomaton::validate() const {
  check_transition_domain(delta.domain(), alphabet, states);
  if (!states.member(initial)) fail(ErrorCode::NotInDomain, "initial state " + initial.str() + " is not a state");
  if (!is_subset(finals, compactify(states)))
    fail(ErrorCode::NotASubsetOfCompactification, "final types are not inside the compactification of the states");
  Support check = delta.support().joined(states.support());
  for (const auto& [cell, t] : delta.pieces()) {
    for (const auto& sub : cells::refine(states.theory(), cell.cell, delta.support(), check)) {
      auto w = cells::witness(states.theory(), sub, check);
      SymTuple x = lift(w);
      TypeDesc p{t.shape, {}};
      for (const auto& v : evaluate(t.params, x)) p.params.push_back(v.concrete());
      if (!is_valid(p) || !type_member(p, states))
        fail(ErrorCode::InvalidArgument, "transition value " + p.str() + " is not a type on the states");
    }
  }
}

TypeDesc ultra_step(const UltraAutomaton& a, const TypeDesc& state, const TaggedTuple& letter) {
  check_letter(a.alphabet, letter);
  SymTuple input = joined(letter, generic_point(state, 1));
  const TypeTemplate& t = a.delta.at(product_tag(letter.tag, state.tag()), input);
  return flatten(t, input);
}

TypeDesc run_ultra(const UltraAutomaton& a, const Word& w) {
  TypeDesc p = TypeDesc::principal(a.states.theory(), a.initial);
  for (const auto& letter : w) p = ultra_step(a, p, letter);
  return p;
}

bool accepts_ultra(const UltraAutomaton& a, const Word& w) { return a.finals.member(run_ultra(a, w).encode()); }

DetAutomaton determinize_ultra(const UltraAutomaton& a) {
  DefSet types = compactify(a.states);
  Support s = a.delta.support().joined(a.states.support()).joined(a.alphabet.support()).joined(a.finals.support());
  DefSet domain = set_product(a.alphabet, types);
  DefFun delta = DefFun::from_rule(domain, types, s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    auto [lt, st] = split_pair_tag(c.tag, a.alphabet, types);
    size_t nl = *a.alphabet.arity_of(lt);
    TaggedTuple letter{lt, {w.begin(), w.begin() + static_cast<long>(nl)}};
    TypeDesc p = TypeDesc::decode({st, {w.begin() + static_cast<long>(nl), w.end()}});
    return ultra_step(a, p, letter).encode();
  });
  DetAutomaton out{types, a.alphabet, std::move(delta), TypeDesc::principal(a.states.theory(), a.initial).encode(), a.finals};
  out.validate();
  return out;
}

void WeightedAutomaton::validate() const {
  check_transition_domain(delta.domain(), alphabet, states);
  for (const auto& [x, c] : initial.entries())
    if (!states.member(x)) fail(ErrorCode::NotInDomain, "initial entry " + x.str() + " is not a state");
  if (!is_subset(states, final.domain())) fail(ErrorCode::NotTotal, "the final weight is not defined on every state");
  Support check = delta.support().joined(states.support());
  for (const auto& [cell, outs] : delta.pieces()) {
    for (const auto& sub : cells::refine(states.theory(), cell.cell, delta.support(), check)) {
      auto w = cells::witness(states.theory(), sub, check);
      SymTuple x = lift(w);
      for (const auto& o : outs)
        if (!states.member(o.tag, evaluate(o.terms, x)))
          fail(ErrorCode::InvalidArgument, "a transition output leaves the states");
    }
  }
}

FreeVec weighted_step(const WeightedAutomaton& a, const FreeVec& v, const TaggedTuple& letter) {
  check_letter(a.alphabet, letter);
  FreeVec out;
  for (const auto& [s, c] : v.entries()) {
    TaggedTuple in = transition_input(letter, s);
    SymTuple x = lift(in.atoms);
    for (const auto& o : a.delta.at(in.tag, x)) {
      TaggedTuple t{o.tag, {}};
      for (const auto& term : o.terms) t.atoms.push_back(term.is_input() ? in.atoms.at(term.input) : term.constant);
      out.add(t, c * o.weight);
    }
  }
  return out;
}

namespace {

Rational pair_with_final(const FreeVec& v, const ScalarFun& final) {
  Rational out = 0;
  for (const auto& [s, c] : v.entries()) out += c * final(s);
  return out;
}

}  // namespace

Rational run_weighted(const WeightedAutomaton& a, const Word& w) {
  FreeVec v = a.initial;
  for (const auto& letter : w) v = weighted_step(a, v, letter);
  return pair_with_final(v, a.final);
}

LinMap letter_map(const WeightedAutomaton& a, const TaggedTuple& letter) {
  if (a.states.theory() != Theory::Eq) fail(ErrorCode::UnsupportedTheory, "linear monoids are only available over EQ atoms");
  check_letter(a.alphabet, letter);
  Support s = a.delta.support().joined(a.states.support()).with(letter.atoms);
  ScalarFun kernel = ScalarFun::from_rule(set_product(a.states, a.states), s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    auto [t0, t1] = split_pair_tag(c.tag, a.states, a.states);
    size_t n0 = *a.states.arity_of(t0);
    TaggedTuple s0{t0, {w.begin(), w.begin() + static_cast<long>(n0)}};
    TaggedTuple s1{t1, {w.begin() + static_cast<long>(n0), w.end()}};
    return weighted_step(a, FreeVec::unit(s0), letter).at(s1);
  });
  return lin_from_kernel(a.states, a.states, kernel);
}

LinMap word_map(const WeightedAutomaton& a, const Word& w, std::map<TaggedTuple, LinMap>* cache) {
  LinMap m = identity_map(a.states);
  for (const auto& letter : w) {
    if (cache) {
      auto it = cache->find(letter);
      if (it == cache->end()) it = cache->emplace(letter, letter_map(a, letter)).first;
      m = compose(it->second, m);
    } else {
      m = compose(letter_map(a, letter), m);
    }
  }
  return m;
}

Rational run_monoid(const WeightedAutomaton& a, const Word& w, std::map<TaggedTuple, LinMap>* cache) {
  return pair_with_final(apply(word_map(a, w, cache), a.initial), a.final);
}

void ProbAutomaton::validate() const {
  check_transition_domain(delta.domain(), alphabet, states);
  if (!is_subset(delta.codomain(), states)) fail(ErrorCode::NotASubset, "transition codomain is not inside the states");
  if (!same_set(initial.base(), states)) fail(ErrorCode::InvalidArgument, "the initial measure must live on the states");
  if (!is_subset(states, final.domain())) fail(ErrorCode::NotTotal, "the final weight is not defined on every state");
  for (const auto& [cell, v] : final.map().pieces())
    if (v < 0 || v > 1) fail(ErrorCode::InvalidArgument, "final weights must lie in [0,1]");
}

Measure prob_step(const ProbAutomaton& a, const Measure& mu, const TaggedTuple& letter) {
  check_letter(a.alphabet, letter);
  WeightedTypes out;
  for (const auto& [p, w] : mu.atoms()) {
    SymTuple input = joined(letter, generic_point(p, 1));
    for (const auto& [q, v] : a.delta.at_generic(product_tag(letter.tag, p.tag()), input)) out.emplace_back(q, w * v);
  }
  return Measure(a.states, merge_types(std::move(out)));
}

Rational run_prob(const ProbAutomaton& a, const Word& w) {
  Measure mu = a.initial;
  for (const auto& letter : w) mu = prob_step(a, mu, letter);
  return expectation(mu, a.final);
}

WeightedAutomaton as_weighted(const ProbAutomaton& a) {
  DefSet types = compactify(a.states);
  Support s = a.delta.support().joined(a.states.support()).joined(a.alphabet.support()).joined(a.final.support());
  auto delta = Piecewise<std::vector<WeightedOut>>::from_rule(
      set_product(a.alphabet, types), s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
        auto [lt, st] = split_pair_tag(c.tag, a.alphabet, types);
        size_t nl = *a.alphabet.arity_of(lt);
        TaggedTuple letter{lt, {w.begin(), w.begin() + static_cast<long>(nl)}};
        TypeDesc p = TypeDesc::decode({st, {w.begin() + static_cast<long>(nl), w.end()}});
        std::vector<WeightedOut> out;
        Measure next = prob_step(a, Measure(a.states, {{p, 1}}), letter);
        for (const auto& [q, v] : next.atoms()) {
          auto terms = symbolize(q.params, w, s);
          out.push_back({q.shape.encode(), std::move(terms), v});
        }
        return out;
      });
  FreeVec initial;
  for (const auto& [p, w] : a.initial.atoms()) initial.add(p.encode(), w);
  ScalarFun final = ScalarFun::from_rule(types, s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    TypeDesc p = TypeDesc::decode({c.tag, w});
    SymTuple gp = generic_point(p, 1);
    return a.final(p.tag(), gp);
  });
  WeightedAutomaton out{types, a.alphabet, std::move(delta), std::move(initial), std::move(final)};
  out.validate();
  return out;
}

}  // namespace atomcompact
