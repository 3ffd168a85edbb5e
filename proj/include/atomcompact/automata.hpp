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
#include <variant>
#include <vector>

#include "atomcompact/freelin.hpp"
#include "atomcompact/measure.hpp"

namespace atomcompact {

using Word = std::vector<TaggedTuple>;

/// Transition inputs are pairs (letter, state) tagged "(letter,state)".
TaggedTuple transition_input(const TaggedTuple& letter, const TaggedTuple& state);

struct DetAutomaton {
  DefSet states;
  DefSet alphabet;
  DefFun delta;
  TaggedTuple initial;
  DefSet finals;

  void validate() const;
};

struct UltraAutomaton {
  DefSet states;
  DefSet alphabet;
  Piecewise<TypeTemplate> delta;
  TaggedTuple initial;
  /// Encoded types, a subset of compactify(states).
  DefSet finals;

  void validate() const;
};

struct WeightedOut {
  std::string tag;
  std::vector<Term> terms;
  Rational weight;

  friend bool operator==(const WeightedOut&, const WeightedOut&) = default;
};

struct WeightedAutomaton {
  DefSet states;
  DefSet alphabet;
  Piecewise<std::vector<WeightedOut>> delta;
  FreeVec initial;
  ScalarFun final;

  void validate() const;
};

struct ProbAutomaton {
  DefSet states;
  DefSet alphabet;
  Kernel delta;
  Measure initial;
  ScalarFun final;

  void validate() const;
};

using Automaton = std::variant<DetAutomaton, UltraAutomaton, WeightedAutomaton, ProbAutomaton>;

const DefSet& alphabet_of(const Automaton& a);
std::string_view kind_name(const Automaton& a);

TaggedTuple det_step(const DetAutomaton& a, const TaggedTuple& state, const TaggedTuple& letter);
bool run_det(const DetAutomaton& a, const Word& w);

TypeDesc ultra_step(const UltraAutomaton& a, const TypeDesc& state, const TaggedTuple& letter);
TypeDesc run_ultra(const UltraAutomaton& a, const Word& w);
bool accepts_ultra(const UltraAutomaton& a, const Word& w);
DetAutomaton determinize_ultra(const UltraAutomaton& a);

FreeVec weighted_step(const WeightedAutomaton& a, const FreeVec& v, const TaggedTuple& letter);
Rational run_weighted(const WeightedAutomaton& a, const Word& w);

/// The linear map of one letter, decomposed in hom_basis(states, states).
LinMap letter_map(const WeightedAutomaton& a, const TaggedTuple& letter);
/// Product of the letter maps; `cache` may be shared between calls.
LinMap word_map(const WeightedAutomaton& a, const Word& w, std::map<TaggedTuple, LinMap>* cache = nullptr);
Rational run_monoid(const WeightedAutomaton& a, const Word& w, std::map<TaggedTuple, LinMap>* cache = nullptr);

Measure prob_step(const ProbAutomaton& a, const Measure& mu, const TaggedTuple& letter);
Rational run_prob(const ProbAutomaton& a, const Word& w);
/// The same machine as a weighted automaton whose states are encoded types.
WeightedAutomaton as_weighted(const ProbAutomaton& a);

}  // namespace atomcompact
