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

#include <cstdint>
#include <string>
#include <vector>

#include "atomcompact/automata.hpp"

namespace atomcompact {

/// A finite pool of concrete atoms standing in for the infinite atom set.
struct Truncation {
  Theory theory = Theory::Eq;
  std::vector<Atom> pool;

  /// EQ atoms 0..m-1.
  static Truncation eq(size_t m);
  /// DLO chain: the support atoms, `per_gap` points in every gap and beyond both ends.
  static Truncation dlo(const Support& support, size_t per_gap);
  /// Pool large enough to inhabit every orbit over `support` with `room` spare atoms.
  static Truncation covering(Theory theory, const Support& support, size_t room);

  std::string str() const;
};

/// Every concrete element of s built from pool atoms.
std::vector<TaggedTuple> materialize(const DefSet& s, const Truncation& t);

/// Exact rank of the evaluation matrix of basis elements on the points.
size_t rank_of(const std::vector<BasisElement>& basis, const std::vector<TaggedTuple>& points);
size_t rank_of(const std::vector<BasisElement>& basis, const DefSet& domain, const Truncation& t);
size_t rank_of(const std::vector<ScalarFun>& functions, const DefSet& domain, const Truncation& t);

/// Pool size used to check independence of isolating sets: the parameters,
/// plus room for the fresh blocks of every element, plus two.
size_t independence_pool_size(const std::vector<TypeDesc>& family);

std::vector<Word> sample_words(const DefSet& alphabet, const Truncation& t, size_t count, uint64_t seed, size_t max_length);

struct DifferentialReport {
  std::string kind;
  std::string check;
  uint64_t seed = 0;
  std::vector<Atom> pool;
  size_t words = 0;
  size_t agreements = 0;
  std::vector<std::string> disagreements;

  bool all_agree() const { return agreements == words; }
  std::string str() const;
};

/// Runs every sampled word through two independent semantics of the same
/// machine and counts agreements:
///   det      - run_det vs a transition table materialized over the pool
///   ultra    - accepts_ultra vs run_det of the determinization
///   weighted - run_weighted vs run_monoid
///   prob     - run_prob vs run_weighted of as_weighted
DifferentialReport differential_run(const Automaton& a, const Truncation& t, size_t n_words, uint64_t seed,
                                    size_t max_length = 6);

}  // namespace atomcompact
