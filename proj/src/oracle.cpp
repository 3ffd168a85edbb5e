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

#include "atomcompact/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "atomcompact/linalg.hpp"

namespace atomcompact {

Truncation Truncation::eq(size_t m) {
  Truncation t{Theory::Eq, {}};
  for (size_t i = 0; i < m; ++i) t.pool.emplace_back(static_cast<long>(i));
  return t;
}

Truncation Truncation::dlo(const Support& support, size_t per_gap) {
  return {Theory::Dlo, cells::sample_pool(Theory::Dlo, support, per_gap)};
}

Truncation Truncation::covering(Theory theory, const Support& support, size_t room) {
  return {theory, cells::sample_pool(theory, support, room)};
}

std::string Truncation::str() const {
  std::string out = std::string(theory_name(theory)) + "{";
  for (size_t i = 0; i < pool.size(); ++i) out += (i ? "," : "") + pool[i].str();
  return out + "}";
}

std::vector<TaggedTuple> materialize(const DefSet& s, const Truncation& t) {
  if (s.theory() != t.theory) fail(ErrorCode::TheoryMismatch, "pool and set use different theories");
  for (const auto& a : s.support().atoms())
    if (std::find(t.pool.begin(), t.pool.end(), a) == t.pool.end())
      fail(ErrorCode::PoolTooSmall, "pool " + t.str() + " misses support atom " + a.str());
  std::vector<TaggedTuple> out;
  for (const auto& [tag, n] : s.arities()) {
    TaggedTuple x{tag, std::vector<Atom>(n)};
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == n) {
        if (s.member(x)) out.push_back(x);
        return;
      }
      for (const auto& a : t.pool) {
        x.atoms[i] = a;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

size_t rank_of(const std::vector<BasisElement>& basis, const std::vector<TaggedTuple>& points) {
  Matrix m;
  for (const auto& b : basis) {
    std::vector<Rational> row;
    for (const auto& x : points) row.emplace_back(eval_basis(b, x));
    m.push_back(std::move(row));
  }
  return matrix_rank(std::move(m));
}

size_t rank_of(const std::vector<BasisElement>& basis, const DefSet& domain, const Truncation& t) {
  for (const auto& b : basis)
    for (const auto& a : encode_basis(b).atoms)
      if (std::find(t.pool.begin(), t.pool.end(), a) == t.pool.end())
        fail(ErrorCode::PoolTooSmall, "pool " + t.str() + " misses parameter " + a.str());
  return rank_of(basis, materialize(domain, t));
}

size_t rank_of(const std::vector<ScalarFun>& functions, const DefSet& domain, const Truncation& t) {
  auto points = materialize(domain, t);
  Matrix m;
  for (const auto& f : functions) {
    for (const auto& a : f.support().atoms())
      if (std::find(t.pool.begin(), t.pool.end(), a) == t.pool.end())
        fail(ErrorCode::PoolTooSmall, "pool " + t.str() + " misses parameter " + a.str());
    std::vector<Rational> row;
    for (const auto& x : points) row.push_back(f(x));
    m.push_back(std::move(row));
  }
  return matrix_rank(std::move(m));
}

size_t independence_pool_size(const std::vector<TypeDesc>& family) {
  std::vector<Atom> params;
  size_t max_rank = 0, max_arity = 0;
  for (const auto& p : family) {
    params.insert(params.end(), p.params.begin(), p.params.end());
    max_rank = std::max(max_rank, p.rank());
    max_arity = std::max(max_arity, p.shape.arity());
  }
  return Support(params).size() + 2 * max_rank * max_arity + 2;
}

std::vector<Word> sample_words(const DefSet& alphabet, const Truncation& t, size_t count, uint64_t seed, size_t max_length) {
  auto letters = materialize(alphabet, t);
  std::vector<Word> out;
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < count; ++i) {
    Word w;
    size_t len = letters.empty() ? 0 : rng() % (max_length + 1);
    for (size_t j = 0; j < len; ++j) w.push_back(letters[rng() % letters.size()]);
    out.push_back(std::move(w));
  }
  return out;
}

std::string DifferentialReport::str() const {
  std::string out = "kind=" + kind + " check=" + check + " seed=" + std::to_string(seed) + " pool={";
  for (size_t i = 0; i < pool.size(); ++i) out += (i ? "," : "") + pool[i].str();
  out += "} agreement=" + std::to_string(agreements) + "/" + std::to_string(words);
  return out;
}

namespace {

std::string word_str(const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i].str();
  return "[" + out + "]";
}

}  // namespace

DifferentialReport differential_run(const Automaton& a, const Truncation& t, size_t n_words, uint64_t seed, size_t max_length) {
  DifferentialReport report;
  report.kind = std::string(kind_name(a));
  report.seed = seed;
  report.pool = t.pool;
  auto words = sample_words(alphabet_of(a), t, n_words, seed, max_length);
  std::function<bool(const Word&)> agree;

  std::map<TaggedTuple, LinMap> cache;
  std::map<std::pair<TaggedTuple, TaggedTuple>, TaggedTuple> table;
  std::optional<DetAutomaton> det;
  std::optional<WeightedAutomaton> weighted;

  if (const auto* m = std::get_if<DetAutomaton>(&a)) {
    report.check = "table";
    for (const auto& letter : materialize(m->alphabet, t))
      for (const auto& s : materialize(m->states, t)) table[{letter, s}] = m->delta.apply(transition_input(letter, s));
    agree = [m, &table](const Word& w) {
      TaggedTuple s = m->initial;
      for (const auto& letter : w) {
        auto it = table.find({letter, s});
        if (it == table.end()) return false;
        s = it->second;
      }
      return m->finals.member(s) == run_det(*m, w);
    };
  } else if (const auto* m = std::get_if<UltraAutomaton>(&a)) {
    report.check = "determinize";
    det = determinize_ultra(*m);
    agree = [m, &det](const Word& w) { return accepts_ultra(*m, w) == run_det(*det, w); };
  } else if (const auto* m = std::get_if<WeightedAutomaton>(&a)) {
    report.check = "monoid";
    agree = [m, &cache](const Word& w) { return run_weighted(*m, w) == run_monoid(*m, w, &cache); };
  } else {
    const auto* p = std::get_if<ProbAutomaton>(&a);
    report.check = "as-weighted";
    weighted = as_weighted(*p);
    agree = [p, &weighted](const Word& w) { return run_prob(*p, w) == run_weighted(*weighted, w); };
  }
  for (const auto& w : words) {
    ++report.words;
    if (agree(w))
      ++report.agreements;
    else
      report.disagreements.push_back(word_str(w));
  }
  return report;
}

}  // namespace atomcompact
