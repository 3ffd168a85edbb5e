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

// Test-side oracles. Nothing here calls the cell classifier, compactify or
// the decomposition code, so the suites can check those against these.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <map>
#include <random>
#include <set>

#include "atomcompact/automata.hpp"
#include "atomcompact/json_io.hpp"
#include "atomcompact/freelin.hpp"
#include "atomcompact/measure.hpp"
#include "atomcompact/oracle.hpp"

namespace testkit {

using namespace atomcompact;
using Rng = std::mt19937_64;

inline Atom A(long v) { return Atom(v); }
inline Atom Q(long num, long den = 1) { return Atom(Rational(num, den)); }
inline Support S(std::initializer_list<long> v) {
  std::vector<Atom> atoms;
  for (long x : v) atoms.emplace_back(x);
  return Support(atoms);
}
inline TaggedTuple T(const std::string& tag, std::initializer_list<long> v) {
  TaggedTuple t{tag, {}};
  for (long x : v) t.atoms.emplace_back(x);
  return t;
}

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(ATOMCOMPACT_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Automaton machine(const std::string& name) { return io::automaton_from_json(io::parse(read_data(name + ".automaton"))); }

inline DefSet set_doc(const std::string& json) { return io::defset_from_json(io::parse(json)); }

inline DefSet atoms_set(Theory th = Theory::Eq, const std::string& tag = "a") { return power(th, tag, 1); }

// Direct reading of the cell encoding: support slots, EQ blocks, DLO
// intervals with ranks.
inline bool naive_in_cell(Theory th, const Cell& c, const Support& s, const std::vector<Atom>& x) {
  if (x.size() != c.arity()) return false;
  for (size_t i = 0; i < x.size(); ++i) {
    const Coord& ci = c.coords[i];
    if (th == Theory::Eq) {
      if (ci.slot >= 0) {
        if (!(x[i] == s[ci.slot])) return false;
      } else {
        if (s.contains(x[i])) return false;
      }
    } else if (ci.slot % 2 == 1) {
      if (!(x[i] == s[ci.slot / 2])) return false;
    } else {
      size_t j = ci.slot / 2;
      if (s.contains(x[i])) return false;
      if (j > 0 && !(s[j - 1] < x[i])) return false;
      if (j < s.size() && !(x[i] < s[j])) return false;
    }
  }
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t k = 0; k < x.size(); ++k) {
      const Coord &a = c.coords[i], &b = c.coords[k];
      if (th == Theory::Eq) {
        if (a.slot == kBlockSlot && b.slot == kBlockSlot && ((a.rank == b.rank) != (x[i] == x[k]))) return false;
      } else if (a.slot % 2 == 0 && a.slot == b.slot) {
        if ((a.rank < b.rank) != (x[i] < x[k]) || (a.rank == b.rank) != (x[i] == x[k])) return false;
      }
    }
  return true;
}

inline bool naive_member(const DefSet& d, const TaggedTuple& x) {
  for (const auto& c : d.cells())
    if (c.tag == x.tag && naive_in_cell(d.theory(), c.cell, d.support(), x.atoms)) return true;
  return false;
}

inline void tuples(const std::vector<Atom>& pool, size_t n, std::vector<Atom>& cur, const std::function<void(const std::vector<Atom>&)>& f) {
  if (cur.size() == n) {
    f(cur);
    return;
  }
  for (const auto& a : pool) {
    cur.push_back(a);
    tuples(pool, n, cur, f);
    cur.pop_back();
  }
}

// All points of d inside pool^n, by brute force.
inline std::set<TaggedTuple> naive_points(const DefSet& d, const std::vector<Atom>& pool) {
  std::set<TaggedTuple> out;
  for (const auto& [tag, n] : d.arities()) {
    std::vector<Atom> cur;
    tuples(pool, n, cur, [&](const std::vector<Atom>& x) {
      TaggedTuple t{tag, x};
      if (naive_member(d, t)) out.insert(t);
    });
  }
  return out;
}

inline std::vector<Atom> pool_for(Theory th, const Support& s, size_t extra) {
  std::vector<Atom> pool(s.atoms().begin(), s.atoms().end());
  if (th == Theory::Eq) {
    long next = 1000;
    for (size_t i = 0; i < extra; ++i) pool.emplace_back(next++);
  } else {
    std::vector<Atom> edges = pool;
    if (edges.empty()) edges.push_back(Q(0));
    for (size_t i = 1; i <= extra; ++i) {
      pool.emplace_back(edges.front().value() - static_cast<long>(i));
      pool.emplace_back(edges.back().value() + static_cast<long>(i));
      for (size_t j = 0; j + 1 < edges.size(); ++j)
      {
        Rational frac(static_cast<long>(i), static_cast<long>(extra + 1));
        frac.canonicalize();
        pool.emplace_back(edges[j].value() + (edges[j + 1].value() - edges[j].value()) * frac);
      }
    }
    if (s.empty()) pool.push_back(Q(0));
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

// A concrete tuple with the same orbit as the generic point of p over
// `avoid` joined with p's parameters: fresh atoms are large unused names,
// infinitesimals are a small fraction of the gap to the nearest atom.
inline TaggedTuple concretize(const TypeDesc& p, const Support& avoid) {
  Support all = avoid.with(p.params);
  const auto& sh = p.shape;
  std::vector<Atom> block_val(sh.blocks());
  size_t pi = 0;
  long fresh = 1000000;
  for (const auto& a : all.atoms()) fresh = std::max(fresh, static_cast<long>(Rational(abs(a.value())).get_d()) + 1000);
  Rational eps(1, 1000);
  for (size_t i = 0; i + 1 < all.size(); ++i) eps = std::min(eps, Rational((all[i + 1].value() - all[i].value()) / 1000));
  Rational lo = all.empty() ? Rational(0) : all[0].value(), hi = all.empty() ? Rational(0) : all[all.size() - 1].value();
  const long m = static_cast<long>(sh.blocks());
  for (size_t b = 0; b < sh.blocks(); ++b) {
    const long bi = static_cast<long>(b);
    switch (sh.kinds[b]) {
      case Kind::Point: block_val[b] = p.params[pi++]; break;
      case Kind::Fresh: block_val[b] = Atom(fresh + bi); break;
      case Kind::Right: block_val[b] = Atom(Rational(p.params[pi++].value() + eps * (1 + bi) / (m + 1))); break;
      case Kind::Left: block_val[b] = Atom(Rational(p.params[pi++].value() - eps * (m + 1 - bi) / (m + 1))); break;
      case Kind::MinusInf: block_val[b] = Atom(Rational(lo - 1000 * (m + 1 - bi))); break;
      case Kind::PlusInf: block_val[b] = Atom(Rational(hi + 1000 * (1 + bi))); break;
    }
  }
  TaggedTuple x{sh.tag, {}};
  for (int b : sh.block_of) x.atoms.push_back(block_val[b]);
  return x;
}

// EQ isolating set of p: same equality pattern, Point blocks pinned, Fresh
// blocks avoiding every parameter.
inline bool naive_isolates(const TypeDesc& p, const TaggedTuple& x) {
  if (x.tag != p.tag() || x.atoms.size() != p.shape.arity()) return false;
  const auto& sh = p.shape;
  std::vector<Atom> pinned;
  size_t pi = 0;
  std::vector<std::optional<Atom>> param_of(sh.blocks());
  for (size_t b = 0; b < sh.blocks(); ++b)
    if (sh.kinds[b] == Kind::Point) param_of[b] = p.params[pi++];
  for (size_t i = 0; i < x.atoms.size(); ++i) {
    int b = sh.block_of[i];
    if (param_of[b]) {
      if (!(x.atoms[i] == *param_of[b])) return false;
    } else if (std::find(p.params.begin(), p.params.end(), x.atoms[i]) != p.params.end()) {
      return false;
    }
    for (size_t k = 0; k < x.atoms.size(); ++k)
      if ((sh.block_of[i] == sh.block_of[k]) != (x.atoms[i] == x.atoms[k])) return false;
  }
  return true;
}

inline Support random_support(Rng& rng, Theory th, size_t max_size) {
  size_t n = rng() % (max_size + 1);
  std::vector<Atom> atoms;
  for (size_t i = 0; i < n; ++i) atoms.push_back(th == Theory::Eq ? A(static_cast<long>(rng() % 6)) : Q(static_cast<long>(rng() % 9) - 4, 1 + rng() % 2));
  return Support(atoms);
}

// A random union of orbits of tagged powers over the support.
inline DefSet random_set(Rng& rng, Theory th, const Support& s, std::vector<std::pair<std::string, size_t>> tags, double keep = 0.5) {
  std::vector<TaggedCell> cells;
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& [tag, n] : tags)
    for (const auto& c : cells::all(th, n, s))
      if (u(rng) < keep) cells.push_back({tag, c});
  return DefSet(th, s, std::move(cells));
}

inline Rational random_rational(Rng& rng) {
  Rational r(static_cast<long>(rng() % 11) - 5, static_cast<long>(1 + rng() % 4));
  r.canonicalize();
  return r;
}

inline ScalarFun random_scalarfun(Rng& rng, const DefSet& domain, const Support& extra) {
  Support s = domain.support().joined(extra);
  std::map<TaggedCell, Rational> values;
  return ScalarFun::from_rule(domain, s, [&](const TaggedCell& c, const std::vector<Atom>&) {
    auto it = values.find(c);
    if (it == values.end()) it = values.emplace(c, random_rational(rng)).first;
    return it->second;
  });
}

// Random measure on `base` built from types concentrated on random cells.
inline Measure random_measure(Rng& rng, const DefSet& base, size_t max_atoms) {
  std::vector<TaggedTuple> types;
  DefSet c = compactify(base);
  std::vector<Atom> pool = pool_for(base.theory(), c.support(), 2);
  auto encoded = materialize(c, Truncation{base.theory(), pool});
  std::shuffle(encoded.begin(), encoded.end(), rng);
  size_t n = 1 + rng() % std::min(max_atoms, encoded.size());
  std::vector<long> w;
  long total = 0;
  for (size_t i = 0; i < n; ++i) total += w.emplace_back(1 + static_cast<long>(rng() % 5));
  WeightedTypes atoms;
  for (size_t i = 0; i < n; ++i) {
    Rational r(w[i], total);
    r.canonicalize();
    atoms.emplace_back(TypeDesc::decode(encoded[i]), r);
  }
  return Measure(base, atoms);
}

}  // namespace testkit

namespace testkit {

// Random definable function: per domain cell, each output coordinate copies
// an input coordinate or a support constant.
inline DefFun random_fun(Rng& rng, const DefSet& domain, const DefSet& codomain, const std::string& out_tag, size_t out_arity,
                         const Support& support) {
  std::map<TaggedCell, std::vector<int>> choice;
  return DefFun::from_rule(domain, codomain, support, [&](const TaggedCell& c, const std::vector<Atom>& x) {
    auto it = choice.find(c);
    if (it == choice.end()) {
      std::vector<int> pick;
      for (size_t i = 0; i < out_arity; ++i) {
        size_t options = x.size() + support.size();
        pick.push_back(options ? static_cast<int>(rng() % options) : 0);
      }
      it = choice.emplace(c, pick).first;
    }
    TaggedTuple y{out_tag, {}};
    for (int k : it->second) y.atoms.push_back(k < static_cast<int>(x.size()) ? x[k] : support[k - x.size()]);
    return y;
  });
}

inline std::vector<TypeDesc> types_of(const DefSet& compactified, const std::vector<Atom>& pool) {
  std::vector<TypeDesc> out;
  for (const auto& e : materialize(compactified, Truncation{compactified.theory(), pool})) out.push_back(TypeDesc::decode(e));
  return out;
}

}  // namespace testkit

namespace testkit {

// Row-reduction rank over the rationals, independent of the library solver.
inline size_t naive_rank(std::vector<std::vector<Rational>> m) {
  size_t rank = 0;
  size_t cols = m.empty() ? 0 : m[0].size();
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Truncated hyperrectangle on one order pattern, read straight off the definition.
inline bool naive_rect(const OrbitRect& r, const TaggedTuple& x) {
  if (x.tag != r.tag || x.atoms.size() != r.pattern.size()) return false;
  std::vector<Atom> distinct = x.atoms;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (size_t i = 0; i < x.atoms.size(); ++i)
    if (static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), x.atoms[i]) - distinct.begin()) != r.pattern[i]) return false;
  if (distinct.size() != r.rect.arity()) return false;
  for (size_t i = 0; i < distinct.size(); ++i) {
    const auto& b = r.rect.bounds[i];
    if (r.rect.strict[i]) {
      if (b && !(distinct[i] < *b)) return false;
    } else if (!b || !(distinct[i] == *b)) {
      return false;
    }
  }
  return true;
}

inline int naive_basis(const BasisElement& b, const TaggedTuple& x) {
  if (const auto* p = std::get_if<TypeDesc>(&b)) return naive_isolates(*p, x);
  return naive_rect(std::get<OrbitRect>(b), x);
}

inline Rational naive_expansion(const BasisExpansion& e, const TaggedTuple& x) {
  Rational sum = 0;
  for (const auto& [b, c] : e.terms) sum += naive_basis(b, x) * c;
  return sum;
}

}  // namespace testkit
