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

#include <doctest.h>

#include "support.hpp"

using namespace testkit;

namespace {

// EQ oracle: a cell with b blocks yields 2^b types, one per choice of
// Point/Fresh per block, with rank = number of Fresh blocks.
std::vector<size_t> eq_rank_oracle(const DefSet& s) {
  std::vector<size_t> counts(1, 0);
  for (const auto& c : s.cells()) {
    std::set<int> blocks;
    for (const auto& co : c.cell.coords)
      if (co.slot == kBlockSlot) blocks.insert(co.rank);
    size_t b = blocks.size();
    if (counts.size() < b + 1) counts.resize(b + 1, 0);
    size_t binom = 1;
    for (size_t r = 0; r <= b; ++r) {
      counts[r] += binom;
      binom = binom * (b - r) / (r + 1);
    }
  }
  return counts;
}

DefSet strata_from(const std::vector<DefSet>& strata, size_t from, const DefSet& like) {
  DefSet out(like.theory(), like.support());
  for (size_t r = from; r < strata.size(); ++r) out = set_union(out, strata[r]);
  return out;
}

}  // namespace

TEST_SUITE("compactification") {

TEST_CASE("compactify of the atoms has one non-principal type") {
  DefSet c = compactify(atoms_set());
  CHECK(rank_counts(c) == std::vector<size_t>{1, 1});
  CHECK(orbit_summary(c) == "orbits: principal=1, rank1=1");
  CHECK(c.member({"type:eq:a[0F]", {}}));
  CHECK(c.member({"type:eq:a[0P]", {A(7)}}));
}

TEST_CASE("compactify of distinct pairs: 2N+1 non-principal types") {
  DefSet d2 = set_doc(R"({"theory":"eq","support":[],"cells":[{"tag":"p","arity":2,"assign":["block:0","block:1"]}]})");
  DefSet c = compactify(d2);
  CHECK(rank_counts(c) == std::vector<size_t>{1, 2, 1});
  CHECK(c.member({"type:eq:p[0F|1P]", {A(4)}}));
  CHECK(c.member({"type:eq:p[0P|1F]", {A(4)}}));
  CHECK(c.member({"type:eq:p[0F|1F]", {}}));
  CHECK(!c.member({"type:eq:p[0F|0F]", {}}));
  // On a pool of N atoms the non-principal part has 2N+1 elements.
  for (long n = 1; n <= 5; ++n) {
    std::vector<Atom> pool;
    for (long i = 0; i < n; ++i) pool.push_back(A(i));
    size_t nonprincipal = 0;
    for (const auto& p : types_of(c, pool)) nonprincipal += !p.is_principal();
    CHECK(nonprincipal == static_cast<size_t>(2 * n + 1));
  }
}

TEST_CASE("compactify of Q is Q + Q + Q + 2") {
  DefSet c = compactify(atoms_set(Theory::Dlo, "q"));
  size_t parameterized = 0, fixed = 0;
  for (const auto& cell : c.cells()) (cell.cell.arity() == 1 ? parameterized : fixed) += 1;
  CHECK(parameterized == 3);
  CHECK(fixed == 2);
  CHECK(c.member({"type:dlo:q[0L]", {Q(1, 2)}}));
  CHECK(c.member({"type:dlo:q[0-]", {}}));
  CHECK(c.member({"type:dlo:q[0+]", {}}));
}

TEST_CASE("compactify of the empty set") { CHECK(compactify(DefSet(Theory::Eq, {})).empty()); }

TEST_CASE("EQ rank counts match the block oracle") {
  Rng rng(17);
  for (int round = 0; round < 40; ++round) {
    DefSet s = random_set(rng, Theory::Eq, random_support(rng, Theory::Eq, 2), {{"a", 1}, {"b", 2}, {"c", 3}}, 0.4);
    auto expect = eq_rank_oracle(s);
    auto got = rank_counts(compactify(s));
    while (expect.size() > 1 && expect.back() == 0) expect.pop_back();
    while (got.size() > 1 && got.back() == 0) got.pop_back();
    CHECK(got == expect);
  }
}

TEST_CASE("DLO unary compactifications match the interval oracle") {
  Rng rng(19);
  for (int round = 0; round < 30; ++round) {
    DefSet s = random_set(rng, Theory::Dlo, random_support(rng, Theory::Dlo, 3), {{"q", 1}});
    size_t intervals = 0, points = 0;
    for (const auto& c : s.cells()) (c.cell.coords[0].slot % 2 == 0 ? intervals : points) += 1;
    auto counts = rank_counts(compactify(s));
    counts.resize(2, 0);
    CHECK(counts[0] == intervals + points);
    CHECK(counts[1] == 4 * intervals);
  }
}

TEST_CASE("type membership examples") {
  TypeDesc fresh = TypeDesc::decode({"type:eq:a[0F]", {}});
  DefSet a = atoms_set();
  DefSet one_two = set_doc(R"({"theory":"eq","support":["1","2"],"cells":[
      {"tag":"a","arity":1,"assign":["const:1"]},{"tag":"a","arity":1,"assign":["const:2"]}]})");
  CHECK(type_member(fresh, set_difference(a, one_two)));
  CHECK(!type_member(fresh, one_two));
  TypeDesc right0 = TypeDesc::decode({"type:dlo:q[0R]", {Q(0)}});
  DefSet unit = set_doc(R"({"theory":"dlo","support":["0","1"],"cells":[{"tag":"q","arity":1,"assign":["interval:1"]}]})");
  DefSet beyond = set_doc(R"({"theory":"dlo","support":["1","2"],"cells":[{"tag":"q","arity":1,"assign":["interval:1"]}]})");
  CHECK(type_member(right0, unit));
  CHECK(!type_member(right0, beyond));
}

TEST_CASE("type membership agrees with concrete witnesses") {
  Rng rng(23);
  for (int round = 0; round < 60; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    std::vector<std::pair<std::string, size_t>> tags = {{"a", 1}, {"b", 2}};
    DefSet amb = set_union(power(th, "a", 1), power(th, "b", 2));
    DefSet d = random_set(rng, th, random_support(rng, th, 2), tags);
    auto types = types_of(compactify(amb), pool_for(th, d.support(), 1));
    for (size_t k = 0; k < 15; ++k) {
      const TypeDesc& p = types[rng() % types.size()];
      CHECK_MESSAGE(type_member(p, d) == naive_member(d, concretize(p, d.support())), p.str(), " in ", d.str());
    }
  }
}

TEST_CASE("infinite sets have non-principal types") {
  Rng rng(29);
  for (int round = 0; round < 20; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    DefSet s = random_set(rng, th, random_support(rng, th, 2), {{"a", 1}, {"b", 2}});
    auto counts = rank_counts(compactify(s));
    size_t nonprincipal = 0;
    for (size_t r = 1; r < counts.size(); ++r) nonprincipal += counts[r];
    CHECK((nonprincipal > 0) == !s.cardinality().has_value());
  }
}

TEST_CASE("EQ parameter bound") {
  DefSet c = compactify(set_union(power(Theory::Eq, "a", 1), power(Theory::Eq, "b", 3, S({1, 2}))));
  for (const auto& cell : c.cells()) CHECK(cell.cell.arity() <= TypeShape::decode(cell.tag).arity());
}

TEST_CASE("coproducts are preserved") {
  Rng rng(31);
  for (int round = 0; round < 50; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    DefSet s = random_set(rng, th, random_support(rng, th, 2), {{"a", 1}, {"b", 2}});
    DefSet t = random_set(rng, th, random_support(rng, th, 2), {{"c", 1}, {"d", 2}});
    CHECK(same_set(compactify(coproduct(s, t)), coproduct(compactify(s), compactify(t))));
  }
}

TEST_CASE("pushforward examples") {
  DefSet a = atoms_set();
  DefSet a2 = power(Theory::Eq, "p", 2);
  DefFun first = DefFun::from_rule(a2, a, {}, [](const TaggedCell&, const std::vector<Atom>& x) { return TaggedTuple{"a", {x[0]}}; });
  CHECK(pushforward(first, TypeDesc::decode({"type:eq:p[0F|1F]", {}})) == TypeDesc::decode({"type:eq:a[0F]", {}}));
  DefFun swap = DefFun::from_rule(a2, a2, {}, [](const TaggedCell&, const std::vector<Atom>& x) { return TaggedTuple{"p", {x[1], x[0]}}; });
  CHECK(pushforward(swap, TypeDesc::decode({"type:eq:p[0P|1F]", {A(3)}})) == TypeDesc::decode({"type:eq:p[0F|1P]", {A(3)}}));
  TypeDesc p = TypeDesc::decode({"type:eq:p[0F|0F]", {}});
  CHECK(pushforward(DefFun::identity(a2), p) == p);
}

TEST_CASE("pushforward contract and functoriality") {
  Rng rng(37);
  size_t checked = 0;
  for (int round = 0; round < 40; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    Support fs = random_support(rng, th, 2);
    DefSet dom = set_union(power(th, "a", 1), power(th, "b", 2));
    DefSet mid = power(th, "c", 2), cod = power(th, "e", 1);
    DefFun f = random_fun(rng, dom, mid, "c", 2, fs);
    DefFun g = random_fun(rng, mid, cod, "e", 1, random_support(rng, th, 1));
    auto types = types_of(compactify(dom), pool_for(th, fs, 1));
    for (int k = 0; k < 5; ++k) {
      const TypeDesc& p = types[rng() % types.size()];
      DefSet d = random_set(rng, th, random_support(rng, th, 2), {{"c", 2}});
      TypeDesc fp = pushforward(f, p);
      CHECK(type_member(fp, d) == type_member(p, preimage(f, d)));
      CHECK(pushforward(compose(g, f), p) == pushforward(g, fp));
      CHECK(pushforward(DefFun::identity(dom), p) == p);
      ++checked;
    }
  }
  CHECK(checked == 200);
}

TEST_CASE("derivative of the atoms") {
  DefSet a = atoms_set();
  DefSet c = compactify(a);
  DefSet d1 = derivative(c, a);
  CHECK(same_set(d1, set_doc(R"({"theory":"eq","support":[],"cells":[{"tag":"type:eq:a[0F]","arity":0,"assign":[]}]})")));
  CHECK(derivative(d1, a).empty());
}

TEST_CASE("derivative of finite sets is empty") {
  DefSet pts = set_doc(R"({"theory":"eq","support":["1","2"],"cells":[
      {"tag":"a","arity":1,"assign":["const:1"]},{"tag":"a","arity":1,"assign":["const:2"]}]})");
  CHECK(derivative(compactify(pts), pts).empty());
}

TEST_CASE("stratify A^2") {
  auto strata = rank_stratify(power(Theory::Eq, "p", 2));
  REQUIRE(strata.size() == 3);
  CHECK(strata[0].orbit_count() == 2);
  CHECK(strata[1].orbit_count() == 3);
  CHECK(strata[2].orbit_count() == 1);
}

TEST_CASE("derivative chain equals the rank filtration") {
  Rng rng(41);
  for (int round = 0; round < 15; ++round) {
    DefSet s = random_set(rng, Theory::Eq, random_support(rng, Theory::Eq, 2), {{"a", 1}, {"b", 2}, {"c", 3}}, 0.3);
    auto strata = rank_stratify(s);
    DefSet z = compactify(s);
    size_t steps = 0;
    while (!z.empty()) {
      CHECK(same_set(z, strata_from(strata, steps, z)));
      z = derivative(z, s);
      ++steps;
      REQUIRE(steps <= 4);
    }
  }
}

TEST_CASE("derivative rejects sets outside the compactification") {
  try {
    derivative(atoms_set(), atoms_set());
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotASubsetOfCompactification);
  }
}

TEST_CASE("isolating sets") {
  TypeDesc fresh = TypeDesc::decode({"type:eq:a[0F]", {}});
  CHECK(same_set(isolating_set(fresh), atoms_set()));
  TypeDesc pt = TypeDesc::decode({"type:eq:a[0P]", {A(4)}});
  DefSet four = set_doc(R"({"theory":"eq","support":["4"],"cells":[{"tag":"a","arity":1,"assign":["const:4"]}]})");
  CHECK(same_set(isolating_set(pt), four));
  TypeDesc mixed = TypeDesc::decode({"type:eq:p[0P|1F]", {A(3)}});
  DefSet row = set_doc(R"({"theory":"eq","support":["3"],"cells":[{"tag":"p","arity":2,"assign":["const:3","block:0"]}]})");
  CHECK(same_set(isolating_set(mixed), row));
  try {
    isolating_set(TypeDesc::decode({"type:dlo:q[0R]", {Q(0)}}));
    FAIL("DLO accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedTheory);
  }
}

TEST_CASE("isolating sets isolate and are equivariant") {
  DefSet amb = set_union(power(Theory::Eq, "a", 1), power(Theory::Eq, "p", 2));
  std::vector<Atom> pool = {A(1), A(2), A(3)};
  auto types = types_of(compactify(amb), pool);
  auto points = naive_points(amb, pool_for(Theory::Eq, S({1, 2, 3}), 2));
  for (const auto& p : types) {
    DefSet lam = isolating_set(p);
    CHECK(type_member(p, lam));
    for (const auto& q : types)
      if (!(q == p) && q.rank() >= p.rank()) CHECK_MESSAGE(!type_member(q, lam), q.str(), " in lambda of ", p.str());
    for (const auto& x : points) CHECK(isolates(p, x) == naive_isolates(p, x));
    // Renaming 1 <-> 2 <-> 3 cyclically.
    auto rename = [](const Atom& a) { return a == A(1) ? A(2) : a == A(2) ? A(3) : a == A(3) ? A(1) : a; };
    TypeDesc moved = p;
    for (auto& a : moved.params) a = rename(a);
    DefSet moved_lam = isolating_set(moved);
    for (const auto& x : points) {
      TaggedTuple y = x;
      for (auto& a : y.atoms) a = rename(a);
      CHECK(lam.member(x) == moved_lam.member(y));
    }
  }
}

TEST_CASE("valid DLO types are pairwise separated") {
  DefSet amb = set_union(power(Theory::Dlo, "a", 1), power(Theory::Dlo, "p", 2));
  auto types = types_of(compactify(amb), {Q(0), Q(1)});
  Support sep({Q(-1), Q(0), Q(1, 2), Q(1), Q(2)});
  std::vector<DefSet> cells;
  for (const auto& [tag, n] : amb.arities())
    for (const auto& c : cells::all(Theory::Dlo, n, sep)) cells.push_back(DefSet(Theory::Dlo, sep, {{tag, c}}));
  for (size_t i = 0; i < types.size(); ++i) {
    CHECK(is_valid(types[i]));
    for (size_t j = i + 1; j < types.size(); ++j) {
      bool separated = false;
      for (const auto& c : cells)
        if (type_member(types[i], c) != type_member(types[j], c)) {
          separated = true;
          break;
        }
      CHECK_MESSAGE(separated, types[i].str(), " vs ", types[j].str());
    }
  }
}

TEST_CASE("invalid DLO shapes are rejected") {
  CHECK(!is_valid(TypeDesc::decode({"type:dlo:p[0P|1P]", {Q(1), Q(0)}})));
  CHECK(!is_valid(TypeDesc::decode({"type:dlo:p[0P|1P]", {Q(1), Q(1)}})));
  CHECK(is_valid(TypeDesc::decode({"type:dlo:p[0P|1R]", {Q(1), Q(1)}})));
}

}
