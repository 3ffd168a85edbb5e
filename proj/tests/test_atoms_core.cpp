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

TEST_SUITE("atoms-core") {

TEST_CASE("atoms parse per theory") {
  CHECK(Atom::parse("5", Theory::Eq) == A(5));
  CHECK(Atom::parse("-2/6", Theory::Dlo) == Q(-1, 3));
  CHECK(Atom::parse("-2/6", Theory::Dlo).str() == "-1/3");
  CHECK_THROWS_AS(Atom::parse("1/2", Theory::Eq), Error);
  CHECK_THROWS_AS(Atom::parse("x", Theory::Dlo), Error);
  CHECK(parse_theory("eq") == Theory::Eq);
  try {
    parse_theory("graph");
    FAIL("graph accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedTheory);
  }
}

TEST_CASE("support is sorted and duplicate free") {
  Support s({A(3), A(1), A(3)});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == A(1));
  CHECK(s.index_of(A(3)) == 1u);
  CHECK(!s.contains(A(2)));
  CHECK(s.joined(S({2})).size() == 3);
}

TEST_CASE("refine splits a fresh block on a new constant") {
  DefSet a = atoms_set();
  DefSet r = a.refine(S({5}));
  CHECK(r.orbit_count() == 2);
  CHECK(same_set(a, r));
  CHECK(a.refine(a.support()) == a);
}

TEST_CASE("refine splits a DLO interval") {
  DefSet unit = set_doc(R"({"theory":"dlo","support":["0","1"],"cells":[{"tag":"q","arity":1,"assign":["interval:1"]}]})");
  DefSet r = unit.refine(Support({Q(0), Q(1), Q(1, 2)}));
  CHECK(r.orbit_count() == 3);
  CHECK(r.member({"q", {Q(1, 2)}}));
  CHECK(r.member({"q", {Q(1, 3)}}));
  CHECK(!r.member({"q", {Q(1)}}));
}

TEST_CASE("product of A with itself has two orbits") {
  // Oracle: equality patterns of two coordinates are the partitions of a 2-set.
  DefSet a2 = set_product(atoms_set(), atoms_set());
  CHECK(a2.orbit_count() == 2);
  CHECK(power(Theory::Eq, "p", 2).orbit_count() == 2);
  CHECK(power(Theory::Eq, "p", 3).orbit_count() == 5);
  CHECK(power(Theory::Eq, "p", 4).orbit_count() == 15);
  // Ordered set partitions (Fubini numbers) for DLO.
  CHECK(power(Theory::Dlo, "p", 2).orbit_count() == 3);
  CHECK(power(Theory::Dlo, "p", 3).orbit_count() == 13);
}

TEST_CASE("complement inside an ambient") {
  DefSet off = set_doc(R"({"theory":"eq","support":[],"cells":[{"tag":"p","arity":2,"assign":["block:0","block:1"]}]})");
  DefSet a2 = power(Theory::Eq, "p", 2);
  DefSet diag = set_complement(off, &a2);
  REQUIRE(diag.orbit_count() == 1);
  CHECK(diag.member(T("p", {7, 7})));
  CHECK(!diag.member(T("p", {7, 8})));
  CHECK(!off.member(T("p", {3, 3})));
  try {
    set_complement(off, nullptr);
    FAIL("complement without ambient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbientMissing);
  }
}

TEST_CASE("intersection of cofinite sets") {
  DefSet a = atoms_set();
  DefSet one = set_doc(R"({"theory":"eq","support":["1"],"cells":[{"tag":"a","arity":1,"assign":["const:1"]}]})");
  DefSet two = set_doc(R"({"theory":"eq","support":["2"],"cells":[{"tag":"a","arity":1,"assign":["const:2"]}]})");
  DefSet both = set_intersect(set_difference(a, one), set_difference(a, two));
  REQUIRE(both.orbit_count() == 1);
  CHECK(both.support() == S({1, 2}));
  CHECK(!both.member(T("a", {1})));
  CHECK(both.member(T("a", {3})));
}

TEST_CASE("cardinality") {
  CHECK(!atoms_set().cardinality());
  DefSet pts = set_doc(R"({"theory":"eq","support":["1","2"],"cells":[
      {"tag":"a","arity":1,"assign":["const:1"]},{"tag":"a","arity":1,"assign":["const:2"]}]})");
  CHECK(pts.cardinality() == 2u);
  CHECK(DefSet(Theory::Eq, {}).cardinality() == 0u);
}

TEST_CASE("mismatches are reported") {
  DefSet eq = atoms_set();
  DefSet dlo = atoms_set(Theory::Dlo);
  try {
    set_union(eq, dlo);
    FAIL("mixed theories");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TheoryMismatch);
  }
  try {
    set_union(eq, power(Theory::Eq, "a", 2));
    FAIL("arity clash");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }
  CHECK_THROWS_AS(eq.member(T("a", {1, 2})), Error);
}

TEST_CASE("cells tile A^n on small pools") {
  for (Theory th : {Theory::Eq, Theory::Dlo}) {
    for (const Support& s : {S({}), S({1}), S({1, 2})}) {
      std::vector<Atom> pool = pool_for(th, s, 2);
      for (size_t n = 1; n <= 3; ++n) {
        auto orbits = cells::all(th, n, s);
        std::vector<Atom> cur;
        size_t total = 0;
        tuples(pool, n, cur, [&](const std::vector<Atom>& x) {
          size_t hits = 0;
          for (const auto& c : orbits) hits += naive_in_cell(th, c, s, x);
          CHECK(hits == 1);
          ++total;
        });
        CHECK(total > 0);
      }
    }
  }
}

TEST_CASE("boolean operations commute with materialization") {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    Support s1 = random_support(rng, th, 2), s2 = random_support(rng, th, 2);
    std::vector<std::pair<std::string, size_t>> tags = {{"a", 1}, {"b", 2}};
    DefSet s = random_set(rng, th, s1, tags), t = random_set(rng, th, s2, tags);
    DefSet amb = set_union(power(th, "a", 1), power(th, "b", 2));
    std::vector<Atom> pool = pool_for(th, s1.joined(s2), 2);
    auto ps = naive_points(s, pool), pt = naive_points(t, pool), pa = naive_points(amb, pool);
    std::set<TaggedTuple> u, i, d, c;
    std::set_union(ps.begin(), ps.end(), pt.begin(), pt.end(), std::inserter(u, u.end()));
    std::set_intersection(ps.begin(), ps.end(), pt.begin(), pt.end(), std::inserter(i, i.end()));
    std::set_difference(ps.begin(), ps.end(), pt.begin(), pt.end(), std::inserter(d, d.end()));
    std::set_difference(pa.begin(), pa.end(), ps.begin(), ps.end(), std::inserter(c, c.end()));
    CHECK(naive_points(set_union(s, t), pool) == u);
    CHECK(naive_points(set_intersect(s, t), pool) == i);
    CHECK(naive_points(set_difference(s, t), pool) == d);
    CHECK(naive_points(set_complement(s, &amb), pool) == c);
    CHECK(same_set(set_complement(set_complement(s, &amb), &amb), s));
    CHECK(set_intersect(s, set_complement(s, &amb)).empty());
    // Member agrees with the direct cell reading.
    for (const auto& x : pa) CHECK(s.member(x) == ps.count(x));
  }
}

TEST_CASE("product commutes with materialization") {
  Rng rng(5);
  for (int round = 0; round < 20; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    Support s1 = random_support(rng, th, 1), s2 = random_support(rng, th, 1);
    DefSet s = random_set(rng, th, s1, {{"a", 1}}), t = random_set(rng, th, s2, {{"b", 1}});
    DefSet p = set_product(s, t);
    std::vector<Atom> pool = pool_for(th, s1.joined(s2), 2);
    for (const auto& x : naive_points(s, pool))
      for (const auto& y : naive_points(t, pool)) CHECK(naive_member(p, {product_tag(x.tag, y.tag), {x.atoms[0], y.atoms[0]}}));
    CHECK(naive_points(p, pool).size() == naive_points(s, pool).size() * naive_points(t, pool).size());
  }
}

TEST_CASE("refine preserves denotation on sampled tuples") {
  Rng rng(3);
  for (int round = 0; round < 10; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    DefSet s = random_set(rng, th, random_support(rng, th, 2), {{"a", 1}, {"b", 2}});
    Support bigger = s.support().joined(random_support(rng, th, 3));
    DefSet r = s.refine(bigger);
    std::vector<Atom> pool = pool_for(th, bigger, 2);
    size_t sampled = 0;
    for (const auto& [tag, n] : s.arities()) {
      std::vector<Atom> cur;
      tuples(pool, n, cur, [&](const std::vector<Atom>& x) {
        if (sampled++ > 1000) return;
        TaggedTuple t{tag, x};
        CHECK(r.member(t) == s.member(t));
      });
    }
  }
}

TEST_CASE("definable functions") {
  DefSet a2 = power(Theory::Eq, "p", 2);
  DefFun swap = DefFun::from_rule(a2, a2, {}, [](const TaggedCell&, const std::vector<Atom>& x) {
    return TaggedTuple{"p", {x[1], x[0]}};
  });
  CHECK(swap.apply(T("p", {1, 2})) == T("p", {2, 1}));
  CHECK(compose(swap, swap).apply(T("p", {4, 9})) == T("p", {4, 9}));

  DefSet a = atoms_set();
  DefFun f = DefFun::from_rule(a2, a, S({0}), [](const TaggedCell&, const std::vector<Atom>& x) {
    return x[0] == x[1] ? TaggedTuple{"a", {A(0)}} : TaggedTuple{"a", {x[0]}};
  });
  CHECK(f.apply(T("p", {4, 4})) == T("a", {0}));
  CHECK(f.apply(T("p", {4, 5})) == T("a", {4}));
  CHECK_THROWS_AS(f.apply(T("q", {4})), Error);

  // Preimage of {0} under f is the diagonal plus the pairs starting with 0.
  DefSet zero = set_doc(R"({"theory":"eq","support":["0"],"cells":[{"tag":"a","arity":1,"assign":["const:0"]}]})");
  DefSet pre = preimage(f, zero);
  std::vector<Atom> pool = pool_for(Theory::Eq, S({0}), 3);
  for (const auto& x : naive_points(a2, pool)) CHECK(pre.member(x) == (f.apply(x) == T("a", {0})));
}

TEST_CASE("ill-defined functions are rejected") {
  DefSet a = atoms_set();
  // A function with an output atom that is neither an input nor a constant.
  CHECK_THROWS_AS(DefFun::from_rule(a, a, {}, [](const TaggedCell&, const std::vector<Atom>& x) {
                    return TaggedTuple{"a", {Atom(x[0].value() + 1)}};
                  }),
                  Error);
}

TEST_CASE("scalar functions") {
  DefSet a = atoms_set();
  DefSet three = set_doc(R"({"theory":"eq","support":["3"],"cells":[{"tag":"a","arity":1,"assign":["const:3"]}]})");
  ScalarFun ind = ScalarFun::indicator(a, three);
  CHECK(ind(T("a", {3})) == 1);
  CHECK(ind(T("a", {4})) == 0);
  CHECK(same_function(ScalarFun::constant(a, 2), ScalarFun::constant(a, 2).normalized()));
  CHECK(!same_function(ind, ScalarFun::constant(a, 0)));
}

}
