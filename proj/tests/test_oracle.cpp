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

#include <optional>

#include "support.hpp"

using namespace testkit;

namespace {

OrbitRect rect1(bool strict, std::optional<Atom> bound) { return {"q", {0}, {{strict}, {bound}}}; }

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("truncation-oracle") {

TEST_CASE("materialize matches enumeration") {
  Rng rng(107);
  for (int round = 0; round < 60; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    Support s = random_support(rng, th, 2);
    DefSet d = random_set(rng, th, s, {{"a", 1}, {"b", 2}});
    auto pool = pool_for(th, s, 2);
    auto got = materialize(d, Truncation{th, pool});
    CHECK(std::set<TaggedTuple>(got.begin(), got.end()) == naive_points(d, pool));
    CHECK(std::set<TaggedTuple>(got.begin(), got.end()).size() == got.size());
  }
  CHECK(materialize(power(Theory::Eq, "p", 2), Truncation::eq(4)).size() == 16);
  DefSet distinct = io::defset_from_json(io::parse(read_data("distinct-pairs.defset")));
  CHECK(materialize(distinct, Truncation::eq(4)).size() == 12);
  CHECK(materialize(DefSet(Theory::Eq, {}, {}), Truncation::eq(3)).empty());
}

TEST_CASE("materialize is monotone in the pool") {
  Rng rng(109);
  for (int round = 0; round < 30; ++round) {
    Support s = random_support(rng, Theory::Eq, 2);
    DefSet d = random_set(rng, Theory::Eq, s, {{"a", 1}, {"b", 2}});
    auto small = pool_for(Theory::Eq, s, 1);
    auto big = small;
    big.push_back(A(777));
    auto a = materialize(d, Truncation{Theory::Eq, small}), b = materialize(d, Truncation{Theory::Eq, big});
    std::set<TaggedTuple> sb(b.begin(), b.end());
    for (const auto& x : a) CHECK(sb.count(x));
    CHECK(a.size() <= b.size());
  }
}

TEST_CASE("pools must contain the parameters") {
  DefSet three = io::defset_from_json(io::parse(read_data("three.defset")));
  CHECK(code_of([&] { materialize(three, Truncation::eq(3)); }) == ErrorCode::PoolTooSmall);
  CHECK(code_of([&] { materialize(three, Truncation::dlo(S({3}), 1)); }) == ErrorCode::TheoryMismatch);
  std::vector<BasisElement> b{TypeDesc::principal(Theory::Eq, {"a", {A(9)}})};
  CHECK(code_of([&] { rank_of(b, atoms_set(), Truncation::eq(3)); }) == ErrorCode::PoolTooSmall);
  CHECK(code_of([&] { rank_of({ScalarFun::indicator(atoms_set(), three)}, atoms_set(), Truncation::eq(3)); }) ==
        ErrorCode::PoolTooSmall);
  Truncation covering = Truncation::covering(Theory::Eq, S({3, 8}), 2);
  CHECK(std::count(covering.pool.begin(), covering.pool.end(), A(3)) == 1);
  CHECK(std::count(covering.pool.begin(), covering.pool.end(), A(8)) == 1);
  CHECK(covering.pool.size() >= 4);
}

TEST_CASE("rank examples") {
  TypeDesc fresh = TypeDesc::decode({"type:eq:a[0F]", {}});
  TypeDesc at0 = TypeDesc::principal(Theory::Eq, {"a", {A(0)}});
  CHECK(rank_of({fresh, at0}, atoms_set(), Truncation::eq(3)) == 2);
  CHECK(rank_of({fresh, at0, at0}, atoms_set(), Truncation::eq(3)) == 2);
  CHECK(rank_of({at0, at0}, atoms_set(), Truncation::eq(3)) == 1);
  CHECK(rank_of(std::vector<BasisElement>{}, atoms_set(), Truncation::eq(3)) == 0);
  DefSet q = atoms_set(Theory::Dlo, "q");
  Truncation t{Theory::Dlo, {Q(-1), Q(0), Q(1)}};
  CHECK(rank_of({rect1(true, std::nullopt), rect1(false, Q(0)), rect1(true, Q(0))}, q, t) == 3);
  DefSet three = io::defset_from_json(io::parse(read_data("three.defset")));
  std::vector<ScalarFun> fs{ScalarFun::indicator(atoms_set(), three), ScalarFun::constant(atoms_set(), 1),
                            ScalarFun::constant(atoms_set(), 2)};
  CHECK(rank_of(fs, atoms_set(), Truncation::eq(4)) == 2);
}

TEST_CASE("rank agrees with row reduction") {
  Rng rng(113);
  for (int round = 0; round < 40; ++round) {
    Theory th = round % 2 ? Theory::Dlo : Theory::Eq;
    Support s = random_support(rng, th, 2);
    DefSet amb = power(th, "a", 1);
    auto pool = pool_for(th, s, 2);
    std::vector<BasisElement> elems;
    for (const auto& p : types_of(compactify(amb), std::vector<Atom>(s.atoms().begin(), s.atoms().end())))
      if (rng() % 2) elems.push_back(p);
    auto points = materialize(amb, Truncation{th, pool});
    std::vector<std::vector<Rational>> rows;
    for (const auto& b : elems) {
      std::vector<Rational> row;
      for (const auto& x : points) row.push_back(naive_isolates(std::get<TypeDesc>(b), x) ? 1 : 0);
      rows.push_back(row);
    }
    CHECK(rank_of(elems, points) == naive_rank(rows));
  }
}

TEST_CASE("independence pool size") {
  TypeDesc fresh = TypeDesc::decode({"type:eq:a[0F]", {}});
  TypeDesc at0 = TypeDesc::principal(Theory::Eq, {"a", {A(0)}});
  CHECK(independence_pool_size({fresh}) == 4);
  CHECK(independence_pool_size({at0}) == 3);
  CHECK(independence_pool_size({fresh, at0}) == 5);
  CHECK(independence_pool_size({}) == 2);
}

TEST_CASE("word sampling is seeded") {
  DefSet alphabet = alphabet_of(machine("erase"));
  Truncation t = Truncation::eq(3);
  auto a = sample_words(alphabet, t, 50, 5, 4), b = sample_words(alphabet, t, 50, 5, 4), c = sample_words(alphabet, t, 50, 6, 4);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& w : a) {
    CHECK(w.size() <= 4);
    for (const auto& l : w) CHECK(alphabet.member(l));
  }
  CHECK(sample_words(DefSet(Theory::Eq, {}, {}), t, 3, 1, 4) == std::vector<Word>(3));
}

TEST_CASE("differential runs agree on the shipped machines") {
  for (const char* name : {"erase", "repeat", "first-count", "repeats", "coin", "uniform-erase"}) {
    DifferentialReport r = differential_run(machine(name), Truncation::covering(Theory::Eq, S({3}), 3), 200, 1);
    CHECK(r.words == 200);
    CHECK(r.all_agree());
    CHECK(r.disagreements.empty());
  }
  auto bm = machine("below-max");
  DifferentialReport r = differential_run(bm, Truncation::dlo(Support{}, 3), 200, 1);
  CHECK(r.all_agree());
  CHECK(r.check == "determinize");
  auto det = determinize_ultra(std::get<UltraAutomaton>(machine("repeat")));
  DifferentialReport d = differential_run(det, Truncation::eq(4), 200, 2);
  CHECK(d.check == "table");
  CHECK(d.all_agree());
}

TEST_CASE("differential reports") {
  DifferentialReport r = differential_run(machine("coin"), Truncation::eq(2), 10, 42);
  CHECK(r.str() == "kind=prob check=as-weighted seed=42 pool={0,1} agreement=10/10");
  DifferentialReport none = differential_run(machine("coin"), Truncation::eq(2), 0, 42);
  CHECK(none.words == 0);
  CHECK(none.all_agree());
  CHECK(none.disagreements.empty());
}

}
