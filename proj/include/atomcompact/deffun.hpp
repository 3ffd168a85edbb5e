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

#include <optional>
#include <string>
#include <vector>

#include "atomcompact/piecewise.hpp"

namespace atomcompact {

/// An output coordinate: an input coordinate or a fixed atom.
struct Term {
  int input = -1;
  Atom constant;

  static Term in(int i) { return {i, Atom()}; }
  static Term cst(Atom a) { return {-1, std::move(a)}; }
  bool is_input() const { return input >= 0; }

  std::string str() const { return is_input() ? "in:" + std::to_string(input) : "const:" + constant.str(); }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

SymAtom evaluate(const Term& term, std::span<const SymAtom> input);
SymTuple evaluate(std::span<const Term> terms, std::span<const SymAtom> input);

/// Rewrites concrete outputs as terms: atoms of the support become constants,
/// other atoms must occur in the input. This is exact on a whole orbit
/// because definable closure is trivial over both theories.
std::vector<Term> symbolize(std::span<const Atom> output, std::span<const Atom> input, const Support& support);

std::vector<Atom> constants_of(std::span<const Term> terms);

struct FunOut {
  std::string tag;
  std::vector<Term> terms;

  friend bool operator==(const FunOut&, const FunOut&) = default;
};

class DefFun {
 public:
  DefFun() = default;
  DefFun(Piecewise<FunOut> map, DefSet codomain);

  const DefSet& domain() const { return map_.domain(); }
  const DefSet& codomain() const { return codomain_; }
  const Support& support() const { return map_.support(); }
  const Piecewise<FunOut>& map() const { return map_; }
  Theory theory() const { return map_.theory(); }

  TaggedTuple apply(const TaggedTuple& x) const;
  SymTagged apply_generic(const std::string& tag, std::span<const SymAtom> x) const;

  static DefFun from_rule(const DefSet& domain, const DefSet& codomain, const Support& support,
                          const std::function<TaggedTuple(const TaggedCell&, const std::vector<Atom>&)>& rule);
  static DefFun identity(const DefSet& s);

 private:
  Piecewise<FunOut> map_;
  DefSet codomain_;
};

/// g after f.
DefFun compose(const DefFun& g, const DefFun& f);
DefSet preimage(const DefFun& f, const DefSet& d);

class ScalarFun {
 public:
  ScalarFun() = default;
  explicit ScalarFun(const Piecewise<Rational>& map)
      : map_(map.map([](Rational r) {
          r.canonicalize();
          return r;
        })) {}

  const DefSet& domain() const { return map_.domain(); }
  const Support& support() const { return map_.support(); }
  const Piecewise<Rational>& map() const { return map_; }
  Theory theory() const { return map_.theory(); }

  Rational operator()(const TaggedTuple& x) const { return map_.at(x); }
  Rational operator()(const std::string& tag, std::span<const SymAtom> x) const { return map_.at(tag, x); }

  /// Drops support atoms the function does not depend on.
  ScalarFun normalized() const;

  static ScalarFun constant(const DefSet& domain, const Rational& value);
  static ScalarFun indicator(const DefSet& domain, const DefSet& subset);
  static ScalarFun from_rule(const DefSet& domain, const Support& support,
                             const std::function<Rational(const TaggedCell&, const std::vector<Atom>&)>& rule);

 private:
  Piecewise<Rational> map_;
};

bool same_function(const ScalarFun& f, const ScalarFun& g);

}  // namespace atomcompact
