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

#include <vector>

#include "atomcompact/types.hpp"

namespace atomcompact {

using WeightedTypes = std::vector<std::pair<TypeDesc, Rational>>;

/// A finitely additive probability measure on the definable subsets of
/// `base`, stored as a convex combination of types.
class Measure {
 public:
  Measure() = default;
  Measure(DefSet base, WeightedTypes atoms);

  const DefSet& base() const { return base_; }
  const WeightedTypes& atoms() const { return atoms_; }

  static Measure point_mass(const DefSet& base, const TaggedTuple& x);

 private:
  DefSet base_;
  WeightedTypes atoms_;
};

/// Sums weights of equal types, drops zeros and sorts.
WeightedTypes merge_types(WeightedTypes atoms);
bool same_measure(const Measure& a, const Measure& b);

Rational measure_eval(const Measure& mu, const DefSet& d);
Rational expectation(const Measure& mu, const ScalarFun& f);

enum class ProductOrder { LeftFirst, RightFirst };

/// LeftFirst integrates the left factor inside: its generic point is taken
/// generic over the right factor's.
TypeDesc product_type(const TypeDesc& left, const TypeDesc& right, ProductOrder order);
Measure product_measure(const Measure& p, const Measure& q, ProductOrder order);

struct WeightedTemplate {
  TypeTemplate type;
  Rational weight;

  friend bool operator==(const WeightedTemplate&, const WeightedTemplate&) = default;
};

/// A measure-valued definable map, piecewise on the orbits of its domain.
class Kernel {
 public:
  Kernel() = default;
  Kernel(Piecewise<std::vector<WeightedTemplate>> map, DefSet codomain);

  const DefSet& domain() const { return map_.domain(); }
  const DefSet& codomain() const { return codomain_; }
  const Support& support() const { return map_.support(); }
  Theory theory() const { return map_.theory(); }
  const Piecewise<std::vector<WeightedTemplate>>& map() const { return map_; }

  WeightedTypes at(const TaggedTuple& x) const;
  /// Value at a symbolic point; the output types are flattened.
  WeightedTypes at_generic(const std::string& tag, std::span<const SymAtom> x) const;

  static Kernel unit(const DefSet& x);
  static Kernel from_function(const DefFun& f);
  static Kernel from_rule(const DefSet& domain, const DefSet& codomain, const Support& support,
                          const std::function<WeightedTypes(const TaggedCell&, const std::vector<Atom>&)>& rule);

 private:
  Piecewise<std::vector<WeightedTemplate>> map_;
  DefSet codomain_;
};

Measure extend(const Kernel& g, const Measure& mu);
/// g after f.
Kernel kleisli_compose(const Kernel& f, const Kernel& g);
bool same_kernel(const Kernel& a, const Kernel& b);

}  // namespace atomcompact
