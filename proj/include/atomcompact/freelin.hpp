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
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "atomcompact/types.hpp"

namespace atomcompact {

/// Finite formal combination of concrete elements; zero coefficients are never stored.
class FreeVec {
 public:
  FreeVec() = default;

  void add(const TaggedTuple& x, const Rational& c);
  Rational at(const TaggedTuple& x) const;
  const std::map<TaggedTuple, Rational>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  static FreeVec unit(const TaggedTuple& x) {
    FreeVec v;
    v.add(x, 1);
    return v;
  }

  friend bool operator==(const FreeVec&, const FreeVec&) = default;

 private:
  std::map<TaggedTuple, Rational> entries_;
};

/// Truncated hyperrectangle on strictly increasing m-tuples: coordinate i is
/// below bounds[i] when strict[i], and equal to it otherwise. An empty bound
/// stands for +inf and is only allowed on strict coordinates.
struct TruncRect {
  std::vector<bool> strict;
  std::vector<std::optional<Atom>> bounds;

  size_t arity() const { return strict.size(); }
  bool contains(std::span<const SymAtom> y) const;
  bool is_empty() const;
  std::string str() const;

  friend bool operator==(const TruncRect&, const TruncRect&) = default;
  friend auto operator<=>(const TruncRect&, const TruncRect&) = default;
};

/// A truncated hyperrectangle placed on one order pattern of one tag: x is
/// collapsed to its strictly increasing tuple of distinct values.
struct OrbitRect {
  std::string tag;
  std::vector<int> pattern;
  TruncRect rect;

  TaggedTuple encode() const;
  static OrbitRect decode(const TaggedTuple& encoded);
  static bool is_encoded(const std::string& tag);
  std::string str() const { return encode().str(); }

  friend bool operator==(const OrbitRect&, const OrbitRect&) = default;
  friend auto operator<=>(const OrbitRect&, const OrbitRect&) = default;
};

/// EQ basis elements are isolating sets of types; DLO ones are OrbitRects.
using BasisElement = std::variant<TypeDesc, OrbitRect>;

int eval_basis(const BasisElement& b, const std::string& tag, std::span<const SymAtom> x);
int eval_basis(const BasisElement& b, const TaggedTuple& x);
TaggedTuple encode_basis(const BasisElement& b);
BasisElement decode_basis(const TaggedTuple& encoded);

struct BasisExpansion {
  DefSet base;
  std::vector<std::pair<BasisElement, Rational>> terms;

  Rational eval(const std::string& tag, std::span<const SymAtom> x) const;
  Rational eval(const TaggedTuple& x) const;
  /// Largest support the expansion mentions, joined with the base support.
  Support support() const;
};

BasisExpansion decompose_eq(const ScalarFun& f);
BasisExpansion decompose_dlo(const ScalarFun& f);
BasisExpansion decompose(const ScalarFun& f);

struct RoundTrip {
  size_t generic_checked = 0;
  size_t generic_ok = 0;
  size_t samples = 0;
  size_t samples_ok = 0;
  bool exact() const { return generic_ok == generic_checked && samples_ok == samples; }
};

/// Compares f with its expansion on one witness of every orbit over the
/// joint support, and on `samples` random concrete points of the base.
RoundTrip verify_expansion(const BasisExpansion& e, const ScalarFun& f, size_t samples, uint64_t seed);

/// The definable family of DLO basis elements for functions on `base`,
/// as a DefSet of encoded OrbitRects over base.support().
DefSet dlo_basis(const DefSet& base);

/// Weak-order ranks of x, i.e. its orbit over the empty support.
std::vector<int> order_pattern(std::span<const SymAtom> x);

/// Subset of compactify(x × y) spanning Lin(F(x), F(y)) (EQ only).
DefSet hom_basis(const DefSet& x, const DefSet& y);

/// A linear map F(source) -> F(target) as a combination of hom-basis elements.
struct LinMap {
  DefSet source;
  DefSet target;
  std::vector<std::pair<TypeDesc, Rational>> terms;
};

/// The image of e_x under the isolating set of b read as a 0/1 matrix.
FreeVec hom_apply(const TypeDesc& b, const DefSet& x, const DefSet& y, const FreeVec& v);
FreeVec apply(const LinMap& m, const FreeVec& v);
/// `second` after `first`.
LinMap compose(const LinMap& second, const LinMap& first);
LinMap hom_compose(const TypeDesc& b2, const TypeDesc& b1, const DefSet& x, const DefSet& y, const DefSet& z);
LinMap identity_map(const DefSet& x);
/// Decomposes the matrix k(x, y) of a linear map into the hom basis.
LinMap lin_from_kernel(const DefSet& x, const DefSet& y, const ScalarFun& kernel);
bool same_map(const LinMap& a, const LinMap& b);

/// Splits "(left,right)" into tags of x and y.
std::pair<std::string, std::string> split_pair_tag(const std::string& tag, const DefSet& x, const DefSet& y);

}  // namespace atomcompact
