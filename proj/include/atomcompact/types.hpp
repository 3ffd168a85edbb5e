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

#include <string>
#include <vector>

#include "atomcompact/deffun.hpp"

namespace atomcompact {

/// Per-block component of a type. EQ uses Point and Fresh; DLO uses Point,
/// Left/Right (infinitesimally below/above a parameter) and the two ends.
enum class Kind { Point, Fresh, Left, Right, MinusInf, PlusInf };

char kind_char(Kind kind);
bool kind_has_param(Kind kind);

/// Everything about a type except its parameters: the equality (EQ) or
/// ordered (DLO) partition of the coordinates and one Kind per block.
struct TypeShape {
  Theory theory = Theory::Eq;
  std::string tag;
  std::vector<int> block_of;
  std::vector<Kind> kinds;

  size_t arity() const { return block_of.size(); }
  size_t blocks() const { return kinds.size(); }
  size_t rank() const;
  size_t param_count() const;

  /// "type:eq:<tag>[0P|1F]" or "type:dlo:<tag>[0L|1R]": block and kind per coordinate.
  std::string encode() const;
  static TypeShape decode(const std::string& text);
  static bool is_encoded(const std::string& text);

  friend bool operator==(const TypeShape&, const TypeShape&) = default;
};

/// A definable type (ultrafilter) on a tagged power: a shape plus the
/// parameters of its Point/Left/Right blocks in block order.
struct TypeDesc {
  TypeShape shape;
  std::vector<Atom> params;

  size_t rank() const { return shape.rank(); }
  const std::string& tag() const { return shape.tag; }

  /// The element of the compactification encoding this type.
  TaggedTuple encode() const { return {shape.encode(), params}; }
  static TypeDesc decode(const TaggedTuple& encoded);

  static TypeDesc principal(Theory theory, const TaggedTuple& x);
  bool is_principal() const { return rank() == 0; }
  TaggedTuple point() const;

  std::string str() const;

  friend bool operator==(const TypeDesc& a, const TypeDesc& b) { return a.encode() == b.encode(); }
  friend bool operator<(const TypeDesc& a, const TypeDesc& b) { return a.encode() < b.encode(); }
};

/// A type whose parameters are terms over some input tuple.
struct TypeTemplate {
  TypeShape shape;
  std::vector<Term> params;

  friend bool operator==(const TypeTemplate&, const TypeTemplate&) = default;
};

bool is_valid(const TypeDesc& p);
void validate(const TypeDesc& p);

/// Symbolic generic point; infinitesimals and fresh atoms live at `level`.
/// Parameters may already be symbolic at smaller levels.
SymTuple generic_point(const TypeShape& shape, std::span<const SymAtom> params, int level);
SymTuple generic_point(const TypeDesc& p, int level = 1);

/// The type of a symbolic tuple over the atoms it mentions.
TypeDesc read_back(Theory theory, const std::string& tag, std::span<const SymAtom> values);

/// Evaluates a template at a symbolic input (level 1) and flattens the
/// resulting type of types into a single type.
TypeDesc flatten(const TypeTemplate& t, std::span<const SymAtom> input);

DefSet compactify(const DefSet& s);
bool type_member(const TypeDesc& p, const DefSet& s);
TypeDesc pushforward(const DefFun& f, const TypeDesc& p);

/// Limit points of a definable family of types inside compactify(ambient).
DefSet derivative(const DefSet& z, const DefSet& ambient);
std::vector<DefSet> rank_stratify(const DefSet& s);
/// Orbit counts of an encoded compactification, indexed by rank.
std::vector<size_t> rank_counts(const DefSet& compactified);
std::string orbit_summary(const DefSet& compactified);

/// The orbit of p's generic point over p's own parameters (EQ only).
DefSet isolating_set(const TypeDesc& p);

/// Membership of a concrete tuple in isolating_set(p).
bool isolates(const TypeDesc& p, const TaggedTuple& x);
bool isolates(const TypeDesc& p, const std::string& tag, std::span<const SymAtom> x);

}  // namespace atomcompact
