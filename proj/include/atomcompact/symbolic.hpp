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

#include <compare>
#include <string>
#include <vector>

#include "atomcompact/atom.hpp"

namespace atomcompact {

/// One infinitesimal summand. Level 1 infinitesimals dominate level 2 ones;
/// inside a level a larger `mag` is a larger infinitesimal.
struct Infinitesimal {
  int sign = 1;
  int level = 1;
  long mag = 0;

  friend bool operator==(const Infinitesimal&, const Infinitesimal&) = default;
  friend auto operator<=>(const Infinitesimal&, const Infinitesimal&) = default;
};

enum class BaseKind { MinusInf, Finite, PlusInf };

/// A symbolic atom: a base (finite rational or an infinite end) plus a sum of
/// infinitesimals listed from largest to smallest. EQ fresh atoms reuse the
/// same shape: base 0 with a single term whose (level, mag) names the atom.
/// Concrete atoms are finite bases without terms.
struct SymAtom {
  BaseKind kind = BaseKind::Finite;
  Rational base;
  std::vector<Infinitesimal> terms;

  SymAtom() = default;
  SymAtom(const Atom& atom) : base(atom.value()) {}  // NOLINT(google-explicit-constructor)

  static SymAtom fresh(int level, long id);

  bool is_concrete() const { return kind == BaseKind::Finite && terms.empty(); }
  Atom concrete() const;
  Atom base_atom() const { return Atom(base); }

  /// Returns this value shifted by one more (smaller) infinitesimal.
  SymAtom plus(Infinitesimal term) const;

  std::string str() const;

  friend bool operator==(const SymAtom& a, const SymAtom& b) {
    return a.kind == b.kind && a.base == b.base && a.terms == b.terms;
  }
};

/// Order comparison for DLO symbolic atoms.
std::strong_ordering compare(const SymAtom& a, const SymAtom& b);

/// Total structural order, used only for deduplicating EQ values.
bool structural_less(const SymAtom& a, const SymAtom& b);

using SymTuple = std::vector<SymAtom>;

SymTuple lift(std::span<const Atom> atoms);

}  // namespace atomcompact
