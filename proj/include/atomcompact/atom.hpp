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

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace atomcompact {

enum class Theory { Eq, Dlo };

std::string_view theory_name(Theory theory);
Theory parse_theory(std::string_view text);

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);

/// An atom of either supported structure. EQ atoms are integer names and are
/// only ever compared for equality; DLO atoms are rationals compared by order.
/// The value is always kept in lowest terms so equality is syntactic.
class Atom {
 public:
  Atom() = default;
  explicit Atom(long value) : value_(value) {}
  explicit Atom(Rational value) : value_(std::move(value)) { value_.canonicalize(); }

  const Rational& value() const { return value_; }
  std::string str() const { return format_rational(value_); }

  /// Parses "5" or "-1/3"; EQ atoms must be integers.
  static Atom parse(std::string_view text, Theory theory);

  friend bool operator==(const Atom& a, const Atom& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  Rational value_;
};

/// Finite, sorted, duplicate-free set of atoms.
class Support {
 public:
  Support() = default;
  explicit Support(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const Atom& operator[](size_t i) const { return atoms_[i]; }

  std::optional<size_t> index_of(const Atom& atom) const;
  bool contains(const Atom& atom) const { return index_of(atom).has_value(); }
  bool includes(const Support& other) const;
  Support joined(const Support& other) const;
  Support with(std::span<const Atom> extra) const;

  std::string str() const;

  friend bool operator==(const Support&, const Support&) = default;
  friend auto operator<=>(const Support& a, const Support& b) { return a.atoms_ <=> b.atoms_; }

 private:
  std::vector<Atom> atoms_;
};

}  // namespace atomcompact
