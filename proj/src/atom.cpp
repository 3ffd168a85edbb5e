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

#include "atomcompact/atom.hpp"

#include <algorithm>
#include <cctype>

#include "atomcompact/error.hpp"

namespace atomcompact {

std::string_view theory_name(Theory theory) { return theory == Theory::Eq ? "eq" : "dlo"; }

Theory parse_theory(std::string_view text) {
  if (text == "eq" || text == "EQ") return Theory::Eq;
  if (text == "dlo" || text == "DLO") return Theory::Dlo;
  if (text == "graph" || text == "random-graph")
    fail(ErrorCode::UnsupportedTheory,
         "random-graph atoms are not supported: their types are not determined by finitely many "
         "parameters in the way this library requires");
  fail(ErrorCode::UnsupportedTheory, "unknown atom theory '" + std::string(text) + "'");
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.find_first_of("+-") != std::string::npos)
    fail(ErrorCode::InvalidArgument, "not a rational number: '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Rational value;
  value.get_num() = mpz_class(num, 10);
  value.get_den() = mpz_class(den, 10);
  if (value.get_den() == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + s + "'");
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

Atom Atom::parse(std::string_view text, Theory theory) {
  Atom atom(parse_rational(text));
  if (theory == Theory::Eq && atom.value_.get_den() != 1)
    fail(ErrorCode::TheoryMismatch, "EQ atoms are integer names, got '" + std::string(text) + "'");
  return atom;
}

Support::Support(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

std::optional<size_t> Support::index_of(const Atom& atom) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end() || *it != atom) return std::nullopt;
  return static_cast<size_t>(it - atoms_.begin());
}

bool Support::includes(const Support& other) const {
  return std::includes(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end());
}

Support Support::joined(const Support& other) const {
  std::vector<Atom> all(atoms_);
  all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
  return Support(std::move(all));
}

Support Support::with(std::span<const Atom> extra) const {
  std::vector<Atom> all(atoms_);
  all.insert(all.end(), extra.begin(), extra.end());
  return Support(std::move(all));
}

std::string Support::str() const {
  std::string out = "{";
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += ",";
    out += atoms_[i].str();
  }
  return out + "}";
}

}  // namespace atomcompact
