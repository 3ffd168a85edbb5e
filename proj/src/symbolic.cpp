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

#include "atomcompact/symbolic.hpp"

#include <algorithm>

#include "atomcompact/error.hpp"

namespace atomcompact {

namespace {

// Positive when `a` is an infinitesimal of strictly larger magnitude than `b`.
int magnitude_cmp(const Infinitesimal& a, const Infinitesimal& b) {
  if (a.level != b.level) return a.level < b.level ? 1 : -1;
  if (a.mag != b.mag) return a.mag > b.mag ? 1 : -1;
  return 0;
}

}  // namespace

SymAtom SymAtom::fresh(int level, long id) {
  SymAtom s;
  s.base = 0;
  s.terms.push_back({1, level, id});
  return s;
}

Atom SymAtom::concrete() const {
  if (!is_concrete()) fail(ErrorCode::InvalidArgument, "symbolic atom " + str() + " is not concrete");
  return Atom(base);
}

SymAtom SymAtom::plus(Infinitesimal term) const {
  SymAtom out = *this;
  auto pos = std::find_if(out.terms.begin(), out.terms.end(),
                          [&](const Infinitesimal& t) { return magnitude_cmp(term, t) > 0; });
  out.terms.insert(pos, term);
  return out;
}

std::string SymAtom::str() const {
  std::string out = kind == BaseKind::MinusInf ? "-inf" : kind == BaseKind::PlusInf ? "+inf" : format_rational(base);
  for (const auto& t : terms)
    out += (t.sign > 0 ? "+e" : "-e") + std::to_string(t.level) + "." + std::to_string(t.mag);
  return out;
}

std::strong_ordering compare(const SymAtom& a, const SymAtom& b) {
  if (a.kind != b.kind) return a.kind <=> b.kind;
  if (a.kind == BaseKind::Finite) {
    int c = cmp(a.base, b.base);
    if (c != 0) return c <=> 0;
  }
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()) return a.terms[i].sign > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    if (i == a.terms.size()) return b.terms[j].sign > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const auto& x = a.terms[i];
    const auto& y = b.terms[j];
    int m = magnitude_cmp(x, y);
    if (m > 0) return x.sign > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    if (m < 0) return y.sign > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.sign != y.sign) return x.sign <=> y.sign;
    ++i;
    ++j;
  }
  return std::strong_ordering::equal;
}

bool structural_less(const SymAtom& a, const SymAtom& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  int c = cmp(a.base, b.base);
  if (c != 0) return c < 0;
  return a.terms < b.terms;
}

SymTuple lift(std::span<const Atom> atoms) { return SymTuple(atoms.begin(), atoms.end()); }

}  // namespace atomcompact
