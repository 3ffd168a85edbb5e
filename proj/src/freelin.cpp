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

#include "atomcompact/freelin.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "atomcompact/linalg.hpp"

namespace atomcompact {

void FreeVec::add(const TaggedTuple& x, const Rational& value) {
  Rational c = value;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = entries_.emplace(x, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) entries_.erase(it);
}

Rational FreeVec::at(const TaggedTuple& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? Rational(0) : it->second;
}

bool TruncRect::contains(std::span<const SymAtom> y) const {
  if (y.size() != arity()) return false;
  for (size_t i = 0; i < y.size(); ++i) {
    if (strict[i]) {
      if (bounds[i] && compare(y[i], SymAtom(*bounds[i])) >= 0) return false;
    } else if (!bounds[i] || compare(y[i], SymAtom(*bounds[i])) != 0) {
      return false;
    }
  }
  return true;
}

bool TruncRect::is_empty() const {
  for (size_t i = 0; i < arity(); ++i) {
    if (strict[i]) continue;
    if (!bounds[i]) return true;
    if (i + 1 < arity() && bounds[i + 1] && *bounds[i + 1] <= *bounds[i]) return true;
  }
  return false;
}

std::string TruncRect::str() const {
  std::string out = "T[";
  for (size_t i = 0; i < arity(); ++i) {
    if (i) out += ",";
    out += strict[i] ? "<" : "=";
    out += bounds[i] ? bounds[i]->str() : "+inf";
  }
  return out + "]";
}

TaggedTuple OrbitRect::encode() const {
  std::string t = "rect:" + tag + "[";
  for (size_t i = 0; i < pattern.size(); ++i) t += (i ? "," : "") + std::to_string(pattern[i]);
  t += "|";
  size_t inf = 0;
  std::vector<Atom> params;
  for (size_t i = 0; i < rect.arity(); ++i) {
    t += rect.strict[i] ? "1" : "0";
    if (rect.bounds[i])
      params.push_back(*rect.bounds[i]);
    else
      ++inf;
  }
  t += "|" + std::to_string(inf) + "]";
  return {t, params};
}

bool OrbitRect::is_encoded(const std::string& tag) {
  return tag.rfind("rect:", 0) == 0 && !tag.empty() && tag.back() == ']' && tag.rfind('[') != std::string::npos;
}

OrbitRect OrbitRect::decode(const TaggedTuple& encoded) {
  const std::string& t = encoded.tag;
  if (!is_encoded(t)) fail(ErrorCode::InvalidDocument, "not a rectangle tag: '" + t + "'");
  size_t open = t.rfind('[');
  OrbitRect r;
  r.tag = t.substr(5, open - 5);
  std::string body = t.substr(open + 1, t.size() - open - 2);
  size_t bar1 = body.find('|'), bar2 = body.rfind('|');
  if (bar1 == std::string::npos || bar1 == bar2) fail(ErrorCode::InvalidDocument, "bad rectangle tag '" + t + "'");
  try {
    std::string pat = body.substr(0, bar1);
    size_t pos = 0;
    while (pos < pat.size()) {
      size_t comma = pat.find(',', pos);
      r.pattern.push_back(std::stoi(pat.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      pos = comma == std::string::npos ? pat.size() : comma + 1;
    }
    std::string bits = body.substr(bar1 + 1, bar2 - bar1 - 1);
    size_t inf = std::stoul(body.substr(bar2 + 1));
    if (inf > bits.size() || encoded.atoms.size() + inf != bits.size()) throw std::invalid_argument("counts");
    for (size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("bits");
      r.rect.strict.push_back(bits[i] == '1');
      if (i < encoded.atoms.size())
        r.rect.bounds.emplace_back(encoded.atoms[i]);
      else
        r.rect.bounds.emplace_back(std::nullopt);
    }
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::InvalidDocument, "bad rectangle tag '" + t + "'");
  } catch (const std::out_of_range&) {
    fail(ErrorCode::InvalidDocument, "bad rectangle tag '" + t + "'");
  }
  return r;
}

std::vector<int> order_pattern(std::span<const SymAtom> x) {
  std::vector<int> out;
  for (const auto& v : x) {
    std::vector<const SymAtom*> below;
    for (const auto& u : x)
      if (compare(u, v) < 0 && std::none_of(below.begin(), below.end(), [&](const SymAtom* b) { return compare(*b, u) == 0; }))
        below.push_back(&u);
    out.push_back(static_cast<int>(below.size()));
  }
  return out;
}

namespace {

SymTuple distinct_sorted(std::span<const SymAtom> x) {
  SymTuple out(x.begin(), x.end());
  std::sort(out.begin(), out.end(), [](const SymAtom& a, const SymAtom& b) { return compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end(), [](const SymAtom& a, const SymAtom& b) { return compare(a, b) == 0; }),
            out.end());
  return out;
}

}  // namespace

int eval_basis(const BasisElement& b, const std::string& tag, std::span<const SymAtom> x) {
  if (const auto* p = std::get_if<TypeDesc>(&b)) return isolates(*p, tag, x) ? 1 : 0;
  const auto& r = std::get<OrbitRect>(b);
  if (tag != r.tag) return 0;
  if (x.size() != r.pattern.size()) fail(ErrorCode::ArityMismatch, "tuple length differs from the rectangle pattern");
  if (order_pattern(x) != r.pattern) return 0;
  return r.rect.contains(distinct_sorted(x)) ? 1 : 0;
}

int eval_basis(const BasisElement& b, const TaggedTuple& x) {
  SymTuple lifted = lift(x.atoms);
  return eval_basis(b, x.tag, lifted);
}

TaggedTuple encode_basis(const BasisElement& b) {
  if (const auto* p = std::get_if<TypeDesc>(&b)) return p->encode();
  return std::get<OrbitRect>(b).encode();
}

BasisElement decode_basis(const TaggedTuple& encoded) {
  if (OrbitRect::is_encoded(encoded.tag)) return OrbitRect::decode(encoded);
  return TypeDesc::decode(encoded);
}

Rational BasisExpansion::eval(const std::string& tag, std::span<const SymAtom> x) const {
  Rational sum = 0;
  for (const auto& [b, c] : terms)
    if (eval_basis(b, tag, x)) sum += c;
  return sum;
}

Rational BasisExpansion::eval(const TaggedTuple& x) const {
  SymTuple lifted = lift(x.atoms);
  return eval(x.tag, lifted);
}

Support BasisExpansion::support() const {
  std::vector<Atom> atoms(base.support().atoms().begin(), base.support().atoms().end());
  for (const auto& [b, c] : terms) {
    auto e = encode_basis(b);
    atoms.insert(atoms.end(), e.atoms.begin(), e.atoms.end());
  }
  return Support(atoms);
}

namespace {

void check_round_trip(const BasisExpansion& e, const ScalarFun& f) {
  Support s = e.support().joined(f.support());
  DefSet refined = f.domain().refine(s);
  for (const auto& c : refined.cells()) {
    auto w = cells::witness(f.theory(), c.cell, s);
    TaggedTuple x{c.tag, w};
    if (e.eval(x) != f(x))
      fail(ErrorCode::NonzeroResidual, "expansion differs from the function at " + x.str() + ": " +
                                           format_rational(e.eval(x)) + " vs " + format_rational(f(x)));
  }
}

}  // namespace

BasisExpansion decompose_eq(const ScalarFun& f) {
  if (f.theory() != Theory::Eq) fail(ErrorCode::UnsupportedTheory, "decompose_eq needs an EQ function");
  const Support& t = f.support();
  DefSet comp = compactify(f.domain().refine(t));
  std::vector<TypeDesc> types;
  for (const auto& c : comp.cells())
    if (cells::free_count(Theory::Eq, c.cell) == 0)
      types.push_back(TypeDesc::decode({c.tag, cells::witness(Theory::Eq, c.cell, t)}));
  std::stable_sort(types.begin(), types.end(), [](const TypeDesc& a, const TypeDesc& b) { return a.rank() > b.rank(); });
  BasisExpansion e{f.domain(), {}};
  for (const auto& p : types) {
    SymTuple gp = generic_point(p, 1);
    Rational c = f(p.tag(), gp) - e.eval(p.tag(), gp);
    if (c != 0) e.terms.emplace_back(p, c);
  }
  check_round_trip(e, f);
  return e;
}

namespace {

// Non-decreasing index sequences of length m over 0..top.
void monotone_sequences(size_t m, size_t top, std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
  if (cur.size() == m) {
    out.push_back(cur);
    return;
  }
  for (size_t v = cur.empty() ? 0 : cur.back(); v <= top; ++v) {
    cur.push_back(v);
    monotone_sequences(m, top, cur, out);
    cur.pop_back();
  }
}

std::vector<TruncRect> candidate_rects(size_t m, const Support& t) {
  std::vector<TruncRect> out;
  std::vector<std::vector<size_t>> seqs;
  std::vector<size_t> cur;
  monotone_sequences(m, t.size(), cur, seqs);
  for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
    for (const auto& seq : seqs) {
      TruncRect r;
      bool ok = true;
      for (size_t i = 0; i < m; ++i) {
        bool strict = (mask >> i) & 1;
        bool infinite = seq[i] == t.size();
        if (infinite && !strict) ok = false;
        r.strict.push_back(strict);
        if (infinite)
          r.bounds.emplace_back(std::nullopt);
        else
          r.bounds.emplace_back(t[seq[i]]);
      }
      if (ok && !r.is_empty()) out.push_back(std::move(r));
    }
  }
  return out;
}

bool strictly_increasing(std::span<const Atom> y) {
  for (size_t i = 1; i < y.size(); ++i)
    if (!(y[i - 1] < y[i])) return false;
  return true;
}

}  // namespace

BasisExpansion decompose_dlo(const ScalarFun& f) {
  if (f.theory() != Theory::Dlo) fail(ErrorCode::UnsupportedTheory, "decompose_dlo needs a DLO function");
  const DefSet& base = f.domain();
  const Support& t = f.support();
  BasisExpansion e{base, {}};
  std::map<std::string, std::set<std::vector<int>>> patterns;
  for (const auto& c : base.cells()) {
    auto w = cells::witness(Theory::Dlo, c.cell, base.support());
    SymTuple x = lift(w);
    patterns[c.tag].insert(order_pattern(x));
  }
  for (const auto& [tag, pats] : patterns) {
    for (const auto& pattern : pats) {
      size_t m = pattern.empty() ? 0 : static_cast<size_t>(*std::max_element(pattern.begin(), pattern.end()) + 1);
      std::vector<std::vector<Atom>> rows;
      for (const auto& c : cells::all(Theory::Dlo, m, t)) {
        auto y = cells::witness(Theory::Dlo, c, t);
        if (strictly_increasing(y)) rows.push_back(std::move(y));
      }
      std::vector<Rational> target;
      for (const auto& y : rows) {
        TaggedTuple x{tag, {}};
        for (int r : pattern) x.atoms.push_back(y[r]);
        target.push_back(base.member(x) ? f(x) : Rational(0));
      }
      std::vector<TruncRect> columns = candidate_rects(m, t);
      Matrix a(rows.size(), std::vector<Rational>(columns.size()));
      for (size_t r = 0; r < rows.size(); ++r) {
        SymTuple y = lift(rows[r]);
        for (size_t c = 0; c < columns.size(); ++c) a[r][c] = columns[c].contains(y) ? 1 : 0;
      }
      Solution sol = solve(a, target);
      if (!sol.consistent)
        fail(ErrorCode::SystemInsolvable, "rectangles over " + t.str() + " do not span the functions on pattern of tag '" + tag + "'");
      if (sol.rank != columns.size())
        fail(ErrorCode::SystemInsolvable, "rectangles over " + t.str() + " are linearly dependent");
      for (size_t c = 0; c < columns.size(); ++c)
        if (sol.x[c] != 0) e.terms.emplace_back(OrbitRect{tag, pattern, columns[c]}, sol.x[c]);
    }
  }
  check_round_trip(e, f);
  return e;
}

BasisExpansion decompose(const ScalarFun& f) { return f.theory() == Theory::Eq ? decompose_eq(f) : decompose_dlo(f); }

RoundTrip verify_expansion(const BasisExpansion& e, const ScalarFun& f, size_t samples, uint64_t seed) {
  RoundTrip report;
  Support s = e.support().joined(f.support());
  DefSet refined = f.domain().refine(s);
  for (const auto& c : refined.cells()) {
    auto w = cells::witness(f.theory(), c.cell, s);
    TaggedTuple x{c.tag, w};
    ++report.generic_checked;
    if (e.eval(x) == f(x)) ++report.generic_ok;
  }
  auto pool = cells::sample_pool(f.theory(), s, 3);
  auto arities = f.domain().arities();
  if (arities.empty() || samples == 0) return report;
  std::vector<std::pair<std::string, size_t>> tags(arities.begin(), arities.end());
  std::mt19937_64 rng(seed);
  size_t attempts = 0;
  while (report.samples < samples && attempts < samples * 500) {
    ++attempts;
    const auto& [tag, n] = tags[rng() % tags.size()];
    TaggedTuple x{tag, {}};
    for (size_t i = 0; i < n; ++i) x.atoms.push_back(pool[rng() % pool.size()]);
    if (!f.domain().member(x)) continue;
    ++report.samples;
    if (e.eval(x) == f(x)) ++report.samples_ok;
  }
  return report;
}

DefSet dlo_basis(const DefSet& base) {
  if (base.theory() != Theory::Dlo) fail(ErrorCode::UnsupportedTheory, "dlo_basis needs a DLO set");
  const Support& s = base.support();
  std::map<std::string, std::set<std::vector<int>>> patterns;
  for (const auto& c : base.cells()) {
    auto w = cells::witness(Theory::Dlo, c.cell, s);
    SymTuple x = lift(w);
    patterns[c.tag].insert(order_pattern(x));
  }
  std::vector<TaggedCell> out;
  for (const auto& [tag, pats] : patterns) {
    for (const auto& pattern : pats) {
      size_t m = pattern.empty() ? 0 : static_cast<size_t>(*std::max_element(pattern.begin(), pattern.end()) + 1);
      for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        for (size_t inf = 0; inf <= m; ++inf) {
          bool ok = true;
          for (size_t i = m - inf; i < m; ++i)
            if (!((mask >> i) & 1)) ok = false;
          if (!ok) continue;
          size_t finite = m - inf;
          for (const auto& params : cells::all(Theory::Dlo, finite, s)) {
            auto q = cells::witness(Theory::Dlo, params, s);
            OrbitRect r{tag, pattern, {}};
            bool increasing = true;
            for (size_t i = 0; i < m; ++i) {
              r.rect.strict.push_back((mask >> i) & 1);
              if (i < finite)
                r.rect.bounds.emplace_back(q[i]);
              else
                r.rect.bounds.emplace_back(std::nullopt);
              if (i > 0 && i < finite && q[i] < q[i - 1]) increasing = false;
            }
            if (!increasing || r.rect.is_empty()) continue;
            out.push_back({r.encode().tag, params});
          }
        }
      }
    }
  }
  return DefSet(Theory::Dlo, s, std::move(out));
}

std::pair<std::string, std::string> split_pair_tag(const std::string& tag, const DefSet& x, const DefSet& y) {
  for (const auto& [tx, nx] : x.arities())
    for (const auto& [ty, ny] : y.arities())
      if (product_tag(tx, ty) == tag) return {tx, ty};
  fail(ErrorCode::BasisMismatch, "tag '" + tag + "' is not a pair of source and target tags");
}

DefSet hom_basis(const DefSet& x, const DefSet& y) {
  if (x.theory() != Theory::Eq || y.theory() != Theory::Eq)
    fail(ErrorCode::UnsupportedTheory, "hom bases are only available over EQ atoms");
  DefSet comp = compactify(set_product(x, y));
  std::vector<TaggedCell> kept;
  for (const auto& c : comp.cells()) {
    TypeShape shape = TypeShape::decode(c.tag);
    auto [tx, ty] = split_pair_tag(shape.tag, x, y);
    size_t nx = *x.arity_of(tx);
    bool ok = true;
    for (size_t b = 0; b < shape.blocks(); ++b) {
      if (shape.kinds[b] != Kind::Fresh) continue;
      bool in_x = false;
      for (size_t i = 0; i < nx; ++i) in_x = in_x || shape.block_of[i] == static_cast<int>(b);
      ok = ok && in_x;
    }
    if (ok) kept.push_back(c);
  }
  return DefSet(Theory::Eq, comp.support(), std::move(kept));
}

FreeVec hom_apply(const TypeDesc& b, const DefSet& x, const DefSet& y, const FreeVec& v) {
  auto [tx, ty] = split_pair_tag(b.tag(), x, y);
  size_t nx = *x.arity_of(tx), ny = *y.arity_of(ty);
  const auto& shape = b.shape;
  std::vector<int> param_of(shape.blocks(), -1);
  int next = 0;
  for (size_t k = 0; k < shape.blocks(); ++k)
    if (kind_has_param(shape.kinds[k])) param_of[k] = next++;
  std::vector<int> source_of(shape.blocks(), -1);
  for (size_t i = 0; i < nx; ++i)
    if (source_of[shape.block_of[i]] < 0) source_of[shape.block_of[i]] = static_cast<int>(i);
  FreeVec out;
  for (const auto& [x0, c] : v.entries()) {
    if (x0.tag != tx) continue;
    TaggedTuple pair{b.tag(), x0.atoms};
    TaggedTuple y0{ty, {}};
    for (size_t j = 0; j < ny; ++j) {
      int block = shape.block_of[nx + j];
      if (param_of[block] >= 0)
        y0.atoms.push_back(b.params[param_of[block]]);
      else if (source_of[block] >= 0)
        y0.atoms.push_back(x0.atoms[source_of[block]]);
      else
        fail(ErrorCode::BasisMismatch, b.str() + " is not a hom-basis element");
    }
    pair.atoms.insert(pair.atoms.end(), y0.atoms.begin(), y0.atoms.end());
    if (isolates(b, pair)) out.add(y0, c);
  }
  return out;
}

FreeVec apply(const LinMap& m, const FreeVec& v) {
  FreeVec out;
  for (const auto& [b, c] : m.terms) {
    FreeVec image = hom_apply(b, m.source, m.target, v);
    for (const auto& [y, w] : image.entries()) out.add(y, c * w);
  }
  return out;
}

LinMap lin_from_kernel(const DefSet& x, const DefSet& y, const ScalarFun& kernel) {
  BasisExpansion e = decompose_eq(kernel);
  DefSet basis = hom_basis(x, y);
  LinMap out{x, y, {}};
  for (const auto& [b, c] : e.terms) {
    const auto& p = std::get<TypeDesc>(b);
    if (!basis.member(p.encode()))
      fail(ErrorCode::DecompositionOutsideHomBasis, p.str() + " is not in the hom basis");
    out.terms.emplace_back(p, c);
  }
  return out;
}

namespace {

Support map_support(const LinMap& m) {
  std::vector<Atom> atoms;
  for (const auto& [b, c] : m.terms) atoms.insert(atoms.end(), b.params.begin(), b.params.end());
  return Support(atoms).joined(m.source.support()).joined(m.target.support());
}

}  // namespace

LinMap compose(const LinMap& second, const LinMap& first) {
  if (!same_set(first.target, second.source)) fail(ErrorCode::BasisMismatch, "the maps do not compose");
  const DefSet& x = first.source;
  const DefSet& z = second.target;
  Support s = map_support(first).joined(map_support(second));
  ScalarFun kernel = ScalarFun::from_rule(set_product(x, z), s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    auto [tx, tz] = split_pair_tag(c.tag, x, z);
    size_t nx = *x.arity_of(tx);
    TaggedTuple x0{tx, {w.begin(), w.begin() + static_cast<long>(nx)}};
    TaggedTuple z0{tz, {w.begin() + static_cast<long>(nx), w.end()}};
    return apply(second, apply(first, FreeVec::unit(x0))).at(z0);
  });
  return lin_from_kernel(x, z, kernel);
}

LinMap hom_compose(const TypeDesc& b2, const TypeDesc& b1, const DefSet& x, const DefSet& y, const DefSet& z) {
  DefSet hxy = hom_basis(x, y), hyz = hom_basis(y, z);
  if (!hxy.member(b1.encode()) || !hyz.member(b2.encode())) fail(ErrorCode::BasisMismatch, "elements are not in the hom bases");
  return compose(LinMap{y, z, {{b2, 1}}}, LinMap{x, y, {{b1, 1}}});
}

LinMap identity_map(const DefSet& x) {
  ScalarFun kernel = ScalarFun::from_rule(set_product(x, x), x.support(), [&](const TaggedCell& c, const std::vector<Atom>& w) {
    auto [t1, t2] = split_pair_tag(c.tag, x, x);
    size_t n = *x.arity_of(t1);
    return Rational(t1 == t2 && std::equal(w.begin(), w.begin() + static_cast<long>(n), w.begin() + static_cast<long>(n)) ? 1 : 0);
  });
  return lin_from_kernel(x, x, kernel);
}

bool same_map(const LinMap& a, const LinMap& b) {
  if (!same_set(a.source, b.source) || !same_set(a.target, b.target)) return false;
  auto canon = [](const LinMap& m) {
    std::map<TaggedTuple, Rational> out;
    for (const auto& [p, c] : m.terms) out[p.encode()] += c;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  };
  return canon(a) == canon(b);
}

}  // namespace atomcompact
