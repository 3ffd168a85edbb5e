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

#include "atomcompact/types.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace atomcompact {

char kind_char(Kind kind) {
  switch (kind) {
    case Kind::Point: return 'P';
    case Kind::Fresh: return 'F';
    case Kind::Left: return 'L';
    case Kind::Right: return 'R';
    case Kind::MinusInf: return '-';
    case Kind::PlusInf: return '+';
  }
  return '?';
}

namespace {

Kind kind_from_char(char c, Theory theory) {
  switch (c) {
    case 'P': return Kind::Point;
    case 'F':
      if (theory == Theory::Eq) return Kind::Fresh;
      break;
    case 'L':
      if (theory == Theory::Dlo) return Kind::Left;
      break;
    case 'R':
      if (theory == Theory::Dlo) return Kind::Right;
      break;
    case '-':
      if (theory == Theory::Dlo) return Kind::MinusInf;
      break;
    case '+':
      if (theory == Theory::Dlo) return Kind::PlusInf;
      break;
  }
  fail(ErrorCode::InvalidDocument, std::string("bad type component '") + c + "' for " + std::string(theory_name(theory)));
}

constexpr std::string_view kEqPrefix = "type:eq:";
constexpr std::string_view kDloPrefix = "type:dlo:";

}  // namespace

bool kind_has_param(Kind kind) { return kind == Kind::Point || kind == Kind::Left || kind == Kind::Right; }

size_t TypeShape::rank() const {
  return static_cast<size_t>(std::count_if(kinds.begin(), kinds.end(), [](Kind k) { return k != Kind::Point; }));
}

size_t TypeShape::param_count() const {
  return static_cast<size_t>(std::count_if(kinds.begin(), kinds.end(), kind_has_param));
}

std::string TypeShape::encode() const {
  std::string out(theory == Theory::Eq ? kEqPrefix : kDloPrefix);
  out += tag + "[";
  for (size_t i = 0; i < block_of.size(); ++i) {
    if (i) out += "|";
    out += std::to_string(block_of[i]);
    out += kind_char(kinds[block_of[i]]);
  }
  return out + "]";
}

bool TypeShape::is_encoded(const std::string& text) {
  return (text.rfind(kEqPrefix, 0) == 0 || text.rfind(kDloPrefix, 0) == 0) && !text.empty() && text.back() == ']' &&
         text.rfind('[') != std::string::npos;
}

TypeShape TypeShape::decode(const std::string& text) {
  if (!is_encoded(text)) fail(ErrorCode::InvalidDocument, "not a type tag: '" + text + "'");
  TypeShape shape;
  shape.theory = text.rfind(kEqPrefix, 0) == 0 ? Theory::Eq : Theory::Dlo;
  size_t start = (shape.theory == Theory::Eq ? kEqPrefix : kDloPrefix).size();
  size_t open = text.rfind('[');
  if (open < start) fail(ErrorCode::InvalidDocument, "not a type tag: '" + text + "'");
  shape.tag = text.substr(start, open - start);
  std::string body = text.substr(open + 1, text.size() - open - 2);
  std::map<int, Kind> kinds;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t bar = body.find('|', pos);
    std::string entry = body.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
    pos = bar == std::string::npos ? body.size() : bar + 1;
    if (entry.size() < 2 || !std::all_of(entry.begin(), entry.end() - 1, [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(ErrorCode::InvalidDocument, "bad entry '" + entry + "' in type tag '" + text + "'");
    int block = std::stoi(entry.substr(0, entry.size() - 1));
    Kind kind = kind_from_char(entry.back(), shape.theory);
    auto [it, inserted] = kinds.emplace(block, kind);
    if (!inserted && it->second != kind) fail(ErrorCode::InvalidDocument, "block with two kinds in '" + text + "'");
    shape.block_of.push_back(block);
  }
  for (size_t b = 0; b < kinds.size(); ++b) {
    if (!kinds.count(static_cast<int>(b))) fail(ErrorCode::InvalidDocument, "block numbers are not contiguous in '" + text + "'");
    shape.kinds.push_back(kinds[static_cast<int>(b)]);
  }
  if (shape.theory == Theory::Eq) {
    int next = 0;
    for (int b : shape.block_of) {
      if (b > next) fail(ErrorCode::InvalidDocument, "EQ blocks must be numbered by first occurrence in '" + text + "'");
      if (b == next) ++next;
    }
  }
  return shape;
}

TypeDesc TypeDesc::decode(const TaggedTuple& encoded) {
  TypeDesc p{TypeShape::decode(encoded.tag), encoded.atoms};
  if (p.params.size() != p.shape.param_count())
    fail(ErrorCode::ArityMismatch, "type '" + encoded.tag + "' takes " + std::to_string(p.shape.param_count()) + " parameters");
  return p;
}

TypeDesc TypeDesc::principal(Theory theory, const TaggedTuple& x) {
  SymTuple values = lift(x.atoms);
  return read_back(theory, x.tag, values);
}

TaggedTuple TypeDesc::point() const {
  if (!is_principal()) fail(ErrorCode::InvalidArgument, "type " + str() + " is not principal");
  TaggedTuple out{tag(), {}};
  for (int b : shape.block_of) out.atoms.push_back(params[b]);
  return out;
}

std::string TypeDesc::str() const { return encode().str(); }

bool is_valid(const TypeDesc& p) {
  const auto& s = p.shape;
  if (p.params.size() != s.param_count()) return false;
  std::vector<const Atom*> param_of(s.blocks(), nullptr);
  size_t next = 0;
  for (size_t b = 0; b < s.blocks(); ++b)
    if (kind_has_param(s.kinds[b])) param_of[b] = &p.params[next++];
  if (s.theory == Theory::Eq) {
    std::set<Atom> seen;
    for (size_t b = 0; b < s.blocks(); ++b) {
      if (s.kinds[b] != Kind::Point && s.kinds[b] != Kind::Fresh) return false;
      if (param_of[b] && !seen.insert(*param_of[b]).second) return false;
    }
    return true;
  }
  // Key of a component in the order -inf < L(q) < P(q) < R(q) < +inf.
  auto key = [&](size_t b) {
    switch (s.kinds[b]) {
      case Kind::MinusInf: return std::tuple<int, Rational, int>(0, 0, 0);
      case Kind::PlusInf: return std::tuple<int, Rational, int>(2, 0, 0);
      case Kind::Left: return std::tuple<int, Rational, int>(1, param_of[b]->value(), 0);
      case Kind::Point: return std::tuple<int, Rational, int>(1, param_of[b]->value(), 1);
      case Kind::Right: return std::tuple<int, Rational, int>(1, param_of[b]->value(), 2);
      case Kind::Fresh: break;
    }
    return std::tuple<int, Rational, int>(-1, 0, 0);
  };
  for (size_t b = 0; b < s.blocks(); ++b) {
    if (s.kinds[b] == Kind::Fresh) return false;
    if (b == 0) continue;
    auto prev = key(b - 1), cur = key(b);
    if (cur < prev) return false;
    if (cur == prev && s.kinds[b] == Kind::Point) return false;
  }
  return true;
}

void validate(const TypeDesc& p) {
  if (!is_valid(p)) fail(ErrorCode::InvalidArgument, "inconsistent type " + p.str());
}

SymTuple generic_point(const TypeShape& shape, std::span<const SymAtom> params, int level) {
  if (params.size() != shape.param_count())
    fail(ErrorCode::ArityMismatch, "type '" + shape.encode() + "' takes " + std::to_string(shape.param_count()) + " parameters");
  const long m = static_cast<long>(shape.blocks());
  std::vector<SymAtom> block_value;
  size_t next = 0;
  for (long b = 0; b < m; ++b) {
    switch (shape.kinds[b]) {
      case Kind::Point: block_value.push_back(params[next++]); break;
      case Kind::Fresh: block_value.push_back(SymAtom::fresh(level, b)); break;
      case Kind::Right: block_value.push_back(params[next++].plus({1, level, 2 * b})); break;
      case Kind::Left: block_value.push_back(params[next++].plus({-1, level, 2 * (m - b) + 1})); break;
      case Kind::MinusInf: {
        SymAtom v;
        v.kind = BaseKind::MinusInf;
        block_value.push_back(v.plus({1, level, 2 * b}));
        break;
      }
      case Kind::PlusInf: {
        SymAtom v;
        v.kind = BaseKind::PlusInf;
        block_value.push_back(v.plus({-1, level, 2 * (m - b) + 1}));
        break;
      }
    }
  }
  SymTuple out;
  for (int b : shape.block_of) out.push_back(block_value[b]);
  return out;
}

SymTuple generic_point(const TypeDesc& p, int level) {
  SymTuple params = lift(p.params);
  return generic_point(p.shape, params, level);
}

TypeDesc read_back(Theory theory, const std::string& tag, std::span<const SymAtom> values) {
  TypeDesc p;
  p.shape.theory = theory;
  p.shape.tag = tag;
  std::vector<const SymAtom*> reps;
  if (theory == Theory::Eq) {
    for (const auto& v : values) {
      auto it = std::find_if(reps.begin(), reps.end(), [&](const SymAtom* r) { return *r == v; });
      p.shape.block_of.push_back(static_cast<int>(it - reps.begin()));
      if (it == reps.end()) reps.push_back(&v);
    }
    for (const SymAtom* r : reps) {
      if (r->is_concrete()) {
        p.shape.kinds.push_back(Kind::Point);
        p.params.push_back(r->concrete());
      } else {
        p.shape.kinds.push_back(Kind::Fresh);
      }
    }
    return p;
  }
  for (const auto& v : values)
    if (std::none_of(reps.begin(), reps.end(), [&](const SymAtom* r) { return compare(*r, v) == 0; })) reps.push_back(&v);
  std::sort(reps.begin(), reps.end(), [](const SymAtom* a, const SymAtom* b) { return compare(*a, *b) < 0; });
  for (const auto& v : values) {
    auto it = std::find_if(reps.begin(), reps.end(), [&](const SymAtom* r) { return compare(*r, v) == 0; });
    p.shape.block_of.push_back(static_cast<int>(it - reps.begin()));
  }
  for (const SymAtom* r : reps) {
    if (r->terms.empty()) {
      if (r->kind != BaseKind::Finite) fail(ErrorCode::InvalidArgument, "infinite value without infinitesimal");
      p.shape.kinds.push_back(Kind::Point);
      p.params.push_back(Atom(r->base));
    } else if (r->terms.front().sign > 0) {
      if (r->kind == BaseKind::MinusInf) {
        p.shape.kinds.push_back(Kind::MinusInf);
      } else if (r->kind == BaseKind::Finite) {
        p.shape.kinds.push_back(Kind::Right);
        p.params.push_back(Atom(r->base));
      } else {
        fail(ErrorCode::InvalidArgument, "value above +inf");
      }
    } else {
      if (r->kind == BaseKind::PlusInf) {
        p.shape.kinds.push_back(Kind::PlusInf);
      } else if (r->kind == BaseKind::Finite) {
        p.shape.kinds.push_back(Kind::Left);
        p.params.push_back(Atom(r->base));
      } else {
        fail(ErrorCode::InvalidArgument, "value below -inf");
      }
    }
  }
  return p;
}

TypeDesc flatten(const TypeTemplate& t, std::span<const SymAtom> input) {
  SymTuple params = evaluate(t.params, input);
  SymTuple values = generic_point(t.shape, params, 2);
  return read_back(t.shape.theory, t.shape.tag, values);
}

namespace {

// The shape partition induced by a cell: one block per distinct constant or
// free position, numbered by first occurrence (EQ) or by order (DLO).
std::vector<int> shape_partition(Theory theory, const Cell& cell) {
  std::vector<int> out;
  if (theory == Theory::Eq) {
    std::vector<Coord> seen;
    for (const auto& c : cell.coords) {
      auto it = std::find(seen.begin(), seen.end(), c);
      out.push_back(static_cast<int>(it - seen.begin()));
      if (it == seen.end()) seen.push_back(c);
    }
    return out;
  }
  std::set<Coord> positions(cell.coords.begin(), cell.coords.end());
  for (const auto& c : cell.coords) out.push_back(static_cast<int>(std::distance(positions.begin(), positions.find(c))));
  return out;
}

struct BlockOption {
  Kind kind;
  // Parameter coordinate: fixed coordinate, or an interval/fresh slot whose rank is chosen later.
  bool has_param = false;
  bool inside = false;
  Coord coord;
};

void compactify_cell(Theory theory, const TaggedCell& tc, const Support& support, std::vector<TaggedCell>& out) {
  const Cell& cell = tc.cell;
  std::vector<int> block_of = shape_partition(theory, cell);
  int blocks = block_of.empty() ? 0 : *std::max_element(block_of.begin(), block_of.end()) + 1;
  std::vector<Coord> position(blocks);
  for (size_t i = 0; i < cell.arity(); ++i) position[block_of[i]] = cell.coords[i];
  const int k = static_cast<int>(support.size());

  std::vector<std::vector<BlockOption>> options(blocks);
  for (int b = 0; b < blocks; ++b) {
    const Coord& pos = position[b];
    auto& opt = options[b];
    if (theory == Theory::Eq) {
      if (pos.slot != kBlockSlot) {
        opt.push_back({Kind::Point, true, false, pos});
      } else {
        opt.push_back({Kind::Fresh, false, false, {}});
        opt.push_back({Kind::Point, true, true, {kBlockSlot, 0}});
      }
      continue;
    }
    if (pos.slot % 2 == 1) {
      opt.push_back({Kind::Point, true, false, pos});
      continue;
    }
    int j = pos.slot / 2;
    opt.push_back({Kind::Point, true, true, {pos.slot, 0}});
    opt.push_back({Kind::Right, true, true, {pos.slot, 0}});
    if (j > 0) opt.push_back({Kind::Right, true, false, {pos.slot - 1, 0}});
    opt.push_back({Kind::Left, true, true, {pos.slot, 0}});
    if (j < k) opt.push_back({Kind::Left, true, false, {pos.slot + 1, 0}});
    if (j == 0) opt.push_back({Kind::MinusInf, false, false, {}});
    if (j == k) opt.push_back({Kind::PlusInf, false, false, {}});
  }

  std::vector<int> pick(blocks, 0);
  std::function<void(int)> rec = [&](int b) {
    if (b < blocks) {
      for (size_t o = 0; o < options[b].size(); ++o) {
        pick[b] = static_cast<int>(o);
        rec(b + 1);
      }
      return;
    }
    TypeShape shape{theory, tc.tag, block_of, {}};
    std::vector<BlockOption> chosen;
    for (int i = 0; i < blocks; ++i) {
      chosen.push_back(options[i][pick[i]]);
      shape.kinds.push_back(chosen.back().kind);
    }
    std::vector<size_t> inside;  // indices into `chosen` with a free parameter
    for (int i = 0; i < blocks; ++i)
      if (chosen[i].has_param && chosen[i].inside) inside.push_back(i);
    // EQ free parameters are distinct new blocks. DLO free parameters in the
    // same interval are weakly increasing in block order; choose where they tie.
    std::vector<std::vector<int>> rank_choices;
    if (theory == Theory::Eq) {
      std::vector<int> r;
      for (size_t i = 0; i < inside.size(); ++i) r.push_back(static_cast<int>(i));
      rank_choices.push_back(r);
    } else {
      size_t n = inside.size();
      size_t gaps = n == 0 ? 0 : n - 1;
      for (size_t mask = 0; mask < (size_t{1} << gaps); ++mask) {
        std::vector<int> r(n, 0);
        bool ok = true;
        for (size_t i = 1; i < n && ok; ++i) {
          bool same_slot = chosen[inside[i]].coord.slot == chosen[inside[i - 1]].coord.slot;
          bool step = (mask >> (i - 1)) & 1;
          ok = same_slot || step;
          r[i] = r[i - 1] + (step ? 1 : 0);
        }
        if (ok) rank_choices.push_back(r);
      }
    }
    for (const auto& ranks : rank_choices) {
      Cell params;
      size_t next_inside = 0;
      for (int i = 0; i < blocks; ++i) {
        if (!chosen[i].has_param) continue;
        Coord c = chosen[i].coord;
        if (chosen[i].inside) c.rank = ranks[next_inside++];
        params.coords.push_back(c);
      }
      params = cells::canonical(theory, params);
      TypeDesc p{shape, cells::witness(theory, params, support)};
      if (!is_valid(p)) continue;
      SymTuple gp = generic_point(p, 1);
      if (cells::classify(theory, gp, support) != cell) continue;
      out.push_back({shape.encode(), params});
    }
  };
  rec(0);
}

}  // namespace

DefSet compactify(const DefSet& s) {
  std::vector<TaggedCell> out;
  for (const auto& c : s.cells()) compactify_cell(s.theory(), c, s.support(), out);
  return DefSet(s.theory(), s.support(), std::move(out));
}

bool type_member(const TypeDesc& p, const DefSet& s) {
  if (p.shape.theory != s.theory()) fail(ErrorCode::TheoryMismatch, "type and set use different theories");
  auto arity = s.arity_of(p.tag());
  if (arity && *arity != p.shape.arity())
    fail(ErrorCode::ArityMismatch, "type " + p.str() + " has arity " + std::to_string(p.shape.arity()));
  SymTuple gp = generic_point(p, 1);
  return s.member(p.tag(), gp);
}

TypeDesc pushforward(const DefFun& f, const TypeDesc& p) {
  SymTuple gp = generic_point(p, 1);
  SymTagged y = f.apply_generic(p.tag(), gp);
  return read_back(f.theory(), y.tag, y.atoms);
}

DefSet derivative(const DefSet& z, const DefSet& ambient) {
  if (z.theory() != ambient.theory()) fail(ErrorCode::TheoryMismatch, "derivative across theories");
  for (const auto& c : z.cells())
    if (!TypeShape::is_encoded(c.tag)) fail(ErrorCode::NotASubsetOfCompactification, "tag '" + c.tag + "' is not a type");
  if (!is_subset(z, compactify(ambient)))
    fail(ErrorCode::NotASubsetOfCompactification, "the family is not inside the compactification of the ambient set");
  const Theory theory = z.theory();
  const Support& support = z.support();
  std::vector<TaggedCell> out;
  for (const auto& c : z.cells()) {
    TypeShape shape = TypeShape::decode(c.tag);
    DefSet family(theory, support, {{"p", c.cell}});
    DefSet limits = compactify(family);
    for (const auto& limit : limits.cells()) {
      TypeShape param_shape = TypeShape::decode(limit.tag);
      if (param_shape.rank() == 0) continue;
      TypeDesc u{param_shape, cells::witness(theory, limit.cell, support)};
      SymTuple params = generic_point(u, 1);
      SymTuple values = generic_point(shape, params, 2);
      TaggedTuple q = read_back(theory, shape.tag, values).encode();
      out.push_back({q.tag, cells::classify(theory, q.atoms, support)});
    }
  }
  return DefSet(theory, support, std::move(out));
}

std::vector<size_t> rank_counts(const DefSet& compactified) {
  std::vector<size_t> counts(1, 0);
  for (const auto& c : compactified.cells()) {
    size_t r = TypeShape::decode(c.tag).rank();
    if (counts.size() <= r) counts.resize(r + 1, 0);
    ++counts[r];
  }
  return counts;
}

std::string orbit_summary(const DefSet& compactified) {
  auto counts = rank_counts(compactified);
  std::string out = "orbits: principal=" + std::to_string(counts[0]);
  for (size_t r = 1; r < counts.size(); ++r) out += ", rank" + std::to_string(r) + "=" + std::to_string(counts[r]);
  return out;
}

std::vector<DefSet> rank_stratify(const DefSet& s) {
  DefSet all = compactify(s);
  auto counts = rank_counts(all);
  std::vector<std::vector<TaggedCell>> strata(counts.size());
  for (const auto& c : all.cells()) strata[TypeShape::decode(c.tag).rank()].push_back(c);
  std::vector<DefSet> out;
  for (auto& cells : strata) out.emplace_back(s.theory(), all.support(), std::move(cells));
  return out;
}

DefSet isolating_set(const TypeDesc& p) {
  if (p.shape.theory != Theory::Eq)
    fail(ErrorCode::UnsupportedTheory, "isolating sets are defined for EQ types; DLO uses truncated hyperrectangles");
  Support support(p.params);
  SymTuple gp = generic_point(p, 1);
  return DefSet(Theory::Eq, support, {{p.tag(), cells::classify(Theory::Eq, gp, support)}});
}

bool isolates(const TypeDesc& p, const std::string& tag, std::span<const SymAtom> x) {
  if (tag != p.tag()) return false;
  if (x.size() != p.shape.arity()) fail(ErrorCode::ArityMismatch, "tuple length differs from the arity of " + p.str());
  Support support(p.params);
  SymTuple gp = generic_point(p, 1);
  return cells::classify(Theory::Eq, gp, support) == cells::classify(Theory::Eq, x, support);
}

bool isolates(const TypeDesc& p, const TaggedTuple& x) {
  SymTuple lifted = lift(x.atoms);
  return isolates(p, x.tag, lifted);
}

}  // namespace atomcompact
