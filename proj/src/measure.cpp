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

#include "atomcompact/measure.hpp"

#include <algorithm>
#include <map>

namespace atomcompact {

WeightedTypes merge_types(WeightedTypes atoms) {
  std::map<TaggedTuple, std::pair<TypeDesc, Rational>> merged;
  for (auto& [p, w] : atoms) {
    auto key = p.encode();
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, std::make_pair(p, w));
    else
      it->second.second += w;
  }
  WeightedTypes out;
  for (auto& [k, pw] : merged)
    if (pw.second != 0) out.push_back(pw);
  return out;
}

Measure::Measure(DefSet base, WeightedTypes atoms) : base_(std::move(base)), atoms_(std::move(atoms)) {
  Rational total = 0;
  std::vector<TaggedTuple> seen;
  for (auto& [p, w] : atoms_) {
    w.canonicalize();
    if (w <= 0 || w > 1) fail(ErrorCode::InvalidArgument, "weight " + format_rational(w) + " is outside (0,1]");
    validate(p);
    if (!type_member(p, base_)) fail(ErrorCode::NotASubsetOfCompactification, p.str() + " is not a type on the base set");
    seen.push_back(p.encode());
    total += w;
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail(ErrorCode::InvalidArgument, "a type is listed twice in the measure");
  if (total != 1) fail(ErrorCode::InvalidArgument, "weights sum to " + format_rational(total) + ", not 1");
  atoms_ = merge_types(std::move(atoms_));
}

Measure Measure::point_mass(const DefSet& base, const TaggedTuple& x) {
  return Measure(base, {{TypeDesc::principal(base.theory(), x), 1}});
}

bool same_measure(const Measure& a, const Measure& b) {
  return same_set(a.base(), b.base()) && merge_types(a.atoms()) == merge_types(b.atoms());
}

Rational measure_eval(const Measure& mu, const DefSet& d) {
  if (!is_subset(d, mu.base())) fail(ErrorCode::NotASubset, "the evaluated set is not inside the base");
  Rational out = 0;
  for (const auto& [p, w] : mu.atoms())
    if (type_member(p, d)) out += w;
  return out;
}

Rational expectation(const Measure& mu, const ScalarFun& f) {
  if (!is_subset(mu.base(), f.domain())) fail(ErrorCode::NotTotal, "the function is not defined on the whole base");
  Rational out = 0;
  for (const auto& [p, w] : mu.atoms()) {
    SymTuple gp = generic_point(p, 1);
    out += w * f(p.tag(), gp);
  }
  return out;
}

TypeDesc product_type(const TypeDesc& left, const TypeDesc& right, ProductOrder order) {
  if (left.shape.theory != right.shape.theory) fail(ErrorCode::TheoryMismatch, "product of types across theories");
  bool left_inner = order == ProductOrder::LeftFirst;
  SymTuple values = generic_point(left, left_inner ? 2 : 1);
  SymTuple r = generic_point(right, left_inner ? 1 : 2);
  values.insert(values.end(), r.begin(), r.end());
  return read_back(left.shape.theory, product_tag(left.tag(), right.tag()), values);
}

Measure product_measure(const Measure& p, const Measure& q, ProductOrder order) {
  if (p.base().theory() != q.base().theory()) fail(ErrorCode::TheoryMismatch, "product of measures across theories");
  WeightedTypes atoms;
  for (const auto& [a, w] : p.atoms())
    for (const auto& [b, v] : q.atoms()) atoms.emplace_back(product_type(a, b, order), w * v);
  return Measure(set_product(p.base(), q.base()), merge_types(std::move(atoms)));
}

namespace {

TypeDesc instantiate(const TypeTemplate& t, std::span<const Atom> input) {
  TypeDesc p{t.shape, {}};
  for (const auto& term : t.params) {
    if (!term.is_input()) {
      p.params.push_back(term.constant);
      continue;
    }
    if (static_cast<size_t>(term.input) >= input.size())
      fail(ErrorCode::KernelNotDefinable, "term in:" + std::to_string(term.input) + " refers outside the input cell");
    p.params.push_back(input[term.input]);
  }
  return p;
}

}  // namespace

Kernel::Kernel(Piecewise<std::vector<WeightedTemplate>> map, DefSet codomain)
    : map_(std::move(map)), codomain_(std::move(codomain)) {
  if (map_.theory() != codomain_.theory()) fail(ErrorCode::TheoryMismatch, "kernel domain and codomain use different theories");
  std::vector<Atom> consts;
  for (const auto& [cell, outs] : map_.pieces()) {
    Rational total = 0;
    for (const auto& o : outs) {
      if (o.weight <= 0) fail(ErrorCode::InvalidArgument, "kernel weights must be positive");
      total += o.weight;
      for (const auto& t : o.type.params)
        if (t.is_input() && static_cast<size_t>(t.input) >= cell.cell.arity())
          fail(ErrorCode::KernelNotDefinable, "term in:" + std::to_string(t.input) + " refers outside the input cell");
      auto c = constants_of(o.type.params);
      consts.insert(consts.end(), c.begin(), c.end());
    }
    if (total != 1) fail(ErrorCode::InvalidArgument, "kernel weights of a piece sum to " + format_rational(total));
  }
  map_ = map_.refined(Support(consts));
  Support check = map_.support().joined(codomain_.support());
  for (const auto& [cell, outs] : map_.pieces()) {
    for (const auto& sub : cells::refine(theory(), cell.cell, map_.support(), check)) {
      auto w = cells::witness(theory(), sub, check);
      for (const auto& o : outs) {
        TypeDesc p = instantiate(o.type, w);
        if (!is_valid(p) || !type_member(p, codomain_))
          fail(ErrorCode::InvalidArgument, "kernel value " + p.str() + " is not a type on the codomain");
      }
    }
  }
}

WeightedTypes Kernel::at(const TaggedTuple& x) const {
  const auto& outs = map_.at(x);
  WeightedTypes out;
  for (const auto& o : outs) out.emplace_back(instantiate(o.type, x.atoms), o.weight);
  return merge_types(std::move(out));
}

WeightedTypes Kernel::at_generic(const std::string& tag, std::span<const SymAtom> x) const {
  const auto& outs = map_.at(tag, x);
  WeightedTypes out;
  for (const auto& o : outs) out.emplace_back(flatten(o.type, x), o.weight);
  return merge_types(std::move(out));
}

Kernel Kernel::from_rule(const DefSet& domain, const DefSet& codomain, const Support& support,
                         const std::function<WeightedTypes(const TaggedCell&, const std::vector<Atom>&)>& rule) {
  Support s = support.joined(domain.support());
  auto map = Piecewise<std::vector<WeightedTemplate>>::from_rule(domain, s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    std::vector<WeightedTemplate> out;
    for (const auto& [q, weight] : merge_types(rule(c, w))) {
      auto terms = symbolize(q.params, w, s);
      out.push_back({TypeTemplate{q.shape, std::move(terms)}, weight});
    }
    return out;
  });
  return Kernel(std::move(map), codomain);
}

Kernel Kernel::unit(const DefSet& x) {
  return from_rule(x, x, x.support(), [&](const TaggedCell& c, const std::vector<Atom>& w) {
    return WeightedTypes{{TypeDesc::principal(x.theory(), {c.tag, w}), 1}};
  });
}

Kernel Kernel::from_function(const DefFun& f) {
  return from_rule(f.domain(), f.codomain(), f.support(), [&](const TaggedCell& c, const std::vector<Atom>& w) {
    return WeightedTypes{{TypeDesc::principal(f.theory(), f.apply({c.tag, w})), 1}};
  });
}

Measure extend(const Kernel& g, const Measure& mu) {
  if (!is_subset(mu.base(), g.domain())) fail(ErrorCode::NotInDomain, "the measure lives outside the kernel's domain");
  WeightedTypes out;
  for (const auto& [p, w] : mu.atoms()) {
    SymTuple gp = generic_point(p, 1);
    for (const auto& [q, v] : g.at_generic(p.tag(), gp)) out.emplace_back(q, w * v);
  }
  return Measure(g.codomain(), merge_types(std::move(out)));
}

Kernel kleisli_compose(const Kernel& f, const Kernel& g) {
  if (!is_subset(f.codomain(), g.domain())) fail(ErrorCode::NotInDomain, "the first kernel lands outside the second's domain");
  Support s = f.support().joined(g.support());
  return Kernel::from_rule(f.domain(), g.codomain(), s, [&](const TaggedCell& c, const std::vector<Atom>& w) {
    WeightedTypes out;
    for (const auto& [p, a] : f.at({c.tag, w})) {
      SymTuple gp = generic_point(p, 1);
      for (const auto& [q, b] : g.at_generic(p.tag(), gp)) out.emplace_back(q, a * b);
    }
    return out;
  });
}

bool same_kernel(const Kernel& a, const Kernel& b) {
  if (!same_set(a.domain(), b.domain()) || !same_set(a.codomain(), b.codomain())) return false;
  Support s = a.support().joined(b.support());
  DefSet refined = a.domain().refine(s);
  for (const auto& c : refined.cells()) {
    auto w = cells::witness(a.theory(), c.cell, s);
    if (a.at({c.tag, w}) != b.at({c.tag, w})) return false;
  }
  return true;
}

}  // namespace atomcompact
