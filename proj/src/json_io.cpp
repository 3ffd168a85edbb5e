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

#include "atomcompact/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace atomcompact::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidDocument, what); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) bad("expected an object");
  auto it = doc.find(name);
  if (it == doc.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string str_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_string()) bad(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_array()) bad(std::string("field '") + name + "' must be an array");
  return v;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  bad("expected an atom or rational as a string");
}

Atom atom_from(const Json& v, Theory theory) { return Atom::parse(scalar_text(v), theory); }
Rational rational_from(const Json& v) { return parse_rational(scalar_text(v)); }

void check_schema(const Json& doc, const char* expected, bool required) {
  if (!doc.is_object()) bad("a document must be a JSON object");
  auto it = doc.find("schema");
  if (it == doc.end()) {
    if (required) bad(std::string("missing schema, expected '") + expected + "'");
    return;
  }
  if (!it->is_string() || it->get<std::string>() != expected)
    bad("unknown schema '" + (it->is_string() ? it->get<std::string>() : it->dump()) + "', expected '" + expected + "'");
}

Json support_json(const Support& s) {
  Json out = Json::array();
  for (const auto& a : s.atoms()) out.push_back(a.str());
  return out;
}

Support support_from(const Json& v, Theory theory) {
  if (!v.is_array()) bad("support must be an array");
  std::vector<Atom> atoms;
  for (const auto& a : v) atoms.push_back(atom_from(a, theory));
  return Support(atoms);
}

// Writes "assign" (and "order" for DLO) for a cell into `out`.
void write_cell(Json& out, Theory theory, const Cell& cell, const Support& support) {
  out["arity"] = cell.arity();
  Json assign = Json::array();
  std::map<int, std::map<int, std::vector<size_t>>> order;
  for (size_t i = 0; i < cell.arity(); ++i) {
    const Coord& c = cell.coords[i];
    if (theory == Theory::Eq) {
      assign.push_back(c.slot == kBlockSlot ? "block:" + std::to_string(c.rank) : "const:" + support[c.slot].str());
    } else if (c.slot % 2 == 1) {
      assign.push_back("const:" + support[c.slot / 2].str());
    } else {
      assign.push_back("interval:" + std::to_string(c.slot / 2));
      order[c.slot / 2][c.rank].push_back(i);
    }
  }
  out["assign"] = assign;
  if (theory == Theory::Dlo && !order.empty()) {
    Json o = Json::object();
    for (const auto& [j, blocks] : order) {
      Json list = Json::array();
      for (const auto& [r, coords] : blocks) list.push_back(coords);
      o[std::to_string(j)] = list;
    }
    out["order"] = o;
  }
}

Cell read_cell(const Json& doc, Theory theory, const Support& support) {
  const Json& assign = array_field(doc, "assign");
  if (doc.contains("arity") && (!doc["arity"].is_number_unsigned() || doc["arity"].get<size_t>() != assign.size()))
    bad("cell arity does not match its assignment");
  Cell cell;
  std::map<int, std::vector<size_t>> in_interval;
  for (size_t i = 0; i < assign.size(); ++i) {
    if (!assign[i].is_string()) bad("assignment entries must be strings");
    std::string e = assign[i].get<std::string>();
    auto colon = e.find(':');
    std::string kind = e.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : e.substr(colon + 1);
    if (kind == "const") {
      auto idx = support.index_of(Atom::parse(arg, theory));
      if (!idx) bad("constant " + arg + " is not in the support");
      int slot = theory == Theory::Eq ? static_cast<int>(*idx) : 2 * static_cast<int>(*idx) + 1;
      cell.coords.push_back({slot, 0});
    } else if (kind == "block" && theory == Theory::Eq) {
      if (arg.empty() || !std::all_of(arg.begin(), arg.end(), ::isdigit)) bad("bad block index '" + arg + "'");
      cell.coords.push_back({kBlockSlot, std::stoi(arg)});
    } else if (kind == "interval" && theory == Theory::Dlo) {
      if (arg.empty() || !std::all_of(arg.begin(), arg.end(), ::isdigit)) bad("bad interval index '" + arg + "'");
      int j = std::stoi(arg);
      if (j > static_cast<int>(support.size())) bad("interval " + arg + " does not exist over " + support.str());
      cell.coords.push_back({2 * j, 0});
      in_interval[j].push_back(i);
    } else {
      bad("bad assignment '" + e + "' for " + std::string(theory_name(theory)));
    }
  }
  if (theory == Theory::Dlo && !in_interval.empty()) {
    const Json* order = doc.contains("order") ? &doc["order"] : nullptr;
    for (const auto& [j, coords] : in_interval) {
      std::string key = std::to_string(j);
      if (!order || !order->contains(key)) {
        if (coords.size() > 1) bad("interval " + key + " holds several coordinates but has no order");
        continue;
      }
      const Json& blocks = (*order)[key];
      if (!blocks.is_array()) bad("order of interval " + key + " must be a list of blocks");
      std::set<size_t> listed;
      for (size_t r = 0; r < blocks.size(); ++r) {
        if (!blocks[r].is_array() || blocks[r].empty()) bad("order blocks must be nonempty lists");
        for (const auto& c : blocks[r]) {
          if (!c.is_number_unsigned()) bad("order entries must be coordinate indices");
          size_t i = c.get<size_t>();
          if (i >= cell.arity() || cell.coords[i].slot != 2 * j || !listed.insert(i).second)
            bad("order of interval " + key + " lists a coordinate not in that interval");
          cell.coords[i].rank = static_cast<int>(r);
        }
      }
      if (listed.size() != coords.size()) bad("order of interval " + key + " misses a coordinate");
    }
  }
  return cells::canonical(theory, cell);
}

Json term_json(const Term& t) { return t.str(); }

Term term_from(const Json& v, Theory theory) {
  if (!v.is_string()) bad("terms must be strings");
  std::string s = v.get<std::string>();
  if (s.rfind("in:", 0) == 0) {
    std::string n = s.substr(3);
    if (n.empty() || !std::all_of(n.begin(), n.end(), ::isdigit)) bad("bad term '" + s + "'");
    return Term::in(std::stoi(n));
  }
  if (s.rfind("const:", 0) == 0) return Term::cst(Atom::parse(s.substr(6), theory));
  bad("bad term '" + s + "'");
}

std::vector<Term> terms_from(const Json& v, Theory theory) {
  if (!v.is_array()) bad("terms must be an array");
  std::vector<Term> out;
  for (const auto& t : v) out.push_back(term_from(t, theory));
  return out;
}

Json terms_json(const std::vector<Term>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back(term_json(t));
  return out;
}

Json template_json(const TypeTemplate& t) { return Json{{"tag", t.shape.encode()}, {"terms", terms_json(t.params)}}; }

TypeTemplate template_from(const Json& v, Theory theory) {
  TypeTemplate t{TypeShape::decode(str_field(v, "tag")), terms_from(field(v, "terms"), theory)};
  if (t.shape.theory != theory) bad("type tag '" + t.shape.encode() + "' uses the wrong theory");
  if (t.params.size() != t.shape.param_count()) bad("type '" + t.shape.encode() + "' has the wrong number of parameters");
  return t;
}

std::string piece_tag(const Json& p) {
  if (p.contains("tag")) return str_field(p, "tag");
  if (p.contains("letter_tag") && p.contains("state_tag")) return product_tag(str_field(p, "letter_tag"), str_field(p, "state_tag"));
  bad("piece needs 'tag' or 'letter_tag' and 'state_tag'");
}

template <class Out, class F>
Piecewise<Out> pieces_from(const Json& doc, const DefSet& domain, F&& read_out) {
  Support support = doc.contains("support") ? support_from(doc["support"], domain.theory()) : domain.support();
  support = support.joined(domain.support());
  std::vector<std::pair<TaggedCell, Out>> pieces;
  for (const auto& p : array_field(doc, "pieces")) {
    TaggedCell c{piece_tag(p), read_cell(p, domain.theory(), support)};
    pieces.emplace_back(c, read_out(p));
  }
  return Piecewise<Out>(domain, support, std::move(pieces));
}

template <class Out, class F>
Json pieces_json(const Piecewise<Out>& map, F&& write_out) {
  Json out = Json::array();
  for (const auto& [cell, value] : map.pieces()) {
    Json p = {{"tag", cell.tag}};
    write_cell(p, map.theory(), cell.cell, map.support());
    write_out(p, value);
    out.push_back(p);
  }
  return out;
}

DefSet embedded_defset(const Json& doc, const char* name) { return defset_from_json(field(doc, name)); }

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidDocument, std::string("malformed JSON: ") + e.what());
  }
}

std::string schema_of(const Json& doc) {
  if (doc.is_object() && doc.contains("schema") && doc["schema"].is_string()) return doc["schema"].get<std::string>();
  return "";
}

Json to_json(const DefSet& s) {
  Json cells = Json::array();
  for (const auto& c : s.cells()) {
    Json j = {{"tag", c.tag}};
    write_cell(j, s.theory(), c.cell, s.support());
    cells.push_back(j);
  }
  return Json{{"schema", kDefSetSchema}, {"theory", theory_name(s.theory())}, {"support", support_json(s.support())}, {"cells", cells}};
}

DefSet defset_from_json(const Json& doc) {
  check_schema(doc, kDefSetSchema, false);
  try {
    Theory theory = parse_theory(str_field(doc, "theory"));
    Support support = support_from(field(doc, "support"), theory);
    std::vector<TaggedCell> cells;
    for (const auto& c : array_field(doc, "cells")) cells.push_back({str_field(c, "tag"), read_cell(c, theory, support)});
    return DefSet(theory, support, std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const TaggedTuple& x) {
  Json atoms = Json::array();
  for (const auto& a : x.atoms) atoms.push_back(a.str());
  return Json{{"tag", x.tag}, {"atoms", atoms}};
}

TaggedTuple tuple_from_json(const Json& doc, Theory theory) {
  TaggedTuple x{str_field(doc, "tag"), {}};
  for (const auto& a : array_field(doc, "atoms")) x.atoms.push_back(atom_from(a, theory));
  return x;
}

Json to_json(const DefFun& f) {
  return Json{{"schema", kDefFunSchema},
              {"domain", to_json(f.domain())},
              {"codomain", to_json(f.codomain())},
              {"support", support_json(f.support())},
              {"pieces", pieces_json(f.map(), [](Json& p, const FunOut& o) {
                 p["out"] = Json{{"tag", o.tag}, {"terms", terms_json(o.terms)}};
               })}};
}

DefFun deffun_from_json(const Json& doc) {
  check_schema(doc, kDefFunSchema, true);
  try {
    DefSet domain = embedded_defset(doc, "domain");
    DefSet codomain = embedded_defset(doc, "codomain");
    auto map = pieces_from<FunOut>(doc, domain, [&](const Json& p) {
      const Json& o = field(p, "out");
      return FunOut{str_field(o, "tag"), terms_from(field(o, "terms"), domain.theory())};
    });
    return DefFun(std::move(map), codomain);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const ScalarFun& f) {
  return Json{{"schema", kScalarFunSchema},
              {"domain", to_json(f.domain())},
              {"support", support_json(f.support())},
              {"pieces", pieces_json(f.map(), [](Json& p, const Rational& v) { p["value"] = format_rational(v); })}};
}

ScalarFun scalarfun_from_json(const Json& doc, const DefSet* domain) {
  check_schema(doc, kScalarFunSchema, domain == nullptr);
  try {
    if (!doc.contains("domain") && !domain) bad("missing field 'domain'");
    DefSet d = doc.contains("domain") ? embedded_defset(doc, "domain") : *domain;
    auto map = pieces_from<Rational>(doc, d, [](const Json& p) { return rational_from(field(p, "value")); });
    return ScalarFun(std::move(map));
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const Measure& mu) {
  Json atoms = Json::array();
  for (const auto& [p, w] : mu.atoms()) atoms.push_back(Json{{"type", to_json(p.encode())}, {"weight", format_rational(w)}});
  return Json{{"schema", kMeasureSchema}, {"base", to_json(mu.base())}, {"atoms", atoms}};
}

Measure measure_from_json(const Json& doc, const DefSet* base) {
  check_schema(doc, kMeasureSchema, base == nullptr);
  try {
    DefSet b = base && !doc.contains("base") ? *base : embedded_defset(doc, "base");
    WeightedTypes atoms;
    for (const auto& a : array_field(doc, "atoms")) {
      TypeDesc p = TypeDesc::decode(tuple_from_json(field(a, "type"), b.theory()));
      if (p.shape.theory != b.theory()) bad("type " + p.str() + " uses the wrong theory");
      atoms.emplace_back(p, rational_from(field(a, "weight")));
    }
    return Measure(b, std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

namespace {

Json weighted_templates_json(const std::vector<WeightedTemplate>& outs) {
  Json list = Json::array();
  for (const auto& o : outs) list.push_back(Json{{"type", template_json(o.type)}, {"weight", format_rational(o.weight)}});
  return list;
}

std::vector<WeightedTemplate> weighted_templates_from(const Json& v, Theory theory) {
  if (!v.is_array()) bad("kernel values must be arrays");
  std::vector<WeightedTemplate> out;
  for (const auto& o : v) out.push_back({template_from(field(o, "type"), theory), rational_from(field(o, "weight"))});
  return out;
}

}  // namespace

Json to_json(const Kernel& k) {
  return Json{{"schema", kKernelSchema},
              {"domain", to_json(k.domain())},
              {"codomain", to_json(k.codomain())},
              {"support", support_json(k.support())},
              {"pieces", pieces_json(k.map(), [](Json& p, const std::vector<WeightedTemplate>& outs) {
                 p["out"] = weighted_templates_json(outs);
               })}};
}

Kernel kernel_from_json(const Json& doc) {
  check_schema(doc, kKernelSchema, true);
  try {
    DefSet domain = embedded_defset(doc, "domain");
    DefSet codomain = embedded_defset(doc, "codomain");
    auto map = pieces_from<std::vector<WeightedTemplate>>(
        doc, domain, [&](const Json& p) { return weighted_templates_from(field(p, "out"), domain.theory()); });
    return Kernel(std::move(map), codomain);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const BasisExpansion& e) {
  Json terms = Json::array();
  for (const auto& [b, c] : e.terms) terms.push_back(Json{{"basis", to_json(encode_basis(b))}, {"coefficient", format_rational(c)}});
  return Json{{"schema", kExpansionSchema}, {"base", to_json(e.base)}, {"terms", terms}};
}

BasisExpansion expansion_from_json(const Json& doc) {
  check_schema(doc, kExpansionSchema, true);
  try {
    BasisExpansion e{embedded_defset(doc, "base"), {}};
    for (const auto& t : array_field(doc, "terms"))
      e.terms.emplace_back(decode_basis(tuple_from_json(field(t, "basis"), e.base.theory())), rational_from(field(t, "coefficient")));
    return e;
  } catch (const nlohmann::json::exception& ex) {
    bad(ex.what());
  }
}

Json to_json(const LinMap& m) {
  Json terms = Json::array();
  for (const auto& [b, c] : m.terms) terms.push_back(Json{{"basis", to_json(b.encode())}, {"coefficient", format_rational(c)}});
  return Json{{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"terms", terms}};
}

Json to_json(const Automaton& a) {
  Json doc = {{"schema", kAutomatonSchema}, {"kind", kind_name(a)}};
  std::visit([&](const auto& m) {
    doc["states"] = to_json(m.states);
    doc["alphabet"] = to_json(m.alphabet);
  }, a);
  auto delta_json = [&](const auto& map, auto&& write_out) {
    doc["support"] = support_json(map.support());
    Json pieces = pieces_json(map, write_out);
    doc["delta"] = pieces;
  };
  if (const auto* m = std::get_if<DetAutomaton>(&a)) {
    delta_json(m->delta.map(), [](Json& p, const FunOut& o) { p["out"] = Json{{"tag", o.tag}, {"terms", terms_json(o.terms)}}; });
    doc["initial"] = to_json(m->initial);
    doc["finals"] = to_json(m->finals);
  } else if (const auto* m = std::get_if<UltraAutomaton>(&a)) {
    delta_json(m->delta, [](Json& p, const TypeTemplate& t) { p["out"] = Json{{"type", template_json(t)}}; });
    doc["initial"] = to_json(m->initial);
    doc["finals"] = to_json(m->finals);
  } else if (const auto* m = std::get_if<WeightedAutomaton>(&a)) {
    delta_json(m->delta, [](Json& p, const std::vector<WeightedOut>& outs) {
      Json list = Json::array();
      for (const auto& o : outs) list.push_back(Json{{"tag", o.tag}, {"terms", terms_json(o.terms)}, {"weight", format_rational(o.weight)}});
      p["out"] = list;
    });
    Json init = Json::array();
    for (const auto& [x, c] : m->initial.entries()) {
      Json e = to_json(x);
      e["weight"] = format_rational(c);
      init.push_back(e);
    }
    doc["initial"] = init;
    doc["final"] = to_json(m->final);
  } else {
    const auto& p = std::get<ProbAutomaton>(a);
    delta_json(p.delta.map(), [](Json& j, const std::vector<WeightedTemplate>& outs) { j["out"] = weighted_templates_json(outs); });
    doc["initial"] = to_json(p.initial);
    doc["final"] = to_json(p.final);
  }
  return doc;
}

Automaton automaton_from_json(const Json& doc) {
  check_schema(doc, kAutomatonSchema, true);
  try {
    std::string kind = str_field(doc, "kind");
    DefSet states = embedded_defset(doc, "states");
    DefSet alphabet = embedded_defset(doc, "alphabet");
    if (states.theory() != alphabet.theory()) fail(ErrorCode::TheoryMismatch, "states and alphabet use different theories");
    const Theory theory = states.theory();
    DefSet domain = set_product(alphabet, states);
    Json delta_doc = {{"pieces", field(doc, "delta")}};
    if (doc.contains("support")) delta_doc["support"] = doc["support"];
    if (kind == "det") {
      auto map = pieces_from<FunOut>(delta_doc, domain, [&](const Json& p) {
        const Json& o = field(p, "out");
        return FunOut{str_field(o, "tag"), terms_from(field(o, "terms"), theory)};
      });
      DetAutomaton a{states, alphabet, DefFun(std::move(map), states), tuple_from_json(field(doc, "initial"), theory),
                     embedded_defset(doc, "finals")};
      a.validate();
      return a;
    }
    if (kind == "ultra") {
      auto map = pieces_from<TypeTemplate>(delta_doc, domain, [&](const Json& p) { return template_from(field(field(p, "out"), "type"), theory); });
      UltraAutomaton a{states, alphabet, std::move(map), tuple_from_json(field(doc, "initial"), theory), embedded_defset(doc, "finals")};
      a.validate();
      return a;
    }
    if (kind == "weighted") {
      auto map = pieces_from<std::vector<WeightedOut>>(delta_doc, domain, [&](const Json& p) {
        std::vector<WeightedOut> outs;
        for (const auto& o : array_field(p, "out"))
          outs.push_back({str_field(o, "tag"), terms_from(field(o, "terms"), theory), rational_from(field(o, "weight"))});
        return outs;
      });
      FreeVec initial;
      for (const auto& e : array_field(doc, "initial")) initial.add(tuple_from_json(e, theory), rational_from(field(e, "weight")));
      WeightedAutomaton a{states, alphabet, std::move(map), std::move(initial), scalarfun_from_json(field(doc, "final"), &states)};
      a.validate();
      return a;
    }
    if (kind == "prob") {
      auto map = pieces_from<std::vector<WeightedTemplate>>(
          delta_doc, domain, [&](const Json& p) { return weighted_templates_from(field(p, "out"), theory); });
      ProbAutomaton a{states, alphabet, Kernel(std::move(map), states), measure_from_json(field(doc, "initial"), &states),
                      scalarfun_from_json(field(doc, "final"), &states)};
      a.validate();
      return a;
    }
    bad("unknown automaton kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

TaggedTuple parse_letter(const std::string& raw, const DefSet& alphabet) {
  std::string text = raw;
  text.erase(0, text.find_first_not_of(" \t"));
  text.erase(text.find_last_not_of(" \t") + 1);
  auto arities = alphabet.arities();
  auto open = text.find('(');
  if (open != std::string::npos && text.back() == ')') {
    TaggedTuple x{text.substr(0, open), {}};
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    size_t pos = 0;
    while (pos < inner.size()) {
      size_t next = inner.find_first_of(" ,", pos);
      std::string tok = inner.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (!tok.empty()) x.atoms.push_back(Atom::parse(tok, alphabet.theory()));
      pos = next == std::string::npos ? inner.size() : next + 1;
    }
    auto arity = arities.find(x.tag);
    if (arity == arities.end() || arity->second != x.atoms.size() || !alphabet.member(x))
      fail(ErrorCode::LetterNotInAlphabet, "letter '" + text + "' is not in the alphabet");
    return x;
  }
  if (arities.count(text) && arities[text] == 0) return {text, {}};
  std::vector<std::string> unary;
  for (const auto& [tag, n] : arities)
    if (n == 1) unary.push_back(tag);
  if (unary.size() != 1)
    fail(ErrorCode::LetterNotInAlphabet, "cannot read letter '" + text + "': write it as tag(atoms)");
  try {
    return {unary[0], {Atom::parse(text, alphabet.theory())}};
  } catch (const Error&) {
    fail(ErrorCode::LetterNotInAlphabet, "cannot read letter '" + text + "'");
  }
}

Word parse_word(const std::string& text, const DefSet& alphabet) {
  Word w;
  if (text.find_first_not_of(" \t") == std::string::npos) return w;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      w.push_back(parse_letter(cur, alphabet));
      cur.clear();
    } else {
      cur += c;
    }
  }
  w.push_back(parse_letter(cur, alphabet));
  return w;
}

}  // namespace atomcompact::io
