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

#include "atomcompact/c_api.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "atomcompact/json_io.hpp"
#include "atomcompact/oracle.hpp"
#include "atomcompact/version.hpp"

using namespace atomcompact;

struct ac_defset {
  DefSet value;
};
struct ac_scalarfun {
  ScalarFun value;
};
struct ac_measure {
  Measure value;
};
struct ac_kernel {
  Kernel value;
};
struct ac_expansion {
  BasisExpansion value;
};
struct ac_automaton {
  Automaton value;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
ac_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return AC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<ac_status>(e.code());
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return AC_INTERNAL;
  } catch (...) {
    g_last_error = "internal: unknown exception";
    return AC_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(name) + " is NULL");
}

std::string text_of(const io::Json& j) { return j.dump(2); }

Truncation truncation_for(Theory theory, const Support& support, size_t room, const char* pool) {
  if (!pool || !*pool) return Truncation::covering(theory, support, room);
  Truncation t{theory, {}};
  std::string s(pool);
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t next = s.find(',', pos);
    std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) t.pool.push_back(Atom::parse(tok, theory));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  std::sort(t.pool.begin(), t.pool.end());
  t.pool.erase(std::unique(t.pool.begin(), t.pool.end()), t.pool.end());
  return t;
}

size_t max_arity(const DefSet& s) {
  size_t n = 0;
  for (const auto& [tag, a] : s.arities()) n = std::max(n, a);
  return n;
}

template <class Handle, class Value>
void emit(Handle** out, Value v) {
  *out = new Handle{std::move(v)};
}

}  // namespace

extern "C" {

const char* ac_version(void) { return kVersion; }
const char* ac_schema_versions(void) { return kSchemaVersions; }
const char* ac_last_error(void) { return g_last_error.c_str(); }
void ac_string_free(char* s) { std::free(s); }

const char* ac_status_name(ac_status status) {
  if (status == AC_OK) return "Ok";
  if (status == AC_INTERNAL) return "Internal";
  static thread_local std::string name;
  name = std::string(error_code_name(static_cast<ErrorCode>(status)));
  return name.c_str();
}

#define AC_DOCUMENT(type, reader)                                                   \
  ac_status ac_##type##_parse(const char* json, ac_##type** out) {                  \
    return guard([&] {                                                              \
      need(json, "json");                                                           \
      need(out, "out");                                                             \
      emit(out, reader(io::parse(json)));                                           \
    });                                                                             \
  }                                                                                 \
  ac_status ac_##type##_to_json(const ac_##type* h, char** out) {                  \
    return guard([&] {                                                              \
      need(h, #type);                                                               \
      need(out, "out");                                                             \
      *out = dup(text_of(io::to_json(h->value)));                                   \
    });                                                                             \
  }                                                                                 \
  void ac_##type##_free(ac_##type* h) { delete h; }

AC_DOCUMENT(defset, [](const io::Json& j) {
  // Embedded sets may omit the schema; top-level documents may not.
  if (j.is_object() && !j.contains("schema")) fail(ErrorCode::InvalidDocument, "missing schema, expected 'atomcompact/defset-v1'");
  return io::defset_from_json(j);
})
AC_DOCUMENT(scalarfun, [](const io::Json& j) { return io::scalarfun_from_json(j); })
AC_DOCUMENT(measure, [](const io::Json& j) { return io::measure_from_json(j); })
AC_DOCUMENT(kernel, io::kernel_from_json)
AC_DOCUMENT(expansion, io::expansion_from_json)
AC_DOCUMENT(automaton, io::automaton_from_json)

#undef AC_DOCUMENT

ac_status ac_defset_summary(const ac_defset* s, char** out) {
  return guard([&] {
    need(s, "set");
    need(out, "out");
    *out = dup(s->value.str());
  });
}

ac_status ac_defset_orbit_count(const ac_defset* s, size_t* out) {
  return guard([&] {
    need(s, "set");
    need(out, "out");
    *out = s->value.orbit_count();
  });
}

ac_status ac_automaton_kind(const ac_automaton* a, char** out) {
  return guard([&] {
    need(a, "automaton");
    need(out, "out");
    *out = dup(std::string(kind_name(a->value)));
  });
}

ac_status ac_compactify(const ac_defset* s, ac_defset** out) {
  return guard([&] {
    need(s, "set");
    need(out, "out");
    emit(out, compactify(s->value));
  });
}

ac_status ac_orbit_summary(const ac_defset* compactified, char** out) {
  return guard([&] {
    need(compactified, "set");
    need(out, "out");
    *out = dup(orbit_summary(compactified->value));
  });
}

ac_status ac_derivative(const ac_defset* z, const ac_defset* ambient, ac_defset** out) {
  return guard([&] {
    need(z, "z");
    need(out, "out");
    if (!ambient) fail(ErrorCode::AmbientMissing, "derivative needs the ambient set");
    emit(out, derivative(z->value, ambient->value));
  });
}

ac_status ac_stratify(const ac_defset* s, char** out_json) {
  return guard([&] {
    need(s, "set");
    need(out_json, "out");
    io::Json list = io::Json::array();
    for (const auto& layer : rank_stratify(s->value)) list.push_back(io::to_json(layer));
    *out_json = dup(text_of(list));
  });
}

ac_status ac_decompose(const ac_scalarfun* f, ac_expansion** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    emit(out, decompose(f->value));
  });
}

ac_status ac_expansion_verify(const ac_expansion* e, const ac_scalarfun* f, size_t samples, uint64_t seed, int* exact,
                              char** report) {
  return guard([&] {
    need(e, "expansion");
    need(f, "function");
    RoundTrip r = verify_expansion(e->value, f->value, samples, seed);
    if (exact) *exact = r.exact() ? 1 : 0;
    if (report)
      *report = dup("generic points " + std::to_string(r.generic_ok) + "/" + std::to_string(r.generic_checked) +
                    ", samples " + std::to_string(r.samples_ok) + "/" + std::to_string(r.samples) + ", seed " +
                    std::to_string(seed));
  });
}

ac_status ac_hom_basis(const ac_defset* x, const ac_defset* y, ac_defset** out) {
  return guard([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    emit(out, hom_basis(x->value, y->value));
  });
}

ac_status ac_measure_eval(const ac_measure* mu, const ac_defset* d, char** value) {
  return guard([&] {
    need(mu, "measure");
    need(d, "set");
    need(value, "value");
    *value = dup(format_rational(measure_eval(mu->value, d->value)));
  });
}

ac_status ac_expectation(const ac_measure* mu, const ac_scalarfun* f, char** value) {
  return guard([&] {
    need(mu, "measure");
    need(f, "function");
    need(value, "value");
    *value = dup(format_rational(expectation(mu->value, f->value)));
  });
}

ac_status ac_product_measure(const ac_measure* p, const ac_measure* q, ac_product_order order, ac_measure** out) {
  return guard([&] {
    need(p, "p");
    need(q, "q");
    need(out, "out");
    if (order != AC_LEFT_FIRST && order != AC_RIGHT_FIRST) fail(ErrorCode::InvalidArgument, "unknown product order");
    emit(out, product_measure(p->value, q->value, order == AC_LEFT_FIRST ? ProductOrder::LeftFirst : ProductOrder::RightFirst));
  });
}

ac_status ac_kleisli(const ac_kernel* f, const ac_kernel* g, ac_kernel** out) {
  return guard([&] {
    need(f, "f");
    need(g, "g");
    need(out, "out");
    emit(out, kleisli_compose(f->value, g->value));
  });
}

ac_status ac_extend(const ac_kernel* g, const ac_measure* mu, ac_measure** out) {
  return guard([&] {
    need(g, "kernel");
    need(mu, "measure");
    need(out, "out");
    emit(out, extend(g->value, mu->value));
  });
}

ac_status ac_run(const ac_automaton* a, const char* word, int* accepted, char** value) {
  return guard([&] {
    need(a, "automaton");
    need(word, "word");
    Word w = io::parse_word(word, alphabet_of(a->value));
    if (accepted) *accepted = -1;
    if (const auto* m = std::get_if<DetAutomaton>(&a->value)) {
      bool ok = run_det(*m, w);
      if (accepted) *accepted = ok;
      if (value) *value = dup(ok ? "1" : "0");
    } else if (const auto* m = std::get_if<UltraAutomaton>(&a->value)) {
      bool ok = accepts_ultra(*m, w);
      if (accepted) *accepted = ok;
      if (value) *value = dup(ok ? "1" : "0");
    } else if (const auto* m = std::get_if<WeightedAutomaton>(&a->value)) {
      Rational r = run_weighted(*m, w);
      if (value) *value = dup(format_rational(r));
    } else {
      Rational r = run_prob(std::get<ProbAutomaton>(a->value), w);
      if (value) *value = dup(format_rational(r));
    }
  });
}

ac_status ac_determinize(const ac_automaton* a, ac_automaton** out) {
  return guard([&] {
    need(a, "automaton");
    need(out, "out");
    const auto* m = std::get_if<UltraAutomaton>(&a->value);
    if (!m) fail(ErrorCode::InvalidArgument, "determinize needs an ultra automaton");
    emit(out, Automaton(determinize_ultra(*m)));
  });
}

ac_status ac_to_monoid(const ac_automaton* a, const char* pool, const char* word, char** out_json) {
  return guard([&] {
    need(a, "automaton");
    need(out_json, "out");
    WeightedAutomaton w;
    if (const auto* m = std::get_if<WeightedAutomaton>(&a->value)) {
      w = *m;
    } else if (const auto* m = std::get_if<ProbAutomaton>(&a->value)) {
      w = as_weighted(*m);
    } else {
      fail(ErrorCode::InvalidArgument, "to-monoid needs a weighted or prob automaton");
    }
    Truncation t = truncation_for(w.alphabet.theory(), w.delta.support(), max_arity(w.alphabet), pool);
    std::map<TaggedTuple, LinMap> cache;
    io::Json letters = io::Json::array();
    for (const auto& letter : materialize(w.alphabet, t))
      letters.push_back(io::Json{{"letter", io::to_json(letter)}, {"map", io::to_json(letter_map(w, letter))}});
    io::Json doc = {{"schema", io::kMonoidSchema},
                    {"states", io::to_json(w.states)},
                    {"pool", t.str()},
                    {"letters", letters}};
    if (word) {
      Word wd = io::parse_word(word, w.alphabet);
      doc["word"] = word;
      doc["word_map"] = io::to_json(word_map(w, wd, &cache));
      doc["value"] = format_rational(run_monoid(w, wd, &cache));
    }
    *out_json = dup(text_of(doc));
  });
}

ac_status ac_oracle_materialize(const ac_defset* s, const char* pool, char** out_json) {
  return guard([&] {
    need(s, "set");
    need(out_json, "out");
    Truncation t = truncation_for(s->value.theory(), s->value.support(), max_arity(s->value), pool);
    io::Json points = io::Json::array();
    for (const auto& x : materialize(s->value, t)) points.push_back(io::to_json(x));
    *out_json = dup(text_of(io::Json{{"pool", t.str()}, {"count", points.size()}, {"points", points}}));
  });
}

ac_status ac_oracle_rank(const ac_defset* basis, const ac_defset* domain, const char* pool, size_t* rank,
                         size_t* columns, char** report) {
  return guard([&] {
    need(basis, "basis");
    need(domain, "domain");
    const DefSet& d = domain->value;
    Support joint = d.support().joined(basis->value.support());
    Truncation t = truncation_for(d.theory(), joint, max_arity(d), pool);
    std::vector<BasisElement> elements;
    for (const auto& encoded : materialize(basis->value, t)) elements.push_back(decode_basis(encoded));
    size_t r = rank_of(elements, d, t);
    if (rank) *rank = r;
    if (columns) *columns = elements.size();
    if (report)
      *report = dup("rank " + std::to_string(r) + " of " + std::to_string(elements.size()) + " basis elements, pool " + t.str());
  });
}

ac_status ac_oracle_differential(const ac_automaton* a, const char* pool, size_t n_words, uint64_t seed, int* all_agree,
                                 char** report) {
  return guard([&] {
    need(a, "automaton");
    const DefSet& alphabet = alphabet_of(a->value);
    Support support = std::visit([](const auto& m) { return m.states.support().joined(m.alphabet.support()); }, a->value);
    Truncation t = truncation_for(alphabet.theory(), support, std::max<size_t>(5, max_arity(alphabet) + 2), pool);
    DifferentialReport r = differential_run(a->value, t, n_words, seed);
    if (all_agree) *all_agree = r.all_agree() ? 1 : 0;
    if (report) *report = dup(r.str());
  });
}

}  // extern "C"
