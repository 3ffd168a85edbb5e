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

#include <atomcompact/c_api.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;

// Thrown to leave the dispatcher with a specific exit code.
struct Exit {
  int code;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using DefSetPtr = std::unique_ptr<ac_defset, Deleter<ac_defset, ac_defset_free>>;
using ScalarFunPtr = std::unique_ptr<ac_scalarfun, Deleter<ac_scalarfun, ac_scalarfun_free>>;
using MeasurePtr = std::unique_ptr<ac_measure, Deleter<ac_measure, ac_measure_free>>;
using KernelPtr = std::unique_ptr<ac_kernel, Deleter<ac_kernel, ac_kernel_free>>;
using ExpansionPtr = std::unique_ptr<ac_expansion, Deleter<ac_expansion, ac_expansion_free>>;
using AutomatonPtr = std::unique_ptr<ac_automaton, Deleter<ac_automaton, ac_automaton_free>>;

void check(ac_status status) {
  if (status == AC_OK) return;
  std::cerr << "error: " << ac_last_error() << "\n";
  throw Exit{kExitInvalid};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  ac_string_free(s);
  return out;
}

std::string read_file(const std::string& path, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n\n" << app.help();
    throw Exit{kExitUsage};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class Ptr, class Handle>
Ptr load(ac_status (*parse)(const char*, Handle**), const std::string& path, const CLI::App& app) {
  std::string text = read_file(path, app);
  Handle* h = nullptr;
  check(parse(text.c_str(), &h));
  return Ptr(h);
}

DefSetPtr load_set(const std::string& path, const CLI::App& app) { return load<DefSetPtr>(ac_defset_parse, path, app); }

// Writes a document to --out, or to stdout when no path was given.
void emit(const std::string& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    throw Exit{kExitUsage};
  }
  f << doc << "\n";
  std::cout << "wrote " << out << "\n";
}

template <class Handle>
std::string to_json(ac_status (*writer)(const Handle*, char**), const Handle* h) {
  char* s = nullptr;
  check(writer(h, &s));
  return take(s);
}

std::string summary(const ac_defset* s) {
  char* out = nullptr;
  check(ac_orbit_summary(s, &out));
  return take(out);
}

size_t orbit_count(const ac_defset* s) {
  size_t n = 0;
  check(ac_defset_orbit_count(s, &n));
  return n;
}

const char* pool_arg(const std::string& pool) { return pool.empty() ? nullptr : pool.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definable sets with atoms: compactifications, free vector spaces, measures and automata."};
  app.set_version_flag("--version", std::string("atomcompact ") + ac_version() + "\nschemas: " + ac_schema_versions());
  app.require_subcommand(1);

  std::string in1, in2, out, pool, word, kind, order = "left";
  uint64_t seed = 1;
  size_t samples = 100, words = 500, max_steps = 8;

  auto* compactify = app.add_subcommand("compactify", "Compactify a definable set and report its orbits by rank");
  compactify->add_option("set", in1, "defset document")->required();
  compactify->add_option("--out", out, "write the compactification here");

  auto* decompose = app.add_subcommand("decompose", "Expand a scalar function in the dual basis");
  decompose->add_option("function", in1, "scalarfun document")->required();
  decompose->add_option("--out", out, "write the expansion here");
  decompose->add_option("--samples", samples, "concrete points for the round-trip check");
  decompose->add_option("--seed", seed, "sampling seed");

  auto* hom = app.add_subcommand("hom-basis", "Basis of the linear maps F(x) -> F(y)");
  hom->add_option("x", in1, "source defset")->required();
  hom->add_option("y", in2, "target defset")->required();
  hom->add_option("--out", out, "write the basis here");

  auto* meval = app.add_subcommand("measure-eval", "Measure of a definable set, or expectation of a scalar function");
  meval->add_option("measure", in1, "measure document")->required();
  meval->add_option("target", in2, "defset or scalarfun document")->required();

  auto* product = app.add_subcommand("product", "Product of two measures");
  product->add_option("p", in1, "left measure")->required();
  product->add_option("q", in2, "right measure")->required();
  product->add_option("--order", order, "which factor is sampled first")->check(CLI::IsMember({"left", "right"}));
  product->add_option("--out", out, "write the product here");

  auto* kleisli = app.add_subcommand("kleisli", "Compose two kernels, g after f");
  kleisli->add_option("f", in1, "first kernel")->required();
  kleisli->add_option("g", in2, "second kernel")->required();
  kleisli->add_option("--out", out, "write the composite here");

  auto* run = app.add_subcommand("run", "Run an automaton on a word");
  run->add_option("automaton", in1, "automaton document")->required();
  run->add_option("--kind", kind, "expected kind")->check(CLI::IsMember({"det", "ultra", "weighted", "prob"}));
  run->add_option("--word", word, "comma-separated letters, e.g. \"3,#\"")->required();

  auto* determinize = app.add_subcommand("determinize", "Deterministic machine equivalent to an ultra automaton");
  determinize->add_option("automaton", in1, "ultra automaton document")->required();
  determinize->add_option("--out", out, "write the machine here");

  auto* monoid = app.add_subcommand("to-monoid", "Letter maps of a weighted or prob automaton");
  monoid->add_option("automaton", in1, "automaton document")->required();
  monoid->add_option("--pool", pool, "comma-separated atoms used to list letters");
  monoid->add_option("--word", word, "also report the map and value of this word");
  monoid->add_option("--out", out, "write the monoid document here");

  auto* oracle = app.add_subcommand("oracle", "Finite truncation checks");
  oracle->require_subcommand(1);
  auto* materialize = oracle->add_subcommand("materialize", "List the points of a set inside a pool");
  materialize->add_option("set", in1, "defset document")->required();
  materialize->add_option("--pool", pool, "comma-separated atoms");
  auto* rank = oracle->add_subcommand("rank", "Rank of basis elements evaluated on a pool");
  rank->add_option("basis", in1, "defset of encoded basis elements")->required();
  rank->add_option("domain", in2, "domain defset")->required();
  rank->add_option("--pool", pool, "comma-separated atoms");
  auto* differential = oracle->add_subcommand("differential", "Cross-check two semantics of an automaton");
  differential->add_option("automaton", in1, "automaton document")->required();
  differential->add_option("--pool", pool, "comma-separated atoms");
  differential->add_option("--words", words, "number of sampled words");
  differential->add_option("--seed", seed, "sampling seed");

  auto* deriv = app.add_subcommand("derivative", "Iterate the limit-point derivative of a compactification");
  deriv->add_option("set", in1, "defset document")->required();
  deriv->add_option("--max-steps", max_steps, "stop after this many steps");
  deriv->add_option("--out", out, "write the last nonempty derivative here");

  auto* stratify = app.add_subcommand("stratify", "Split a compactification by rank");
  stratify->add_option("set", in1, "defset document")->required();
  stratify->add_option("--out", out, "write the strata here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compactify->parsed()) {
      auto s = load_set(in1, app);
      ac_defset* c = nullptr;
      check(ac_compactify(s.get(), &c));
      DefSetPtr cs(c);
      std::cout << summary(cs.get()) << "\n";
      emit(to_json(ac_defset_to_json, cs.get()), out);
    } else if (decompose->parsed()) {
      auto f = load<ScalarFunPtr>(ac_scalarfun_parse, in1, app);
      ac_expansion* e = nullptr;
      check(ac_decompose(f.get(), &e));
      ExpansionPtr ex(e);
      int exact = 0;
      char* report = nullptr;
      check(ac_expansion_verify(ex.get(), f.get(), samples, seed, &exact, &report));
      std::cout << "round-trip: " << take(report) << (exact ? " (exact)" : " (MISMATCH)") << "\n";
      emit(to_json(ac_expansion_to_json, ex.get()), out);
      if (!exact) return kExitInvalid;
    } else if (hom->parsed()) {
      auto x = load_set(in1, app);
      auto y = load_set(in2, app);
      ac_defset* b = nullptr;
      check(ac_hom_basis(x.get(), y.get(), &b));
      DefSetPtr basis(b);
      std::cout << "basis orbits: " << orbit_count(basis.get()) << "\n";
      emit(to_json(ac_defset_to_json, basis.get()), out);
    } else if (meval->parsed()) {
      auto mu = load<MeasurePtr>(ac_measure_parse, in1, app);
      std::string text = read_file(in2, app);
      char* value = nullptr;
      ac_defset* d = nullptr;
      if (ac_defset_parse(text.c_str(), &d) == AC_OK) {
        DefSetPtr set(d);
        check(ac_measure_eval(mu.get(), set.get(), &value));
      } else {
        ac_scalarfun* f = nullptr;
        check(ac_scalarfun_parse(text.c_str(), &f));
        ScalarFunPtr fn(f);
        check(ac_expectation(mu.get(), fn.get(), &value));
      }
      std::cout << take(value) << "\n";
    } else if (product->parsed()) {
      auto p = load<MeasurePtr>(ac_measure_parse, in1, app);
      auto q = load<MeasurePtr>(ac_measure_parse, in2, app);
      ac_measure* m = nullptr;
      check(ac_product_measure(p.get(), q.get(), order == "left" ? AC_LEFT_FIRST : AC_RIGHT_FIRST, &m));
      MeasurePtr pm(m);
      emit(to_json(ac_measure_to_json, pm.get()), out);
    } else if (kleisli->parsed()) {
      auto f = load<KernelPtr>(ac_kernel_parse, in1, app);
      auto g = load<KernelPtr>(ac_kernel_parse, in2, app);
      ac_kernel* k = nullptr;
      check(ac_kleisli(f.get(), g.get(), &k));
      KernelPtr composite(k);
      emit(to_json(ac_kernel_to_json, composite.get()), out);
    } else if (run->parsed()) {
      auto a = load<AutomatonPtr>(ac_automaton_parse, in1, app);
      char* k = nullptr;
      check(ac_automaton_kind(a.get(), &k));
      std::string actual = take(k);
      if (!kind.empty() && kind != actual) {
        std::cerr << "error: --kind=" << kind << " but the document holds a " << actual << " automaton\n";
        return kExitInvalid;
      }
      int accepted = -1;
      char* value = nullptr;
      check(ac_run(a.get(), word.c_str(), &accepted, &value));
      std::string v = take(value);
      if (accepted >= 0) {
        std::cout << (accepted ? "accept" : "reject") << "\n";
        return accepted ? kExitOk : kExitReject;
      }
      std::cout << v << "\n";
    } else if (determinize->parsed()) {
      auto a = load<AutomatonPtr>(ac_automaton_parse, in1, app);
      ac_automaton* d = nullptr;
      check(ac_determinize(a.get(), &d));
      AutomatonPtr det(d);
      emit(to_json(ac_automaton_to_json, det.get()), out);
    } else if (monoid->parsed()) {
      auto a = load<AutomatonPtr>(ac_automaton_parse, in1, app);
      char* doc = nullptr;
      check(ac_to_monoid(a.get(), pool_arg(pool), word.empty() ? nullptr : word.c_str(), &doc));
      emit(take(doc), out);
    } else if (materialize->parsed()) {
      auto s = load_set(in1, app);
      char* doc = nullptr;
      check(ac_oracle_materialize(s.get(), pool_arg(pool), &doc));
      std::cout << take(doc) << "\n";
    } else if (rank->parsed()) {
      auto basis = load_set(in1, app);
      auto domain = load_set(in2, app);
      char* report = nullptr;
      check(ac_oracle_rank(basis.get(), domain.get(), pool_arg(pool), nullptr, nullptr, &report));
      std::cout << take(report) << "\n";
    } else if (differential->parsed()) {
      auto a = load<AutomatonPtr>(ac_automaton_parse, in1, app);
      int agree = 0;
      char* report = nullptr;
      check(ac_oracle_differential(a.get(), pool_arg(pool), words, seed, &agree, &report));
      std::cout << take(report) << "\n";
      return agree ? kExitOk : kExitReject;
    } else if (deriv->parsed()) {
      auto s = load_set(in1, app);
      ac_defset* c = nullptr;
      check(ac_compactify(s.get(), &c));
      DefSetPtr z(c);
      std::string last;
      for (size_t step = 0;; ++step) {
        std::cout << "step " << step << ": " << summary(z.get()) << "\n";
        if (orbit_count(z.get()) == 0) break;
        last = to_json(ac_defset_to_json, z.get());
        if (step == max_steps) {
          std::cout << "stopped after " << max_steps << " steps\n";
          break;
        }
        ac_defset* next = nullptr;
        check(ac_derivative(z.get(), s.get(), &next));
        z.reset(next);
      }
      if (!out.empty()) emit(last, out);
    } else if (stratify->parsed()) {
      auto s = load_set(in1, app);
      char* doc = nullptr;
      check(ac_stratify(s.get(), &doc));
      std::string strata = take(doc);
      ac_defset* c = nullptr;
      check(ac_compactify(s.get(), &c));
      DefSetPtr cs(c);
      std::cout << summary(cs.get()) << "\n";
      if (!out.empty()) emit(strata, out);
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitOk;
}
