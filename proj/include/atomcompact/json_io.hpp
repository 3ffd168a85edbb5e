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

#include <string>

#include "atomcompact/automata.hpp"
#include "atomcompact/freelin.hpp"
#include "atomcompact/measure.hpp"
#include "json.hpp"

namespace atomcompact::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDefSetSchema = "atomcompact/defset-v1";
inline constexpr const char* kDefFunSchema = "atomcompact/deffun-v1";
inline constexpr const char* kScalarFunSchema = "atomcompact/scalarfun-v1";
inline constexpr const char* kMeasureSchema = "atomcompact/measure-v1";
inline constexpr const char* kKernelSchema = "atomcompact/kernel-v1";
inline constexpr const char* kExpansionSchema = "atomcompact/expansion-v1";
inline constexpr const char* kAutomatonSchema = "atomcompact/automaton-v1";
inline constexpr const char* kMonoidSchema = "atomcompact/monoid-v1";

/// Parses JSON text; syntax errors raise InvalidDocument.
Json parse(const std::string& text);
/// Name of the schema a document declares, or "" when absent.
std::string schema_of(const Json& doc);

Json to_json(const DefSet& s);
DefSet defset_from_json(const Json& doc);

Json to_json(const DefFun& f);
DefFun deffun_from_json(const Json& doc);

Json to_json(const ScalarFun& f);
/// `domain` is used when the document omits its own.
ScalarFun scalarfun_from_json(const Json& doc, const DefSet* domain = nullptr);

Json to_json(const Measure& mu);
Measure measure_from_json(const Json& doc, const DefSet* base = nullptr);

Json to_json(const Kernel& k);
Kernel kernel_from_json(const Json& doc);

Json to_json(const BasisExpansion& e);
BasisExpansion expansion_from_json(const Json& doc);

Json to_json(const LinMap& m);

Json to_json(const Automaton& a);
Automaton automaton_from_json(const Json& doc);

Json to_json(const TaggedTuple& x);
TaggedTuple tuple_from_json(const Json& doc, Theory theory);

/// Letters: "#" (arity-0 tag), "3" (the unique arity-1 tag), or "tag(3 5)".
TaggedTuple parse_letter(const std::string& text, const DefSet& alphabet);
/// Comma-separated letters; the empty string is the empty word.
Word parse_word(const std::string& text, const DefSet& alphabet);

}  // namespace atomcompact::io
