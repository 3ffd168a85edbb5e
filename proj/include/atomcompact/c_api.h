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

#ifndef ATOMCOMPACT_C_API_H
#define ATOMCOMPACT_C_API_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define AC_API __declspec(dllexport)
#else
#define AC_API __attribute__((visibility("default")))
#endif

/* Status values match the library error codes one-to-one. */
typedef enum ac_status {
  AC_OK = 0,
  AC_INVALID_ARGUMENT = 1,
  AC_INVALID_DOCUMENT = 2,
  AC_THEORY_MISMATCH = 3,
  AC_ARITY_MISMATCH = 4,
  AC_AMBIENT_MISSING = 5,
  AC_NOT_IN_DOMAIN = 6,
  AC_NOT_TOTAL = 7,
  AC_NOT_A_SUBSET = 8,
  AC_NOT_A_SUBSET_OF_COMPACTIFICATION = 9,
  AC_UNSUPPORTED_THEORY = 10,
  AC_NONZERO_RESIDUAL = 11,
  AC_SYSTEM_INSOLVABLE = 12,
  AC_BASIS_MISMATCH = 13,
  AC_KERNEL_NOT_DEFINABLE = 14,
  AC_LETTER_NOT_IN_ALPHABET = 15,
  AC_DECOMPOSITION_OUTSIDE_HOM_BASIS = 16,
  AC_POOL_TOO_SMALL = 17,
  AC_INTERNAL = 100
} ac_status;

typedef enum ac_product_order { AC_LEFT_FIRST = 0, AC_RIGHT_FIRST = 1 } ac_product_order;

typedef struct ac_defset ac_defset;
typedef struct ac_scalarfun ac_scalarfun;
typedef struct ac_measure ac_measure;
typedef struct ac_kernel ac_kernel;
typedef struct ac_expansion ac_expansion;
typedef struct ac_automaton ac_automaton;

AC_API const char* ac_version(void);
/* Space-separated schema identifiers understood by this build. */
AC_API const char* ac_schema_versions(void);
AC_API const char* ac_status_name(ac_status status);
/* Message of the last failure on the calling thread; never NULL. */
AC_API const char* ac_last_error(void);
/* Frees strings returned through char** out-parameters. */
AC_API void ac_string_free(char* s);

/* Documents. Every *_to_json result is owned by the caller. */
AC_API ac_status ac_defset_parse(const char* json, ac_defset** out);
AC_API ac_status ac_defset_to_json(const ac_defset* s, char** out);
AC_API ac_status ac_defset_summary(const ac_defset* s, char** out);
AC_API ac_status ac_defset_orbit_count(const ac_defset* s, size_t* out);
AC_API void ac_defset_free(ac_defset* s);

AC_API ac_status ac_scalarfun_parse(const char* json, ac_scalarfun** out);
AC_API ac_status ac_scalarfun_to_json(const ac_scalarfun* f, char** out);
AC_API void ac_scalarfun_free(ac_scalarfun* f);

AC_API ac_status ac_measure_parse(const char* json, ac_measure** out);
AC_API ac_status ac_measure_to_json(const ac_measure* mu, char** out);
AC_API void ac_measure_free(ac_measure* mu);

AC_API ac_status ac_kernel_parse(const char* json, ac_kernel** out);
AC_API ac_status ac_kernel_to_json(const ac_kernel* k, char** out);
AC_API void ac_kernel_free(ac_kernel* k);

AC_API ac_status ac_expansion_parse(const char* json, ac_expansion** out);
AC_API ac_status ac_expansion_to_json(const ac_expansion* e, char** out);
AC_API void ac_expansion_free(ac_expansion* e);

AC_API ac_status ac_automaton_parse(const char* json, ac_automaton** out);
AC_API ac_status ac_automaton_to_json(const ac_automaton* a, char** out);
/* "det", "ultra", "weighted" or "prob". */
AC_API ac_status ac_automaton_kind(const ac_automaton* a, char** out);
AC_API void ac_automaton_free(ac_automaton* a);

/* Compactification. */
AC_API ac_status ac_compactify(const ac_defset* s, ac_defset** out);
/* "orbits: principal=N, rank1=M, ..." for a compactified set. */
AC_API ac_status ac_orbit_summary(const ac_defset* compactified, char** out);
/* `z` holds encoded types inside compactify(ambient). */
AC_API ac_status ac_derivative(const ac_defset* z, const ac_defset* ambient, ac_defset** out);
/* Compactifies `s` and returns a JSON array of defset documents indexed by rank. */
AC_API ac_status ac_stratify(const ac_defset* s, char** out_json);

/* Free vector spaces. */
AC_API ac_status ac_decompose(const ac_scalarfun* f, ac_expansion** out);
/* Re-evaluates the expansion at every generic point and at `samples` seeded
 * concrete points. `exact` is set to 1 when nothing disagrees. */
AC_API ac_status ac_expansion_verify(const ac_expansion* e, const ac_scalarfun* f, size_t samples, uint64_t seed,
                                     int* exact, char** report);
AC_API ac_status ac_hom_basis(const ac_defset* x, const ac_defset* y, ac_defset** out);

/* Measures and kernels. Rationals come back as "p/q" strings. */
AC_API ac_status ac_measure_eval(const ac_measure* mu, const ac_defset* d, char** value);
AC_API ac_status ac_expectation(const ac_measure* mu, const ac_scalarfun* f, char** value);
AC_API ac_status ac_product_measure(const ac_measure* p, const ac_measure* q, ac_product_order order, ac_measure** out);
/* The kernel "g after f". */
AC_API ac_status ac_kleisli(const ac_kernel* f, const ac_kernel* g, ac_kernel** out);
AC_API ac_status ac_extend(const ac_kernel* g, const ac_measure* mu, ac_measure** out);

/* Automata. Words are comma-separated letters such as "3,#" or "a(1 2),b()".
 * det and ultra machines set `accepted`; weighted and prob machines set
 * `value` and leave `accepted` at -1. Either pointer may be NULL. */
AC_API ac_status ac_run(const ac_automaton* a, const char* word, int* accepted, char** value);
AC_API ac_status ac_determinize(const ac_automaton* a, ac_automaton** out);
/* Monoid document for a weighted or prob machine: the linear map of every
 * letter materialized over `pool` plus the map of `word` when non-NULL. */
AC_API ac_status ac_to_monoid(const ac_automaton* a, const char* pool, const char* word, char** out_json);

/* Truncation oracle. `pool` is a comma-separated atom list; NULL or "" picks
 * a pool that inhabits every orbit of the input. */
AC_API ac_status ac_oracle_materialize(const ac_defset* s, const char* pool, char** out_json);
/* Rank of the basis elements listed in `basis` (encoded types or rects),
 * evaluated on the points of `domain` inside the pool. */
AC_API ac_status ac_oracle_rank(const ac_defset* basis, const ac_defset* domain, const char* pool, size_t* rank,
                                size_t* columns, char** report);
AC_API ac_status ac_oracle_differential(const ac_automaton* a, const char* pool, size_t n_words, uint64_t seed,
                                        int* all_agree, char** report);

#ifdef __cplusplus
}
#endif

#endif
