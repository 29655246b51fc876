#pragma once

#include "ilconv/ideals.hpp"
#include "ilconv/natset.hpp"
#include "ilconv/sequence.hpp"
#include "ilconv/space.hpp"
#include "ilconv/verdict.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Scenario files: a line-oriented language declaring ideals, spaces, symbolic
// sets and cell-constant sequences, followed by queries against them. Parsing
// is all-or-nothing -- any error yields no scenario -- but the parser keeps
// going after an error so one pass reports every problem with its position.
//
//   # comment
//   ideal I = fin | density0 | decomposition
//   space X = example1 | harmonic | table { points p, ...; row r, ...; ... }
//   set A = <set-expr>          D(j), finite{...}, all, empty, names,
//                               operators ! & ^ | (tightest first), parens
//   sequence s in X = cellwise { 2 -> rat 1/2; default integer-ramp }
//                               tails: const <point>, integer-ramp,
//                               approach <point>
//   points: int 3 | rat 1/2 | irr sqrt2   (rationals reduced, non-integral)
//
//   query converges s to <point>
//   query stat-converges s to <point>
//   query i-converges s to <point> under I
//   query i-star-converges s to <point> under I
//   query extract s to <point> k <K> [under I]
//   query refute-subsequence s to <point> under I
//   query ap-promote s to <point> under I
//   query isolated-promote s to <point> under I
//   query separate X at <point>
//   query density <set-expr>
//   query member I <set-expr>
//   query axioms X [level metric-like|partial|metric]
//
// Braces may span physical lines; everything else ends at the newline. The
// builtin names (fin, density0, decomposition, example1, harmonic) resolve
// without a declaration and cannot be redeclared.
namespace ilconv::dsl {

struct ParseError {
  std::uint32_t line = 0;   // 1-based
  std::uint32_t column = 0; // 1-based, first character of `token`
  std::string message;
  std::string token;
};

enum class QueryKind {
  Converges,
  StatConverges,
  IConverges,
  IStarConverges,
  Extract,
  RefuteSubsequence,
  ApPromote,
  IsolatedPromote,
  Separate,
  Density,
  Member,
  Axioms,
};

enum class AxiomLevel { MetricLike, Partial, Metric };

// One validated query. Entity references are kept by name (resolved again at
// run time through the scenario); set operands are kept by value, already
// canonical.
struct Query {
  QueryKind kind{};
  std::string sequence;                      // convergence-family queries
  std::optional<mls::PointValue> point;      // `to` / `at` argument
  std::string ideal;                         // `under` / member operand
  std::uint32_t count = 0;                   // extract: K
  std::optional<natset::SymbolicNatSet> set; // density / member operand
  std::string space;                         // separate / axioms operand
  std::optional<AxiomLevel> level;           // axioms only

  bool operator==(const Query& o) const = default;
};

struct Scenario {
  std::vector<std::pair<std::string, ideals::Ideal>> ideals;
  std::vector<std::pair<std::string, mls::Space>> spaces;
  std::vector<std::pair<std::string, natset::SymbolicNatSet>> sets;
  std::vector<std::pair<std::string, conv::CellSequence>> sequences;
  std::vector<Query> queries;
  std::string source; // original text, hashed into reports

  // Declared name or builtin fallback; nullopt when neither resolves.
  std::optional<ideals::Ideal> resolve_ideal(std::string_view name) const;
  std::optional<mls::Space> resolve_space(std::string_view name) const;
  const natset::SymbolicNatSet* find_set(std::string_view name) const;
  const conv::CellSequence* find_sequence(std::string_view name) const;
};

struct ParseResult {
  std::optional<Scenario> scenario; // engaged iff errors is empty
  std::vector<ParseError> errors;
};

ParseResult parse(std::string_view text);

// The set-expression sublanguage on its own (ad-hoc density queries).
struct SetExprResult {
  std::optional<natset::SymbolicNatSet> set;
  std::optional<ParseError> error;
};
SetExprResult parse_set_expr(std::string_view text);

// Canonical text: declarations grouped by kind in declaration order, then
// queries. Reparsing the rendering yields a structurally equal scenario.
std::string render(const Scenario& sc);
std::string render_query(const Query& q);

// FNV-1a 64 of the source text, 16 hex digits.
std::string digest(std::string_view source);

// One executed query. outcome is "holds", "fails" or "unknown" for
// verdict-backed queries, "value" for data queries (extract, density,
// member, refute-subsequence, level-free axioms), "error" for runtime
// refusals. payload carries the rendered certificate or the exact values,
// all rationals as "p/q" strings.
struct QueryRecord {
  std::string query;
  std::string outcome;
  std::string description;
  nlohmann::ordered_json payload;
  std::optional<std::uint64_t> horizon;
};

struct Report {
  std::string version;
  std::string digest;
  conv::Params params;
  std::vector<QueryRecord> records;
  bool any_fails = false;
  bool any_errors = false;

  // Deterministic: insertion-ordered keys, exact strings, no floats.
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

// Executes the queries in order. Runtime refusals become per-query "error"
// records; the batch always completes.
Report run(const Scenario& sc, const conv::Params& params = {});

// Shared verdict rendering (also used by the walkthrough demos).
nlohmann::ordered_json certificate_json(const Certificate& cert);
nlohmann::ordered_json verdict_json(const Verdict& v);

} // namespace ilconv::dsl
