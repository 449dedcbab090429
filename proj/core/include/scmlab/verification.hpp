#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "scmlab/constructions.hpp"
#include "scmlab/grammar.hpp"
#include "scmlab/rewrite.hpp"

namespace scmlab {

/// Words as symbol-name sequences, so that languages of grammars with
/// different alphabets compare directly.
using NamedWord = std::vector<std::string>;
using NamedLanguage = std::set<NamedWord>;

NamedLanguage named_words(const Grammar& g, const BoundedLanguage& lang);
std::string render_named(const NamedWord& w);  ///< "a a", "eps"

/// Deliberately naive enumerator used as an oracle for the main engine. It
/// keeps forms as name vectors, rewrites them with its own matrix, type-0
/// and graph-controlled semantics, and iterates R := R u succ(R) over the
/// whole set until nothing changes (or max_steps rounds). Same caps
/// semantics as enumerate_language except max_states, which it ignores.
NamedLanguage reference_language(const Grammar& g, const SearchCaps& caps,
                                 Mode mode = Mode::ordered);

struct EquivalenceReport {
  std::vector<std::string> left_only;
  std::vector<std::string> right_only;
  SearchCaps caps;
  bool fixed_point_stable = false;  ///< both sides unchanged at max_form_len + 2
  bool budget_exhausted = false;
  bool saturated = false;

  bool equal() const noexcept { return left_only.empty() && right_only.empty(); }
};

/// Compares the bounded languages of two grammars under the same caps, then
/// recomputes both with max_form_len + 2 to decide fixed_point_stable.
EquivalenceReport assert_bounded_equal(const Grammar& a, const Grammar& b, const SearchCaps& caps,
                                       Mode mode = Mode::ordered, const SearchOptions& opts = {});

/// Result of one suite case.
struct CaseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// A displayed derivation chain, replayed with check_trace.
struct GoldenTrace {
  std::string name;
  ConstructionId construction;
  std::string start;
  std::vector<TraceStep> steps;
  std::string expect;
};

/// A start form from which no terminal word may be reachable.
struct StuckCase {
  std::string name;
  ConstructionId construction;
  std::string start;
  SearchCaps caps;
  bool expect_no_step = false;  ///< also require step(start) to be empty
};

/// The construction applied to its canonical fixture input: G0 through the
/// matching encoder, or GC0 for the graph-controlled construction.
ScmGrammar fixture_construction(ConstructionId id);

const std::vector<GoldenTrace>& golden_traces();
const std::vector<StuckCase>& stuck_cases();

std::vector<CaseResult> run_golden_traces(const std::vector<GoldenTrace>& suite);
std::vector<CaseResult> run_stuck_suite(const std::vector<StuckCase>& suite);

/// Runs a manifest file. Lines:
///   equiv <fileA> <fileB> maxWord=<k> maxForm=<n> [maxSteps=<d>] [maxStates=<b>] [mode=<m>]
///   trace <grammar> <tracefile> expect=<word|eps>
///   stuck <grammar> "<start form>" maxForm=<n> maxSteps=<d>
/// Paths are relative to the manifest. Throws ParseError on malformed lines.
std::vector<CaseResult> run_manifest(const std::filesystem::path& manifest,
                                     const SearchOptions& opts = {});

}  // namespace scmlab
