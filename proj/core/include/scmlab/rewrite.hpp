#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scmlab/grammar.hpp"

namespace scmlab {

/// Rule order inside a matrix: as written, or any permutation.
enum class Mode { ordered, unordered };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

/// permit (if present) is a subword of x and forbid (if present) is not.
/// Conditions are evaluated on the form the matrix starts from, never on the
/// intermediate forms produced by its rules.
bool conditions_hold(const Matrix& m, const Word& x) noexcept;

/// Conditions hold on x and the whole rule chain can be completed.
bool matrix_applicable(const ScmGrammar& g, const Matrix& m, const Word& x);

/// One way of applying a matrix: the rule order used, and for each rule
/// (indexed as written) the 0-based occurrence of its lhs that was replaced,
/// counted in the intermediate form that rule saw.
struct Application {
  std::vector<std::size_t> order;
  std::vector<std::size_t> positions;
  Word result;
};

/// Every application, ordered by (order, positions). In unordered mode only
/// rule orders that differ as rule sequences are tried.
std::vector<Application> matrix_applications(const ScmGrammar& g, const Matrix& m, const Word& x,
                                             Mode mode = Mode::ordered);

/// Distinct successor forms of x under m, sorted. Empty iff not applicable.
std::vector<Word> apply_matrix(const ScmGrammar& g, const Matrix& m, const Word& x,
                               Mode mode = Mode::ordered);

/// One derivation step. SCM: union over matrices. Type-0: each rule at each
/// occurrence of its lhs. Graph-controlled grammars step configurations, not
/// forms, so they throw Error here; see gc_step.
std::vector<Word> step(const Grammar& g, const Word& x, Mode mode = Mode::ordered);

struct SearchCaps {
  std::size_t max_form_len = 16;
  std::size_t max_word_len = 4;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> max_states;

  /// Throws Error unless max_word_len <= max_form_len.
  void validate() const;
};

struct BoundedLanguage {
  std::vector<Word> words;  ///< length-lexicographic
  bool saturated = false;   ///< some cap cut the search short
  bool budget_exhausted = false;
  std::size_t states_explored = 0;
};

struct SearchOptions {
  /// Worker threads for successor expansion. Unset: SCMLAB_THREADS, else the
  /// hardware concurrency. 0 or 1 runs sequentially. Output is identical
  /// for every value.
  std::optional<unsigned> threads;
};

/// Breadth-first search from the start symbol (initial configuration for
/// graph-controlled grammars). Forms longer than max_form_len are pruned and
/// mark the result saturated; terminal forms up to max_word_len are reported.
BoundedLanguage enumerate_language(const Grammar& g, const SearchCaps& caps,
                                   Mode mode = Mode::ordered, const SearchOptions& opts = {});

/// As enumerate_language but starting from an arbitrary form. For
/// graph-controlled grammars the search starts at the initial node.
BoundedLanguage enumerate_from(const Grammar& g, const Word& start, const SearchCaps& caps,
                               Mode mode = Mode::ordered, const SearchOptions& opts = {});

/// All forms visited by enumerate_language, length-lexicographic.
std::vector<Word> reachable_forms(const Grammar& g, const SearchCaps& caps,
                                  Mode mode = Mode::ordered, const SearchOptions& opts = {});

struct TraceStep {
  std::string label;
  std::vector<std::size_t> positions;  ///< one per rule, as in Application
};

struct Trace {
  std::optional<std::string> start;  ///< words in SymbolTable::word syntax
  std::vector<TraceStep> steps;
};

/// Lines "<label> @ <i1> <i2> ..."; an optional leading "start: <word>"
/// line; blank lines and '#' comments are skipped. Throws ParseError.
Trace parse_trace(std::string_view text);

/// Replays a trace from `start` and returns the final form. In unordered
/// mode each step uses the first rule order (lexicographically) under which
/// the given positions replay. Throws TraceError naming the failing step.
Word check_trace(const ScmGrammar& g, const Word& start, const std::vector<TraceStep>& steps,
                 Mode mode = Mode::ordered);

}  // namespace scmlab
