#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scmlab/symbols.hpp"

namespace scmlab {

enum class GrammarKind { scm, type0, gnf52, gnf42, gnf32, mmnf, smmnf, mmmnf, gc };

std::string_view to_string(GrammarKind kind) noexcept;
std::optional<GrammarKind> parse_grammar_kind(std::string_view text) noexcept;
/// True for the six normal-form tags (gnf52 ... mmmnf).
bool is_normal_form(GrammarKind kind) noexcept;

/// Provenance of a rule inside a normal-form grammar.
enum class RuleRole { stage1, stage2_s, stage2_final, eraser, center_intro, center_erase };

std::string_view to_string(RuleRole role) noexcept;
std::optional<RuleRole> parse_rule_role(std::string_view text) noexcept;

struct CfRule {
  Symbol lhs{};
  Word rhs;

  friend bool operator==(const CfRule&, const CfRule&) = default;
};

/// [(A1 -> x1), ..., (Al -> xl), permit, forbid]. An absent condition is
/// std::nullopt; a present one is never the empty word.
struct Matrix {
  std::string label;
  std::vector<CfRule> rules;
  std::optional<Word> permit;
  std::optional<Word> forbid;

  std::size_t length() const noexcept { return rules.size(); }
  bool conditional() const noexcept { return permit.has_value() || forbid.has_value(); }
  /// At most one condition present.
  bool simple() const noexcept { return !(permit.has_value() && forbid.has_value()); }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Semi-conditional matrix grammar. Validated on construction; immutable.
class ScmGrammar {
 public:
  /// Throws GrammarError on: start not a nonterminal, a terminal rule lhs,
  /// out-of-table symbols, empty or duplicate labels, empty rule lists, or
  /// empty condition words.
  ScmGrammar(SymbolTable symbols, Symbol start, std::vector<Matrix> matrices);

  const SymbolTable& symbols() const noexcept { return symbols_; }
  Symbol start() const noexcept { return start_; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  const Matrix* find_matrix(std::string_view label) const noexcept;

  friend bool operator==(const ScmGrammar&, const ScmGrammar&) = default;

 private:
  SymbolTable symbols_;
  Symbol start_;
  std::vector<Matrix> matrices_;
};

struct GeneralRule {
  Word lhs;
  Word rhs;
  std::optional<RuleRole> role;

  friend bool operator==(const GeneralRule&, const GeneralRule&) = default;
};

/// Type-0 grammar, optionally tagged with a normal-form kind. Rules are
/// addressed by position; their file labels are p1, p2, ...
class GeneralGrammar {
 public:
  /// Throws GrammarError when a lhs is empty or has no nonterminal, or when
  /// `kind` is not type0 or a normal-form tag.
  GeneralGrammar(GrammarKind kind, SymbolTable symbols, Symbol start,
                 std::vector<GeneralRule> rules);

  GrammarKind kind() const noexcept { return kind_; }
  const SymbolTable& symbols() const noexcept { return symbols_; }
  Symbol start() const noexcept { return start_; }
  const std::vector<GeneralRule>& rules() const noexcept { return rules_; }

  friend bool operator==(const GeneralGrammar&, const GeneralGrammar&) = default;

 private:
  GrammarKind kind_;
  SymbolTable symbols_;
  Symbol start_;
  std::vector<GeneralRule> rules_;
};

/// Vertex of a control graph. Indices are 1-based.
struct GcNode {
  std::size_t index = 0;
  std::optional<CfRule> rule;
  std::vector<std::size_t> green;
  std::vector<std::size_t> red;

  friend bool operator==(const GcNode&, const GcNode&) = default;
};

/// Graph-controlled grammar over nonterminals {A, B} with initial node 1 and
/// final node v (the node count). The final node carries no rule.
class GcGrammar {
 public:
  GcGrammar(SymbolTable symbols, Symbol start, std::vector<GcNode> nodes, std::size_t initial,
            std::size_t final);

  const SymbolTable& symbols() const noexcept { return symbols_; }
  Symbol start() const noexcept { return start_; }
  const std::vector<GcNode>& nodes() const noexcept { return nodes_; }
  const GcNode& node(std::size_t index) const { return nodes_.at(index - 1); }
  std::size_t initial() const noexcept { return initial_; }
  std::size_t final_node() const noexcept { return final_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  friend bool operator==(const GcGrammar&, const GcGrammar&) = default;

 private:
  SymbolTable symbols_;
  Symbol start_;
  std::vector<GcNode> nodes_;
  std::size_t initial_;
  std::size_t final_;
};

using Grammar = std::variant<ScmGrammar, GeneralGrammar, GcGrammar>;

GrammarKind kind_of(const Grammar& g) noexcept;
const SymbolTable& symbols_of(const Grammar& g) noexcept;
Symbol start_of(const Grammar& g) noexcept;

/// Re-expresses `w` over another table by symbol name. Throws GrammarError
/// for names missing from `to`.
Word translate(const Word& w, const SymbolTable& from, const SymbolTable& to);

}  // namespace scmlab
