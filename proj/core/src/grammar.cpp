#include "scmlab/grammar.hpp"

#include <array>
#include <set>
#include <utility>

#include "scmlab/errors.hpp"

namespace scmlab {

namespace {

constexpr std::array<std::pair<GrammarKind, std::string_view>, 9> kKindNames{{
    {GrammarKind::scm, "scm"},
    {GrammarKind::type0, "type0"},
    {GrammarKind::gnf52, "gnf52"},
    {GrammarKind::gnf42, "gnf42"},
    {GrammarKind::gnf32, "gnf32"},
    {GrammarKind::mmnf, "mmnf"},
    {GrammarKind::smmnf, "smmnf"},
    {GrammarKind::mmmnf, "mmmnf"},
    {GrammarKind::gc, "gc"},
}};

constexpr std::array<std::pair<RuleRole, std::string_view>, 6> kRoleNames{{
    {RuleRole::stage1, "stage1"},
    {RuleRole::stage2_s, "stage2-S"},
    {RuleRole::stage2_final, "stage2-final"},
    {RuleRole::eraser, "eraser"},
    {RuleRole::center_intro, "center-intro"},
    {RuleRole::center_erase, "center-erase"},
}};

void check_in_table(const Word& w, const SymbolTable& table, const std::string& where) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (index_of(w[i]) >= table.size()) throw GrammarError(where + ": symbol outside alphabet");
}

void check_start(const SymbolTable& table, Symbol start) {
  if (!table.is_nonterminal(start)) throw GrammarError("start symbol must be a nonterminal");
}

}  // namespace

std::string_view to_string(GrammarKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::optional<GrammarKind> parse_grammar_kind(std::string_view text) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  return std::nullopt;
}

bool is_normal_form(GrammarKind kind) noexcept {
  switch (kind) {
    case GrammarKind::gnf52:
    case GrammarKind::gnf42:
    case GrammarKind::gnf32:
    case GrammarKind::mmnf:
    case GrammarKind::smmnf:
    case GrammarKind::mmmnf:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(RuleRole role) noexcept {
  for (const auto& [r, name] : kRoleNames)
    if (r == role) return name;
  return "?";
}

std::optional<RuleRole> parse_rule_role(std::string_view text) noexcept {
  for (const auto& [r, name] : kRoleNames)
    if (name == text) return r;
  return std::nullopt;
}

ScmGrammar::ScmGrammar(SymbolTable symbols, Symbol start, std::vector<Matrix> matrices)
    : symbols_(std::move(symbols)), start_(start), matrices_(std::move(matrices)) {
  check_start(symbols_, start_);
  std::set<std::string> labels;
  for (const auto& m : matrices_) {
    const std::string where = "matrix '" + m.label + "'";
    if (m.label.empty()) throw GrammarError("matrix without label");
    if (!labels.insert(m.label).second) throw GrammarError(where + " declared twice");
    if (m.rules.empty()) throw GrammarError(where + " has no rules");
    for (const auto& r : m.rules) {
      if (!symbols_.is_nonterminal(r.lhs))
        throw GrammarError(where + ": rule lhs must be a nonterminal");
      check_in_table(r.rhs, symbols_, where);
    }
    for (const auto* cond : {&m.permit, &m.forbid}) {
      if (!cond->has_value()) continue;
      if ((*cond)->empty()) throw GrammarError(where + ": empty condition word");
      check_in_table(**cond, symbols_, where);
    }
  }
}

const Matrix* ScmGrammar::find_matrix(std::string_view label) const noexcept {
  for (const auto& m : matrices_)
    if (m.label == label) return &m;
  return nullptr;
}

GeneralGrammar::GeneralGrammar(GrammarKind kind, SymbolTable symbols, Symbol start,
                               std::vector<GeneralRule> rules)
    : kind_(kind), symbols_(std::move(symbols)), start_(start), rules_(std::move(rules)) {
  if (kind_ != GrammarKind::type0 && !is_normal_form(kind_))
    throw GrammarError("general grammar cannot have kind '" + std::string(to_string(kind_)) + "'");
  check_start(symbols_, start_);
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const std::string where = "rule p" + std::to_string(i + 1);
    const auto& r = rules_[i];
    if (r.lhs.empty()) throw GrammarError(where + ": empty left-hand side");
    check_in_table(r.lhs, symbols_, where);
    check_in_table(r.rhs, symbols_, where);
    if (symbols_.is_terminal_word(r.lhs))
      throw GrammarError(where + ": left-hand side has no nonterminal");
  }
}

GcGrammar::GcGrammar(SymbolTable symbols, Symbol start, std::vector<GcNode> nodes,
                     std::size_t initial, std::size_t final)
    : symbols_(std::move(symbols)),
      start_(start),
      nodes_(std::move(nodes)),
      initial_(initial),
      final_(final) {
  const auto nts = symbols_.nonterminal_names();
  if (nts != std::vector<std::string>{"A", "B"})
    throw GrammarError("graph-controlled grammar must have nonterminals exactly {A, B}");
  check_start(symbols_, start_);
  const std::size_t v = nodes_.size();
  if (v < 2) throw GrammarError("control graph needs at least two nodes");
  if (initial_ != 1) throw GrammarError("initial node must be 1");
  if (final_ != v) throw GrammarError("final node must be the last node (" + std::to_string(v) + ")");
  for (std::size_t k = 0; k < v; ++k) {
    const auto& n = nodes_[k];
    const std::string where = "node " + std::to_string(k + 1);
    if (n.index != k + 1) throw GrammarError(where + ": nodes must be numbered 1..v in order");
    for (const auto* arcs : {&n.green, &n.red})
      for (std::size_t t : *arcs)
        if (t < 1 || t > v) throw GrammarError(where + ": arc to missing node " + std::to_string(t));
    if (n.index == final_) {
      if (n.rule) throw GrammarError(where + ": final node carries a rule");
      if (!n.green.empty() || !n.red.empty()) throw GrammarError(where + ": final node has arcs");
      continue;
    }
    if (!n.rule) throw GrammarError(where + ": non-final node without a rule");
    if (!symbols_.is_nonterminal(n.rule->lhs)) throw GrammarError(where + ": rule lhs must be A or B");
    check_in_table(n.rule->rhs, symbols_, where);
  }
}

GrammarKind kind_of(const Grammar& g) noexcept {
  if (std::holds_alternative<ScmGrammar>(g)) return GrammarKind::scm;
  if (const auto* t = std::get_if<GeneralGrammar>(&g)) return t->kind();
  return GrammarKind::gc;
}

const SymbolTable& symbols_of(const Grammar& g) noexcept {
  return std::visit([](const auto& x) -> const SymbolTable& { return x.symbols(); }, g);
}

Symbol start_of(const Grammar& g) noexcept {
  return std::visit([](const auto& x) { return x.start(); }, g);
}

Word translate(const Word& w, const SymbolTable& from, const SymbolTable& to) {
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(to.at(from.name(w[i])));
  return out;
}

}  // namespace scmlab
