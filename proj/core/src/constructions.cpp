#include "scmlab/constructions.hpp"

#include <algorithm>

#include "scmlab/errors.hpp"
#include "scmlab/graph_control.hpp"
#include "scmlab/normal_forms.hpp"

namespace scmlab {

namespace {

using Cond = std::optional<std::string>;

std::string power(std::string_view sym, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) {
    if (i) out += ' ';
    out += sym;
  }
  return out;
}

void require_input(const GeneralGrammar& g, GrammarKind kind, bool need_roles) {
  if (g.kind() != kind)
    throw KindMismatch("expected a " + std::string(to_string(kind)) + " grammar, got " +
                       std::string(to_string(g.kind())));
  const auto rep = validate_normal_form(g, kind);
  if (!rep)
    throw KindMismatch("input is not a valid " + std::string(to_string(kind)) +
                       " grammar: " + rep.summary());
  if (need_roles) {
    for (std::size_t i = 0; i < g.rules().size(); ++i)
      if (!g.rules()[i].role)
        throw KindMismatch("rule p" + std::to_string(i + 1) + " has no role tag");
  }
}

/// Builds the output grammar over the input terminals and `nonterminals`.
class Builder {
 public:
  Builder(const GeneralGrammar& in, const std::vector<std::string>& nonterminals)
      : in_(in), table_(checked_table(in, nonterminals)) {}

  const SymbolTable& table() const noexcept { return table_; }

  Word word(std::string_view text) const { return table_.word(text); }

  CfRule rule(std::string_view lhs, std::string_view rhs) const {
    return {table_.at(lhs), word(rhs)};
  }

  std::vector<CfRule> times(std::size_t k, std::string_view lhs, std::string_view rhs) const {
    return std::vector<CfRule>(k, rule(lhs, rhs));
  }

  void add(std::string label, std::vector<CfRule> rules, const Cond& permit, const Cond& forbid) {
    Matrix m{std::move(label), std::move(rules), std::nullopt, std::nullopt};
    if (permit) m.permit = word(*permit);
    if (forbid) m.forbid = word(*forbid);
    matrices_.push_back(std::move(m));
  }

  /// Input word re-expressed over the output alphabet; each '$' becomes
  /// `center` (only meaningful for MM inputs).
  Word carry(const Word& w, std::string_view center = "$") const {
    Word out;
    const SymbolTable& t = in_.symbols();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (t.name(w[i]) == "$")
        out += word(center);
      else
        out.push_back(table_.at(t.name(w[i])));
    }
    return out;
  }

  ScmGrammar finish() && { return ScmGrammar(table_, table_.at("S"), std::move(matrices_)); }

 private:
  static SymbolTable checked_table(const GeneralGrammar& in,
                                   const std::vector<std::string>& nonterminals) {
    for (const auto& n : nonterminals)
      if (n != "S" && in.symbols().find(n) && in.symbols().is_terminal(*in.symbols().find(n)))
        throw GrammarError("terminal '" + n + "' clashes with a construction nonterminal");
    return SymbolTable(in.symbols().terminal_names(), nonterminals);
  }

  const GeneralGrammar& in_;
  SymbolTable table_;
  std::vector<Matrix> matrices_;
};

std::string plabel(std::size_t i) { return "p" + std::to_string(i + 1); }

/// Unconditional copy of every context-free S-rule.
void add_cf_rules(Builder& b, const GeneralGrammar& g) {
  const Symbol S = g.symbols().at("S");
  for (std::size_t i = 0; i < g.rules().size(); ++i) {
    const GeneralRule& r = g.rules()[i];
    if (r.lhs != Word{S}) continue;
    b.add(plabel(i), {{b.table().at("S"), b.carry(r.rhs)}}, std::nullopt, std::nullopt);
  }
}

/// S -> uSv exists for the center rule S -> u$v at position i.
bool has_counterpart(const GeneralGrammar& g, std::size_t i) {
  const SymbolTable& t = g.symbols();
  const Word& rhs = g.rules()[i].rhs;
  const auto at = rhs.occurrences(t.at("$"));
  const Word twin = rhs.replace_at(at.front(), Word{t.at("S")});
  return std::any_of(g.rules().begin(), g.rules().end(), [&](const GeneralRule& r) {
    return r.role == RuleRole::stage2_s && r.rhs == twin;
  });
}

/// S-rules for the center-marker constructions: stage rules become a
/// matrix with `forbid` (unconditional when absent); center rules are dropped
/// unless they have no S -> uSv twin.
void add_mm_cf_rules(Builder& b, const GeneralGrammar& g, std::string_view center,
                     const Cond& forbid) {
  const Symbol S = b.table().at("S");
  const std::string prefix = forbid ? "rg" : "p";
  for (std::size_t i = 0; i < g.rules().size(); ++i) {
    const GeneralRule& r = g.rules()[i];
    const std::string label = prefix + std::to_string(i + 1);
    switch (*r.role) {
      case RuleRole::stage1:
      case RuleRole::stage2_s:
        b.add(label, {{S, b.carry(r.rhs)}}, std::nullopt, forbid);
        break;
      case RuleRole::center_intro:
        if (!has_counterpart(g, i)) b.add(label, {{S, b.carry(r.rhs, center)}}, std::nullopt, forbid);
        break;
      default:
        break;
    }
  }
}

}  // namespace

ScmGrammar build_sscm_21532(const GeneralGrammar& g) {
  require_input(g, GrammarKind::gnf42, false);
  Builder b(g, {"S", "A", "B", "C", "#"});
  add_cf_rules(b, g);
  b.add("r1", {b.rule("A", "#"), b.rule("B", "#")}, std::nullopt, "#");
  b.add("r2", {b.rule("C", "#"), b.rule("C", "#")}, std::nullopt, "#");
  b.add("r3", b.times(2, "#", "eps"), "# #", std::nullopt);
  return std::move(b).finish();
}

ScmGrammar build_sscm_31522(const GeneralGrammar& g) {
  require_input(g, GrammarKind::mmmnf, false);
  Builder b(g, {"S", "0", "1", "$", "#"});
  add_cf_rules(b, g);
  b.add("r_$", {b.rule("$", "eps")}, std::nullopt, std::nullopt);
  b.add("r1", {b.rule("0", "#"), b.rule("1", "#")}, std::nullopt, "#");
  b.add("r2", b.times(2, "#", "eps"), "# $ #", std::nullopt);
  return std::move(b).finish();
}

ScmGrammar build_sscm_31433(const GeneralGrammar& g) {
  require_input(g, GrammarKind::gnf32, false);
  Builder b(g, {"S", "A", "B", "#"});
  add_cf_rules(b, g);
  b.add("r1", b.times(3, "B", "#"), std::nullopt, "#");
  b.add("r2", {b.rule("A", "#"), b.rule("A", "# #")}, std::nullopt, "#");
  b.add("r3", b.times(3, "#", "eps"), "# # #", std::nullopt);
  return std::move(b).finish();
}

ScmGrammar build_scm_434726(const GeneralGrammar& g) {
  require_input(g, GrammarKind::gnf32, false);
  Builder b(g, {"S", "A", "B", "#"});
  add_cf_rules(b, g);
  const auto erase2 = b.times(2, "#", "eps");
  b.add("r1", b.times(2, "B", "#"), "B B B", "#");
  b.add("r2", {b.rule("#", "eps"), b.rule("B", "# # #")}, "A # # B", "# # #");
  b.add("r3", b.times(2, "A", "#"), "A A", "#");
  b.add("r4", erase2, "# # # #", "# B");
  b.add("r5", erase2, "A # # A", "B B B");
  b.add("r6", erase2, "B # # B", std::nullopt);
  b.add("r7", erase2, "# #", "A");
  return std::move(b).finish();
}

ScmGrammar build_scm_524724(const GeneralGrammar& g) {
  require_input(g, GrammarKind::gnf32, false);
  Builder b(g, {"S", "A", "B", "#"});
  add_cf_rules(b, g);
  const auto erase2 = b.times(2, "#", "eps");
  b.add("r1", {b.rule("B", "#"), b.rule("B", "A A")}, "A B B B A", "A A");
  b.add("r2", {b.rule("B", "# # #")}, "A # A A B", "# #");
  b.add("r3", erase2, "# A A #", std::nullopt);
  b.add("r4", {b.rule("A", "#"), b.rule("A", "# # #")}, "A A", "#");
  b.add("r5", erase2, "# # # #", std::nullopt);
  b.add("r6", erase2, "B # # B", std::nullopt);
  b.add("r7", erase2, "# #", "A");
  return std::move(b).finish();
}

ScmGrammar build_scm_634723(const GeneralGrammar& g) {
  require_input(g, GrammarKind::smmnf, true);
  Builder b(g, {"S", "0", "1", "$"});
  add_mm_cf_rules(b, g, "$ $", std::nullopt);
  const auto erase2 = b.times(2, "$", "eps");
  b.add("r1", {b.rule("S", "$ $")}, "0 S", std::nullopt);
  b.add("r2", {b.rule("0", "$ $ $"), b.rule("0", "$")}, "0 $ $ 0", "$ $ $");
  b.add("r3", {b.rule("1", "$ $ $"), b.rule("1", "$")}, "1 $ $ 1", "$ $ $");
  b.add("r4", erase2, power("$", 6), std::nullopt);
  b.add("r5", erase2, "0 " + power("$", 4) + " 0", std::nullopt);
  b.add("r6", erase2, "1 " + power("$", 4) + " 1", "0 $");
  b.add("r7", erase2, std::nullopt, "1");
  return std::move(b).finish();
}

ScmGrammar build_scm_633(const GeneralGrammar& g) {
  require_input(g, GrammarKind::smmnf, true);
  Builder b(g, {"S", "0", "1"});
  add_mm_cf_rules(b, g, "S S", "S S");
  const auto erase2 = b.times(2, "S", "eps");
  b.add("r1", {b.rule("S", "S S")}, "0 S", "S S");
  b.add("r2", {b.rule("0", "S S S"), b.rule("0", "S")}, "0 S S 0", "S S S");
  b.add("r3", {b.rule("1", "S S S"), b.rule("1", "S")}, "1 S S 1", "S S S");
  b.add("r4", erase2, power("S", 6), std::nullopt);
  b.add("r5", erase2, "0 " + power("S", 4) + " 0", std::nullopt);
  b.add("r6", erase2, "1 " + power("S", 4) + " 1", "0 S");
  b.add("r7", erase2, std::nullopt, "1");
  return std::move(b).finish();
}

ScmGrammar build_scm_723(const GeneralGrammar& g) {
  require_input(g, GrammarKind::smmnf, true);
  Builder b(g, {"S", "0", "1"});
  add_mm_cf_rules(b, g, "S 1 S", "S 1");
  const auto erase2 = b.times(2, "S", "eps");
  b.add("r1", {b.rule("S", "S 1 S")}, "0 S 0", "1 S");
  b.add("r2", {b.rule("0", "1 1"), b.rule("0", "S S S S 1 1")}, "0 S 1 S 0", "1 1");
  b.add("r3", {b.rule("1", "S"), b.rule("1", "S S S")}, "1 S 1 S 1", "S S");
  b.add("r4", erase2, "S S 1 S S S S", std::nullopt);
  b.add("r5_0", erase2, "0 1 S 1 S S S", std::nullopt);
  b.add("r5_1", erase2, "1 1 S 1 S S S", std::nullopt);
  b.add("r6", erase2, "0 S 1 S S S 0", std::nullopt);
  b.add("r7", erase2, std::nullopt, "0");
  b.add("r8", {b.rule("1", "eps")}, std::nullopt, "S");
  return std::move(b).finish();
}

const std::vector<ConstructionInfo>& constructions() {
  using I = ConstructionId;
  using K = GrammarKind;
  static const std::vector<ConstructionInfo> table = {
      {I::sscm_21532, "thm1", K::gnf42, {2, 1, 5, 3, 2, 0}},
      {I::sscm_31522, "thm2", K::mmmnf, {3, 1, 5, 2, 2, 0}},
      {I::sscm_31433, "thm3", K::gnf32, {3, 1, 4, 3, 3, 0}},
      {I::scm_434726, "thm4", K::gnf32, {4, 3, 4, 7, 2, 6}},
      {I::scm_524724, "thm5", K::gnf32, {5, 2, 4, 7, 2, 4}},
      {I::scm_634723, "thm6", K::smmnf, {6, 3, 4, 7, 2, 3}},
      {I::scm_633, "thm7", K::smmnf, {6, 3, 3, std::nullopt, 2, 4}},
      {I::scm_723, "thm8", K::smmnf, {7, 2, 3, std::nullopt, 2, 3}},
      {I::sscm_gc, "thm9", K::gc, {0, std::nullopt, 3, std::nullopt, std::nullopt, 0}},
  };
  return table;
}

const ConstructionInfo& construction_info(ConstructionId id) {
  for (const auto& c : constructions())
    if (c.id == id) return c;
  throw Error("unknown construction");
}

std::optional<ConstructionId> parse_construction(std::string_view cli_id) noexcept {
  for (const auto& c : constructions())
    if (c.cli_id == cli_id) return c.id;
  return std::nullopt;
}

ScmGrammar construct(ConstructionId id, const Grammar& g) {
  const ConstructionInfo& info = construction_info(id);
  std::optional<ScmGrammar> out;
  if (id == ConstructionId::sscm_gc) {
    const auto* gc = std::get_if<GcGrammar>(&g);
    if (!gc)
      throw KindMismatch(std::string(info.cli_id) + " needs a gc grammar, got " +
                         std::string(to_string(kind_of(g))));
    out = gc_to_sscm(*gc);
  } else {
    const auto* gen = std::get_if<GeneralGrammar>(&g);
    if (!gen)
      throw KindMismatch(std::string(info.cli_id) + " needs a " +
                         std::string(to_string(info.input_kind)) + " grammar, got " +
                         std::string(to_string(kind_of(g))));
    switch (id) {
      case ConstructionId::sscm_21532: out = build_sscm_21532(*gen); break;
      case ConstructionId::sscm_31522: out = build_sscm_31522(*gen); break;
      case ConstructionId::sscm_31433: out = build_sscm_31433(*gen); break;
      case ConstructionId::scm_434726: out = build_scm_434726(*gen); break;
      case ConstructionId::scm_524724: out = build_scm_524724(*gen); break;
      case ConstructionId::scm_634723: out = build_scm_634723(*gen); break;
      case ConstructionId::scm_633: out = build_scm_633(*gen); break;
      case ConstructionId::scm_723: out = build_scm_723(*gen); break;
      case ConstructionId::sscm_gc: break;
    }
  }
  const ParameterTuple t = metrics(*out);
  if (!info.expected.admits(t))
    throw Error("internal: " + std::string(info.cli_id) + " output has metrics " +
                format_tuple(t) + " outside " + info.expected.format());
  return std::move(*out);
}

}  // namespace scmlab
