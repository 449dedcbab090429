#include "scmlab/graph_control.hpp"

#include <algorithm>

#include "bfs.hpp"
#include "scmlab/errors.hpp"

namespace scmlab {

std::vector<GcConfiguration> gc_step(const GcGrammar& g, const GcConfiguration& c) {
  if (c.node < 1 || c.node > g.size()) throw Error("configuration at unknown node");
  const GcNode& n = g.node(c.node);
  if (!n.rule) throw Error("node " + std::to_string(c.node) + " is final and has no rule");
  std::vector<GcConfiguration> out;
  const auto occ = c.form.occurrences(n.rule->lhs);
  if (occ.empty()) {
    for (std::size_t t : n.red) out.push_back({t, c.form});
  } else {
    for (std::size_t p : occ) {
      Word next = c.form.replace_at(p, n.rule->rhs);
      for (std::size_t t : n.green) out.push_back({t, next});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundedLanguage gc_enumerate(const GcGrammar& g, const SearchCaps& caps, const SearchOptions& opts) {
  return enumerate_language(Grammar{g}, caps, Mode::ordered, opts);
}

ScmGrammar gc_to_sscm(const GcGrammar& g) {
  const SymbolTable& in = g.symbols();
  if (in.find("C")) throw GrammarError("input alphabet already contains 'C'");
  SymbolTable out(in.terminal_names(), {"A", "B", "C"});
  const Symbol C = out.at("C");
  const Symbol A = out.at("A");
  auto cs = [C](std::size_t k) {
    Word w;
    for (std::size_t i = 0; i < k; ++i) w.push_back(C);
    return w;
  };
  auto deletions = [&](std::size_t k) { return std::vector<CfRule>(k, CfRule{C, Word{}}); };

  const std::size_t v = g.size();
  std::vector<Matrix> ms;
  ms.push_back({"m_init", {{C, Word{C, C, A}}}, std::nullopt, cs(2)});

  for (const GcNode& n : g.nodes()) {
    if (!n.rule) continue;
    const std::size_t l = n.index;
    const Symbol y = out.at(in.name(n.rule->lhs));
    const Word alpha = translate(n.rule->rhs, in, out);
    for (std::size_t s : n.green) {
      auto rules = deletions(l);
      rules.push_back({C, cs(s + 1)});
      rules.push_back({y, alpha});
      ms.push_back({"m_sigma_" + std::to_string(l) + "_" + std::to_string(s), std::move(rules),
                    std::nullopt, cs(l + 2)});
    }
    if (n.red.empty()) continue;
    const std::size_t gl = failure_offset(v, l);
    ms.push_back({"m_phi1_" + std::to_string(l), {{C, Word{}}, {C, cs(gl + 2)}}, std::nullopt,
                  Word{y}});
    for (std::size_t f : n.red) {
      auto rules = deletions(l + gl);
      rules.push_back({C, cs(f + 1)});
      ms.push_back({"m_phi2_" + std::to_string(l) + "_" + std::to_string(f), std::move(rules),
                    std::nullopt, cs(l + gl + 2)});
    }
  }
  ms.push_back({"m_final", deletions(g.final_node() + 1), std::nullopt, cs(g.final_node() + 2)});
  return ScmGrammar(std::move(out), C, std::move(ms));
}

}  // namespace scmlab
