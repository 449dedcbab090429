#include "scmlab/rewrite.hpp"

#include <algorithm>
#include <numeric>

#include "bfs.hpp"
#include "scmlab/errors.hpp"
#include "scmlab/graph_control.hpp"
#include "text_util.hpp"

namespace scmlab {

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::ordered ? "ordered" : "unordered";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  if (text == "ordered") return Mode::ordered;
  if (text == "unordered") return Mode::unordered;
  return std::nullopt;
}

bool conditions_hold(const Matrix& m, const Word& x) noexcept {
  if (m.permit && !x.contains(*m.permit)) return false;
  if (m.forbid && x.contains(*m.forbid)) return false;
  return true;
}

namespace {

/// Rule orders to try: identity, or every distinct rule sequence.
std::vector<std::vector<std::size_t>> rule_orders(const Matrix& m, Mode mode) {
  std::vector<std::size_t> order(m.rules.size());
  std::iota(order.begin(), order.end(), 0);
  if (mode == Mode::ordered) return {order};

  auto key = [&](std::size_t a, std::size_t b) {
    const auto& ra = m.rules[a];
    const auto& rb = m.rules[b];
    if (ra.lhs != rb.lhs) return ra.lhs < rb.lhs;
    return ra.rhs < rb.rhs;
  };
  // Permute the rule contents; equal rules keep their written order, so
  // each distinct sequence appears exactly once.
  std::vector<std::size_t> seq = order;
  std::stable_sort(seq.begin(), seq.end(), key);
  std::vector<std::vector<std::size_t>> out;
  do {
    std::vector<std::size_t> assigned(seq.size());
    std::vector<bool> used(seq.size(), false);
    for (std::size_t k = 0; k < seq.size(); ++k) {
      for (std::size_t idx = 0; idx < m.rules.size(); ++idx) {
        if (!used[idx] && m.rules[idx] == m.rules[seq[k]]) {
          used[idx] = true;
          assigned[k] = idx;
          break;
        }
      }
    }
    out.push_back(std::move(assigned));
  } while (std::next_permutation(seq.begin(), seq.end(), key));
  std::sort(out.begin(), out.end());
  return out;
}

struct Chain {
  const Matrix& m;
  const std::vector<std::size_t>& order;
  std::vector<std::size_t> positions;
  std::vector<Application>* apps = nullptr;
  std::vector<Word>* results = nullptr;
  bool stop_at_first = false;
  bool found = false;

  void run(const Word& y, std::size_t k) {
    if (found && stop_at_first) return;
    if (k == order.size()) {
      found = true;
      if (results) results->push_back(y);
      if (apps) apps->push_back({order, positions, y});
      return;
    }
    const CfRule& r = m.rules[order[k]];
    const auto occ = y.occurrences(r.lhs);
    for (std::size_t p = 0; p < occ.size(); ++p) {
      positions[order[k]] = p;
      run(y.replace_at(occ[p], r.rhs), k + 1);
      if (found && stop_at_first) return;
    }
  }
};

void sort_unique(std::vector<Word>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void scm_successors(const ScmGrammar& g, const Word& x, Mode mode, std::vector<Word>& out) {
  for (const auto& m : g.matrices()) {
    if (!conditions_hold(m, x)) continue;
    for (const auto& order : rule_orders(m, mode)) {
      Chain c{m, order, std::vector<std::size_t>(m.rules.size()), nullptr, &out};
      c.run(x, 0);
    }
  }
}

void type0_successors(const GeneralGrammar& g, const Word& x, std::vector<Word>& out) {
  const std::string_view codes = x.codes();
  for (const auto& r : g.rules()) {
    const std::string_view lhs = r.lhs.codes();
    for (std::size_t pos = codes.find(lhs); pos != std::string_view::npos;
         pos = codes.find(lhs, pos + 1))
      out.push_back(x.replace_range(pos, lhs.size(), r.rhs));
  }
}

struct ConfigHash {
  std::size_t operator()(const GcConfiguration& c) const noexcept {
    return std::hash<Word>{}(c.form) * 31u + c.node;
  }
};

BoundedLanguage search_forms(const Grammar& g, const Word& start, const SearchCaps& caps, Mode mode,
                             const SearchOptions& opts, std::vector<Word>* visited) {
  const unsigned threads = detail::resolve_threads(opts);
  if (const auto* gc = std::get_if<GcGrammar>(&g)) {
    detail::SearchHooks<GcConfiguration> hooks;
    hooks.expand = [gc](const GcConfiguration& c, std::vector<GcConfiguration>& out) {
      if (c.node == gc->final_node()) return;
      out = gc_step(*gc, c);
    };
    hooks.length = [](const GcConfiguration& c) { return c.form.size(); };
    hooks.accept = [gc](const GcConfiguration& c) -> std::optional<Word> {
      if (c.node == gc->final_node() && gc->symbols().is_terminal_word(c.form)) return c.form;
      return std::nullopt;
    };
    std::vector<GcConfiguration> seen;
    auto lang = detail::bounded_search<GcConfiguration, ConfigHash>(
        {GcConfiguration{gc->initial(), start}}, hooks, caps, threads, visited ? &seen : nullptr);
    if (visited) {
      visited->clear();
      for (auto& c : seen) visited->push_back(std::move(c.form));
      sort_unique(*visited);
    }
    return lang;
  }

  const SymbolTable& table = symbols_of(g);
  detail::SearchHooks<Word> hooks;
  hooks.expand = [&g, &table, mode](const Word& x, std::vector<Word>& out) {
    if (table.is_terminal_word(x)) return;
    out = step(g, x, mode);
  };
  hooks.length = [](const Word& x) { return x.size(); };
  hooks.accept = [&table](const Word& x) -> std::optional<Word> {
    if (table.is_terminal_word(x)) return x;
    return std::nullopt;
  };
  return detail::bounded_search<Word>({start}, hooks, caps, threads, visited);
}

}  // namespace

std::vector<Application> matrix_applications(const ScmGrammar& g, const Matrix& m, const Word& x,
                                             Mode mode) {
  (void)g;
  std::vector<Application> apps;
  if (!conditions_hold(m, x)) return apps;
  for (const auto& order : rule_orders(m, mode)) {
    Chain c{m, order, std::vector<std::size_t>(m.rules.size()), &apps, nullptr};
    c.run(x, 0);
  }
  return apps;
}

bool matrix_applicable(const ScmGrammar& g, const Matrix& m, const Word& x) {
  (void)g;
  if (!conditions_hold(m, x)) return false;
  // Defined on the written rule order; unordered callers use apply_matrix.
  const auto orders = rule_orders(m, Mode::ordered);
  Chain c{m, orders.front(), std::vector<std::size_t>(m.rules.size())};
  c.stop_at_first = true;
  c.run(x, 0);
  return c.found;
}

std::vector<Word> apply_matrix(const ScmGrammar& g, const Matrix& m, const Word& x, Mode mode) {
  (void)g;
  std::vector<Word> out;
  if (!conditions_hold(m, x)) return out;
  for (const auto& order : rule_orders(m, mode)) {
    Chain c{m, order, std::vector<std::size_t>(m.rules.size()), nullptr, &out};
    c.run(x, 0);
  }
  sort_unique(out);
  return out;
}

std::vector<Word> step(const Grammar& g, const Word& x, Mode mode) {
  std::vector<Word> out;
  if (const auto* scm = std::get_if<ScmGrammar>(&g)) {
    scm_successors(*scm, x, mode, out);
  } else if (const auto* gen = std::get_if<GeneralGrammar>(&g)) {
    type0_successors(*gen, x, out);
  } else {
    throw Error("graph-controlled grammars step configurations; use gc_step");
  }
  sort_unique(out);
  return out;
}

void SearchCaps::validate() const {
  if (max_word_len > max_form_len)
    throw Error("search caps: max word length " + std::to_string(max_word_len) +
                " exceeds max form length " + std::to_string(max_form_len));
}

BoundedLanguage enumerate_language(const Grammar& g, const SearchCaps& caps, Mode mode,
                                   const SearchOptions& opts) {
  return search_forms(g, Word{start_of(g)}, caps, mode, opts, nullptr);
}

BoundedLanguage enumerate_from(const Grammar& g, const Word& start, const SearchCaps& caps,
                               Mode mode, const SearchOptions& opts) {
  return search_forms(g, start, caps, mode, opts, nullptr);
}

std::vector<Word> reachable_forms(const Grammar& g, const SearchCaps& caps, Mode mode,
                                  const SearchOptions& opts) {
  std::vector<Word> visited;
  search_forms(g, Word{start_of(g)}, caps, mode, opts, &visited);
  return visited;
}

Trace parse_trace(std::string_view text) {
  Trace t;
  std::size_t lineno = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++lineno;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("start:")) {
      if (t.start || !t.steps.empty())
        throw ParseError(lineno, "'start:' must be the first statement");
      t.start = std::string(detail::trim(line.substr(6)));
      continue;
    }
    const std::size_t at = line.find('@');
    if (at == std::string_view::npos) throw ParseError(lineno, "expected '<label> @ <indices>'");
    TraceStep s;
    s.label = std::string(detail::trim(line.substr(0, at)));
    if (s.label.empty() || s.label.find_first_of(" \t") != std::string::npos)
      throw ParseError(lineno, "bad matrix label '" + s.label + "'");
    for (const auto& tok : detail::split_symbol_tokens(line.substr(at + 1))) {
      auto v = detail::parse_size(tok);
      if (!v) throw ParseError(lineno, "bad occurrence index '" + tok + "'");
      s.positions.push_back(*v);
    }
    t.steps.push_back(std::move(s));
  }
  return t;
}

namespace {

std::optional<Word> replay(const Matrix& m, const std::vector<std::size_t>& order,
                           const std::vector<std::size_t>& positions, Word y,
                           std::string* why, const SymbolTable& table) {
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t idx = order[k];
    const CfRule& r = m.rules[idx];
    const auto occ = y.occurrences(r.lhs);
    if (positions[idx] >= occ.size()) {
      if (why)
        *why = "rule " + std::to_string(idx + 1) + " (" + table.render(Word{r.lhs}) + " -> " +
               table.render(r.rhs) + "): occurrence " + std::to_string(positions[idx]) +
               " out of range, form '" + table.render(y) + "' has " + std::to_string(occ.size());
      return std::nullopt;
    }
    y = y.replace_at(occ[positions[idx]], r.rhs);
  }
  return y;
}

}  // namespace

Word check_trace(const ScmGrammar& g, const Word& start, const std::vector<TraceStep>& steps,
                 Mode mode) {
  const SymbolTable& table = g.symbols();
  Word x = start;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::size_t n = k + 1;
    const TraceStep& s = steps[k];
    const Matrix* m = g.find_matrix(s.label);
    if (!m) throw TraceError(n, "unknown matrix '" + s.label + "'");
    if (s.positions.size() != m->length())
      throw TraceError(n, "matrix '" + s.label + "' has " + std::to_string(m->length()) +
                              " rules but " + std::to_string(s.positions.size()) +
                              " indices were given");
    if (m->permit && !x.contains(*m->permit))
      throw TraceError(n, "matrix '" + s.label + "' not applicable: permitting word '" +
                              table.render(*m->permit) + "' absent from '" + table.render(x) + "'");
    if (m->forbid && x.contains(*m->forbid))
      throw TraceError(n, "matrix '" + s.label + "' not applicable: forbidden word '" +
                              table.render(*m->forbid) + "' present in '" + table.render(x) + "'");
    std::string why;
    std::optional<Word> next;
    for (const auto& order : rule_orders(*m, mode)) {
      next = replay(*m, order, s.positions, x, why.empty() ? &why : nullptr, table);
      if (next) break;
    }
    if (!next) throw TraceError(n, "matrix '" + s.label + "': " + why);
    x = std::move(*next);
  }
  return x;
}

}  // namespace scmlab
