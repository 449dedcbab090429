#include "scmlab/verification.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "scmlab/errors.hpp"
#include "scmlab/fixtures.hpp"
#include "scmlab/graph_control.hpp"
#include "scmlab/grammar_io.hpp"
#include "scmlab/normal_forms.hpp"
#include "text_util.hpp"

namespace scmlab {

NamedLanguage named_words(const Grammar& g, const BoundedLanguage& lang) {
  const SymbolTable& t = symbols_of(g);
  NamedLanguage out;
  for (const auto& w : lang.words) {
    NamedWord nw;
    for (std::size_t i = 0; i < w.size(); ++i) nw.push_back(t.name(w[i]));
    out.insert(std::move(nw));
  }
  return out;
}

std::string render_named(const NamedWord& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + w[i];
  return out;
}

// ---------------------------------------------------------------------------
// Reference enumerator. Shares nothing with the engine beyond the grammar
// containers: forms are vectors of names and every rewrite is spelled out.

namespace {

using Form = std::vector<std::string>;

Form names_of(const Word& w, const SymbolTable& t) {
  Form f;
  for (std::size_t i = 0; i < w.size(); ++i) f.push_back(t.name(w[i]));
  return f;
}

bool has_factor(const Form& x, const Form& f) {
  if (f.size() > x.size()) return false;
  for (std::size_t i = 0; i + f.size() <= x.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < f.size() && hit; ++k) hit = x[i + k] == f[k];
    if (hit) return true;
  }
  return false;
}

struct RefRule {
  std::string lhs;
  Form rhs;
};

struct RefMatrix {
  std::vector<RefRule> rules;
  std::optional<Form> permit, forbid;
};

void ref_chain(const RefMatrix& m, const std::vector<std::size_t>& order, std::size_t k,
               const Form& y, std::set<Form>& out) {
  if (k == order.size()) {
    out.insert(y);
    return;
  }
  const RefRule& r = m.rules[order[k]];
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != r.lhs) continue;
    Form z(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(i));
    z.insert(z.end(), r.rhs.begin(), r.rhs.end());
    z.insert(z.end(), y.begin() + static_cast<std::ptrdiff_t>(i) + 1, y.end());
    ref_chain(m, order, k + 1, z, out);
  }
}

class RefSystem {
 public:
  RefSystem(const Grammar& g, Mode mode) : mode_(mode) {
    const SymbolTable& t = symbols_of(g);
    for (Symbol s : t.terminals()) terminals_.insert(t.name(s));
    if (const auto* scm = std::get_if<ScmGrammar>(&g)) {
      for (const auto& m : scm->matrices()) {
        RefMatrix rm;
        for (const auto& r : m.rules) rm.rules.push_back({t.name(r.lhs), names_of(r.rhs, t)});
        if (m.permit) rm.permit = names_of(*m.permit, t);
        if (m.forbid) rm.forbid = names_of(*m.forbid, t);
        matrices_.push_back(std::move(rm));
      }
    } else if (const auto* gen = std::get_if<GeneralGrammar>(&g)) {
      for (const auto& r : gen->rules())
        type0_.emplace_back(names_of(r.lhs, t), names_of(r.rhs, t));
    } else {
      const auto& gc = std::get<GcGrammar>(g);
      final_node_ = gc.final_node();
      for (const auto& n : gc.nodes()) {
        GcRef ref;
        if (n.rule) ref.rule = RefRule{t.name(n.rule->lhs), names_of(n.rule->rhs, t)};
        ref.green = n.green;
        ref.red = n.red;
        nodes_.push_back(std::move(ref));
      }
    }
  }

  bool terminal(const Form& f) const {
    return std::all_of(f.begin(), f.end(), [&](const std::string& s) { return terminals_.count(s); });
  }

  std::set<Form> successors(const Form& x) const {
    std::set<Form> out;
    for (const auto& m : matrices_) {
      if (m.permit && !has_factor(x, *m.permit)) continue;
      if (m.forbid && has_factor(x, *m.forbid)) continue;
      std::vector<std::size_t> order(m.rules.size());
      std::iota(order.begin(), order.end(), 0);
      do {
        ref_chain(m, order, 0, x, out);
      } while (mode_ == Mode::unordered && std::next_permutation(order.begin(), order.end()));
    }
    for (const auto& [lhs, rhs] : type0_) {
      for (std::size_t i = 0; i + lhs.size() <= x.size(); ++i) {
        if (!std::equal(lhs.begin(), lhs.end(), x.begin() + static_cast<std::ptrdiff_t>(i))) continue;
        Form z(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
        z.insert(z.end(), rhs.begin(), rhs.end());
        z.insert(z.end(), x.begin() + static_cast<std::ptrdiff_t>(i + lhs.size()), x.end());
        out.insert(std::move(z));
      }
    }
    return out;
  }

  /// Graph-controlled successors of (node, x).
  std::set<std::pair<std::size_t, Form>> gc_successors(std::size_t node, const Form& x) const {
    std::set<std::pair<std::size_t, Form>> out;
    if (node == final_node_) return out;
    const GcRef& n = nodes_[node - 1];
    bool applied = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != n.rule->lhs) continue;
      applied = true;
      Form z(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
      z.insert(z.end(), n.rule->rhs.begin(), n.rule->rhs.end());
      z.insert(z.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1, x.end());
      for (std::size_t t : n.green) out.insert({t, z});
    }
    if (!applied)
      for (std::size_t t : n.red) out.insert({t, x});
    return out;
  }

  std::size_t final_node() const noexcept { return final_node_; }

 private:
  struct GcRef {
    std::optional<RefRule> rule;
    std::vector<std::size_t> green, red;
  };

  Mode mode_;
  std::set<std::string> terminals_;
  std::vector<RefMatrix> matrices_;
  std::vector<std::pair<Form, Form>> type0_;
  std::vector<GcRef> nodes_;
  std::size_t final_node_ = 0;
};

template <class State, class Succ, class Len>
std::set<State> closure(State init, const SearchCaps& caps, Succ succ, Len len) {
  std::set<State> reach;
  if (len(init) <= caps.max_form_len) reach.insert(init);
  for (std::size_t round = 0; !caps.max_steps || round < *caps.max_steps; ++round) {
    std::set<State> next = reach;
    for (const auto& x : reach)
      for (const auto& y : succ(x))
        if (len(y) <= caps.max_form_len) next.insert(y);
    if (next.size() == reach.size()) break;
    reach = std::move(next);
  }
  return reach;
}

}  // namespace

NamedLanguage reference_language(const Grammar& g, const SearchCaps& caps, Mode mode) {
  caps.validate();
  const RefSystem sys(g, mode);
  const SymbolTable& t = symbols_of(g);
  const Form start{t.name(start_of(g))};
  NamedLanguage out;
  if (const auto* gc = std::get_if<GcGrammar>(&g)) {
    using Config = std::pair<std::size_t, Form>;
    const auto reach = closure<Config>(
        {gc->initial(), start}, caps,
        [&](const Config& c) { return sys.gc_successors(c.first, c.second); },
        [](const Config& c) { return c.second.size(); });
    for (const auto& [node, f] : reach)
      if (node == sys.final_node() && sys.terminal(f) && f.size() <= caps.max_word_len) out.insert(f);
    return out;
  }
  const auto reach = closure<Form>(
      start, caps, [&](const Form& f) { return sys.successors(f); },
      [](const Form& f) { return f.size(); });
  for (const auto& f : reach)
    if (sys.terminal(f) && f.size() <= caps.max_word_len) out.insert(f);
  return out;
}

// ---------------------------------------------------------------------------

EquivalenceReport assert_bounded_equal(const Grammar& a, const Grammar& b, const SearchCaps& caps,
                                       Mode mode, const SearchOptions& opts) {
  EquivalenceReport rep;
  rep.caps = caps;
  SearchCaps wider = caps;
  wider.max_form_len += 2;

  const auto la = enumerate_language(a, caps, mode, opts);
  const auto lb = enumerate_language(b, caps, mode, opts);
  const auto la2 = enumerate_language(a, wider, mode, opts);
  const auto lb2 = enumerate_language(b, wider, mode, opts);
  const NamedLanguage na = named_words(a, la), nb = named_words(b, lb);
  for (const auto& w : na)
    if (!nb.count(w)) rep.left_only.push_back(render_named(w));
  for (const auto& w : nb)
    if (!na.count(w)) rep.right_only.push_back(render_named(w));
  rep.fixed_point_stable = na == named_words(a, la2) && nb == named_words(b, lb2);
  rep.budget_exhausted = la.budget_exhausted || lb.budget_exhausted || la2.budget_exhausted ||
                         lb2.budget_exhausted;
  rep.saturated = la.saturated || lb.saturated;
  return rep;
}

// ---------------------------------------------------------------------------

ScmGrammar fixture_construction(ConstructionId id) {
  if (id == ConstructionId::sscm_gc) return construct(id, fixture_gc0());
  const GeneralGrammar g0 = fixture_g0();
  return construct(id, encode(g0, construction_info(id).input_kind));
}

namespace {

std::vector<TraceStep> steps(std::initializer_list<std::pair<const char*, std::vector<std::size_t>>> s) {
  std::vector<TraceStep> out;
  for (const auto& [label, pos] : s) out.push_back({label, pos});
  return out;
}

}  // namespace

const std::vector<GoldenTrace>& golden_traces() {
  using I = ConstructionId;
  static const std::vector<GoldenTrace> suite = {
      {"gnf42 eraser AB via r1, r3", I::sscm_21532, "C A B C",
       steps({{"r1", {0, 0}}, {"r3", {0, 0}}}), "C C"},
      {"gnf42 eraser CC via r2, r3", I::sscm_21532, "C C", steps({{"r2", {0, 0}}, {"r3", {0, 0}}}),
       "eps"},
      {"0 $ 1 shrinks to $", I::sscm_31522, "0 $ 1", steps({{"r1", {0, 0}}, {"r2", {0, 0}}}), "$"},
      {"B B B erased", I::sscm_31433, "B B B", steps({{"r1", {0, 0, 0}}, {"r3", {0, 0, 0}}}), "eps"},
      {"A A erased", I::sscm_31433, "A A", steps({{"r2", {0, 0}}, {"r3", {0, 0, 0}}}), "eps"},
      {"A B B B A to eps", I::scm_434726, "A B B B A",
       steps({{"r1", {0, 0}},
              {"r2", {0, 0}},
              {"r4", {0, 0}},
              {"r5", {0, 0}},
              {"r3", {0, 0}},
              {"r7", {0, 0}}}),
       "eps"},
      {"A B B B A to eps", I::scm_524724, "A B B B A",
       steps({{"r1", {0, 0}},
              {"r2", {0}},
              {"r3", {1, 1}},
              {"r3", {0, 0}},
              {"r4", {0, 2}},
              {"r3", {1, 1}},
              {"r3", {0, 0}},
              {"r4", {0, 0}},
              {"r5", {0, 0}},
              {"r7", {0, 0}}}),
       "eps"},
      {"1 0 0 $ $ 0 0 1 shrinks the 0 pair", I::scm_634723, "1 0 0 $ $ 0 0 1",
       steps({{"r2", {1, 1}}, {"r4", {0, 0}}, {"r5", {0, 0}}}), "1 0 $ $ 0 1"},
      {"1 $ $ 1 shrinks to eps", I::scm_634723, "1 $ $ 1",
       steps({{"r3", {0, 0}}, {"r4", {0, 0}}, {"r7", {0, 0}}, {"r7", {0, 0}}}), "eps"},
      {"0 S 1 S 0 shrinks the 0 pair", I::scm_723, "0 S 1 S 0",
       steps({{"r2", {0, 0}}, {"r5_1", {1, 1}}, {"r5_1", {1, 1}}}), "1 1 S 1 S 1 1"},
      {"1 S 1 S 1 a finishes", I::scm_723, "1 S 1 S 1 a",
       steps({{"r7", {0, 0}}, {"r8", {0}}, {"r8", {0}}, {"r8", {0}}}), "a"},
      {"C starts the control graph", I::sscm_gc, "C", steps({{"m_init", {0}}}), "C C A"},
  };
  return suite;
}

const std::vector<StuckCase>& stuck_cases() {
  using I = ConstructionId;
  const SearchCaps caps{12, 12, 20, std::nullopt};
  static const std::vector<StuckCase> suite = {
      {"A B B A has no applicable matrix", I::scm_434726, "A B B A", caps, true},
      {"A B B B B A derives no terminal word", I::scm_434726, "A B B B B A", caps, false},
      {"A B B A has no applicable matrix", I::scm_524724, "A B B A", caps, true},
      {"A B B B B A has no applicable matrix", I::scm_524724, "A B B B B A", caps, true},
  };
  return suite;
}

std::vector<CaseResult> run_golden_traces(const std::vector<GoldenTrace>& suite) {
  std::vector<CaseResult> out;
  std::map<ConstructionId, ScmGrammar> built;
  for (const auto& gt : suite) {
    CaseResult r{std::string(construction_info(gt.construction).cli_id) + ": " + gt.name, false, ""};
    try {
      auto it = built.find(gt.construction);
      if (it == built.end())
        it = built.emplace(gt.construction, fixture_construction(gt.construction)).first;
      const ScmGrammar& g = it->second;
      const Word end = check_trace(g, g.symbols().word(gt.start), gt.steps);
      const Word want = g.symbols().word(gt.expect);
      r.pass = end == want;
      r.detail = "ended at '" + g.symbols().render(end) + "'" +
                 (r.pass ? "" : ", expected '" + g.symbols().render(want) + "'");
    } catch (const Error& e) {
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

CaseResult run_stuck(const std::string& name, const ScmGrammar& g, const Word& start,
                     const SearchCaps& caps, bool expect_no_step) {
  CaseResult r{name, false, ""};
  if (expect_no_step) {
    const auto next = step(Grammar{g}, start);
    if (!next.empty()) {
      r.detail = std::to_string(next.size()) + " successor(s), first '" +
                 g.symbols().render(next.front()) + "'";
      return r;
    }
  }
  const auto lang = enumerate_from(Grammar{g}, start, caps);
  r.pass = lang.words.empty();
  r.detail = std::to_string(lang.states_explored) + " forms explored";
  if (!r.pass) r.detail += ", reached '" + g.symbols().render(lang.words.front()) + "'";
  return r;
}

}  // namespace

std::vector<CaseResult> run_stuck_suite(const std::vector<StuckCase>& suite) {
  std::vector<CaseResult> out;
  for (const auto& sc : suite) {
    const std::string name = std::string(construction_info(sc.construction).cli_id) + ": " + sc.name;
    try {
      const ScmGrammar g = fixture_construction(sc.construction);
      out.push_back(run_stuck(name, g, g.symbols().word(sc.start), sc.caps, sc.expect_no_step));
    } catch (const Error& e) {
      out.push_back({name, false, e.what()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifests

namespace {

std::vector<std::string> manifest_tokens(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '"') {
      const std::size_t close = line.find('"', i + 1);
      if (close == std::string_view::npos) throw ParseError(lineno, "unterminated '\"'");
      out.emplace_back(line.substr(i + 1, close - i - 1));
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct CaseArgs {
  std::vector<std::string> positional;
  std::map<std::string, std::string> keys;
};

CaseArgs split_args(const std::vector<std::string>& toks, std::size_t lineno) {
  CaseArgs a;
  for (std::size_t k = 1; k < toks.size(); ++k) {
    const auto eq = toks[k].find('=');
    if (eq == std::string::npos) {
      a.positional.push_back(toks[k]);
    } else if (!a.keys.emplace(toks[k].substr(0, eq), toks[k].substr(eq + 1)).second) {
      throw ParseError(lineno, "duplicate option '" + toks[k].substr(0, eq) + "'");
    }
  }
  return a;
}

std::size_t size_key(const CaseArgs& a, const std::string& key, std::size_t lineno) {
  auto it = a.keys.find(key);
  if (it == a.keys.end()) throw ParseError(lineno, "missing " + key + "=");
  auto v = detail::parse_size(it->second);
  if (!v) throw ParseError(lineno, "bad value for " + key + ": '" + it->second + "'");
  return *v;
}

std::optional<std::size_t> opt_size_key(const CaseArgs& a, const std::string& key,
                                        std::size_t lineno) {
  if (!a.keys.count(key)) return std::nullopt;
  return size_key(a, key, lineno);
}

void check_keys(const CaseArgs& a, std::initializer_list<std::string_view> allowed,
                std::size_t positional, std::size_t lineno) {
  for (const auto& [k, v] : a.keys)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ParseError(lineno, "unknown option '" + k + "'");
  if (a.positional.size() != positional)
    throw ParseError(lineno, "expected " + std::to_string(positional) + " operand(s)");
}

ScmGrammar load_scm(const std::filesystem::path& p) {
  Grammar g = parse_grammar_file(p);
  if (auto* s = std::get_if<ScmGrammar>(&g)) return std::move(*s);
  throw Error("'" + p.string() + "' is not an scm grammar");
}

}  // namespace

std::vector<CaseResult> run_manifest(const std::filesystem::path& manifest,
                                     const SearchOptions& opts) {
  const std::string text = read_text_file(manifest);
  const auto base = manifest.parent_path();
  std::vector<CaseResult> out;
  std::size_t lineno = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++lineno;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto toks = manifest_tokens(line, lineno);
    const auto args = split_args(toks, lineno);
    CaseResult r{"line " + std::to_string(lineno) + ": " + std::string(line), false, ""};
    const std::string& kind = toks[0];
    if (kind == "equiv") {
      check_keys(args, {"maxWord", "maxForm", "maxSteps", "maxStates", "mode"}, 2, lineno);
      SearchCaps caps{size_key(args, "maxForm", lineno), size_key(args, "maxWord", lineno),
                      opt_size_key(args, "maxSteps", lineno),
                      opt_size_key(args, "maxStates", lineno)};
      Mode mode = Mode::ordered;
      if (args.keys.count("mode")) {
        auto m = parse_mode(args.keys.at("mode"));
        if (!m) throw ParseError(lineno, "bad mode '" + args.keys.at("mode") + "'");
        mode = *m;
      }
      try {
        const auto a = parse_grammar_file(base / args.positional[0]);
        const auto b = parse_grammar_file(base / args.positional[1]);
        const auto rep = assert_bounded_equal(a, b, caps, mode, opts);
        r.pass = rep.equal() && rep.fixed_point_stable;
        std::ostringstream d;
        d << (rep.equal() ? "equal" : "different")
          << (rep.fixed_point_stable ? ", fixed-point stable" : ", not fixed-point stable");
        for (const auto& w : rep.left_only) d << "; left only: " << w;
        for (const auto& w : rep.right_only) d << "; right only: " << w;
        r.detail = d.str();
      } catch (const Error& e) {
        r.detail = e.what();
      }
    } else if (kind == "trace") {
      check_keys(args, {"expect"}, 2, lineno);
      if (!args.keys.count("expect")) throw ParseError(lineno, "missing expect=");
      try {
        const ScmGrammar g = load_scm(base / args.positional[0]);
        const Trace t = parse_trace(read_text_file(base / args.positional[1]));
        const Word start = t.start ? g.symbols().word(*t.start) : Word{g.start()};
        const Word end = check_trace(g, start, t.steps);
        const Word want = g.symbols().word(args.keys.at("expect"));
        r.pass = end == want;
        r.detail = "ended at '" + g.symbols().render(end) + "'";
      } catch (const Error& e) {
        r.detail = e.what();
      }
    } else if (kind == "stuck") {
      check_keys(args, {"maxForm", "maxSteps"}, 2, lineno);
      const std::size_t form = size_key(args, "maxForm", lineno);
      const SearchCaps caps{form, form, size_key(args, "maxSteps", lineno), std::nullopt};
      try {
        const ScmGrammar g = load_scm(base / args.positional[0]);
        r = run_stuck(r.name, g, g.symbols().word(args.positional[1]), caps, false);
      } catch (const Error& e) {
        r.detail = e.what();
      }
    } else {
      throw ParseError(lineno, "unknown case kind '" + kind + "'");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace scmlab
