// scmlab: parse, encode, transform, enumerate and check SCM grammars.
//
// Exit status: 0 success, 1 the answer is "no" (validation, equivalence,
// trace or suite failure), 2 usage, parse or file errors.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scmlab/constructions.hpp"
#include "scmlab/errors.hpp"
#include "scmlab/grammar_io.hpp"
#include "scmlab/metrics.hpp"
#include "scmlab/normal_forms.hpp"
#include "scmlab/rewrite.hpp"
#include "scmlab/verification.hpp"

namespace {

using namespace scmlab;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct CapsOptions {
  std::size_t max_word = SearchCaps{}.max_word_len;
  std::size_t max_form = SearchCaps{}.max_form_len;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> max_states;
  std::string mode = "ordered";

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-word", max_word, "Longest terminal word reported")->capture_default_str();
    cmd->add_option("--max-form", max_form, "Longest sentential form kept")->capture_default_str();
    cmd->add_option("--max-steps", max_steps, "Derivation depth bound");
    cmd->add_option("--max-states", max_states, "Visited-form budget");
    cmd->add_option("--mode", mode, "Rule order inside matrices")
        ->check(CLI::IsMember({"ordered", "unordered"}))
        ->capture_default_str();
  }

  SearchCaps caps() const {
    SearchCaps c{max_form, max_word, max_steps, max_states};
    c.validate();
    return c;
  }

  Mode parsed_mode() const { return *parse_mode(mode); }
};

std::string opt_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

ScmGrammar require_scm(Grammar g, const std::string& path) {
  if (auto* s = std::get_if<ScmGrammar>(&g)) return std::move(*s);
  throw Error("'" + path + "' is a " + std::string(to_string(kind_of(g))) +
              " grammar; an scm grammar is required");
}

std::string condition_text(const SymbolTable& t, const std::optional<Word>& w) {
  return w ? t.render(*w) : std::string("-");
}

std::string rules_text(const SymbolTable& t, const Matrix& m) {
  std::string out;
  for (std::size_t k = 0; k < m.rules.size(); ++k) {
    out += (k ? ", " : "") + t.render(Word{m.rules[k].lhs}) + " -> " + t.render(m.rules[k].rhs);
  }
  return out;
}

void explain(const Grammar& g, std::ostream& os) {
  const SymbolTable& t = symbols_of(g);
  os << "kind " << to_string(kind_of(g)) << ", start " << t.name(start_of(g)) << "\n";
  os << "terminals:";
  for (const auto& n : t.terminal_names()) os << " " << quote_symbol(n);
  os << "\nnonterminals:";
  for (const auto& n : t.nonterminal_names()) os << " " << quote_symbol(n);
  os << "\n";
  if (const auto* scm = std::get_if<ScmGrammar>(&g)) {
    for (const auto& m : scm->matrices()) {
      os << "matrix " << quote_symbol(m.label) << ": " << rules_text(t, m) << "\n  length "
         << m.length() << ", ";
      if (!m.conditional()) {
        os << "unconditional\n";
        continue;
      }
      os << "permit " << condition_text(t, m.permit) << ", forbid " << condition_text(t, m.forbid)
         << ", " << (m.simple() ? "simple" : "not simple") << "\n";
    }
    const auto p = metrics(*scm);
    os << "metrics " << format_tuple(p) << " " << format_metrics(p) << "\n";
  } else if (const auto* gen = std::get_if<GeneralGrammar>(&g)) {
    for (std::size_t k = 0; k < gen->rules().size(); ++k) {
      const auto& r = gen->rules()[k];
      os << "rule p" << k + 1 << ": " << t.render(r.lhs) << " -> " << t.render(r.rhs);
      if (r.role) os << "  [" << to_string(*r.role) << "]";
      os << "\n";
    }
    if (is_normal_form(gen->kind())) {
      const auto rep = validate_normal_form(*gen, gen->kind());
      os << (rep ? "valid " + std::string(to_string(gen->kind())) : rep.summary()) << "\n";
    }
  } else {
    const auto& gc = std::get<GcGrammar>(g);
    for (const auto& n : gc.nodes()) {
      os << "node " << n.index << ": ";
      if (!n.rule) {
        os << "final\n";
        continue;
      }
      os << t.render(Word{n.rule->lhs}) << " -> " << t.render(n.rule->rhs) << ", green";
      for (auto k : n.green) os << " " << k;
      os << ", red";
      if (n.red.empty()) os << " -";
      for (auto k : n.red) os << " " << k;
      os << "\n";
    }
  }
}

int print_cases(const std::vector<CaseResult>& results) {
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
    failed += r.pass ? 0 : 1;
  }
  std::cout << results.size() - failed << " passed, " << failed << " failed\n";
  return failed ? kNo : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-conditional matrix grammar toolkit"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("--verbose", verbose, "Print timing to stderr");

  std::function<int()> action;
  std::string input, second, output, target, theorem, start, manifest;
  CapsOptions caps;
  bool builtin = false;

  auto* cmd_metrics = app.add_subcommand("metrics", "Print the parameter tuple of an scm grammar");
  cmd_metrics->add_option("grammar", input)->required();
  cmd_metrics->callback([&] {
    action = [&] {
      const auto g = require_scm(parse_grammar_file(input), input);
      std::cout << format_metrics(metrics(g)) << "\n";
      return kOk;
    };
  });

  auto* cmd_encode = app.add_subcommand("encode", "Encode a gnf52 grammar into another normal form");
  cmd_encode->add_option("grammar", input)->required();
  cmd_encode->add_option("--target", target, "gnf42, gnf32, mmnf, smmnf or mmmnf")->required();
  cmd_encode->add_option("-o", output, "Output file (stdout if omitted)");
  cmd_encode->callback([&] {
    action = [&] {
      const auto kind = parse_grammar_kind(target);
      if (!kind || kind == GrammarKind::gnf52 || !is_normal_form(*kind))
        throw CLI::ValidationError("--target", "unknown target '" + target + "'");
      const Grammar g = parse_grammar_file(input);
      const auto* gen = std::get_if<GeneralGrammar>(&g);
      if (!gen) throw KindMismatch("'" + input + "' is not a gnf52 grammar");
      const std::string text = serialize_grammar(encode(*gen, *kind));
      if (output.empty()) std::cout << text;
      else write_file(output, text);
      return kOk;
    };
  });

  auto* cmd_transform = app.add_subcommand("transform", "Build the scm grammar of a construction");
  cmd_transform->add_option("grammar", input)->required();
  cmd_transform->add_option("--theorem", theorem, "Construction id, thm1 ... thm9")->required();
  cmd_transform->add_option("-o", output, "Output file; a .metrics sidecar is written next to it");
  cmd_transform->callback([&] {
    action = [&] {
      const auto id = parse_construction(theorem);
      if (!id) throw CLI::ValidationError("--theorem", "unknown construction '" + theorem + "'");
      const ScmGrammar out = construct(*id, parse_grammar_file(input));
      const std::string text = serialize_grammar(out);
      if (output.empty()) {
        std::cout << text;
        return kOk;
      }
      write_file(output, text);
      const auto p = metrics(out);
      write_file(output + ".metrics", "i " + std::to_string(p.i) + "\nj " + std::to_string(p.j) +
                                          "\nn " + std::to_string(p.n) + "\nm " +
                                          std::to_string(p.m) + "\nl " + std::to_string(p.l) +
                                          "\ns " + std::to_string(p.s) + "\n");
      std::cout << format_metrics(p) << "\n";
      return kOk;
    };
  });

  auto* cmd_enum = app.add_subcommand("enum", "List the bounded language of a grammar");
  cmd_enum->add_option("grammar", input)->required();
  caps.attach(cmd_enum);
  cmd_enum->callback([&] {
    action = [&] {
      const Grammar g = parse_grammar_file(input);
      const SearchCaps c = caps.caps();
      const auto lang = enumerate_language(g, c, caps.parsed_mode());
      std::cout << "# caps maxWord=" << c.max_word_len << " maxForm=" << c.max_form_len
                << " maxSteps=" << opt_text(c.max_steps) << " maxStates=" << opt_text(c.max_states)
                << " mode=" << caps.mode << " saturated=" << (lang.saturated ? "yes" : "no")
                << " budgetExhausted=" << (lang.budget_exhausted ? "yes" : "no")
                << " states=" << lang.states_explored << "\n";
      for (const auto& w : lang.words) std::cout << symbols_of(g).render(w) << "\n";
      return kOk;
    };
  });

  auto* cmd_equiv = app.add_subcommand("equiv", "Compare two bounded languages");
  cmd_equiv->add_option("left", input)->required();
  cmd_equiv->add_option("right", second)->required();
  caps.attach(cmd_equiv);
  cmd_equiv->callback([&] {
    action = [&] {
      const Grammar a = parse_grammar_file(input);
      const Grammar b = parse_grammar_file(second);
      const auto rep = assert_bounded_equal(a, b, caps.caps(), caps.parsed_mode());
      if (rep.equal()) {
        std::cout << "EQUAL (" << (rep.fixed_point_stable ? "fixed-point stable" : "not fixed-point stable")
                  << ")\n";
      } else {
        std::cout << "DIFFERENT\n";
        for (const auto& w : rep.left_only) std::cout << "left only: " << w << "\n";
        for (const auto& w : rep.right_only) std::cout << "right only: " << w << "\n";
      }
      if (rep.budget_exhausted) std::cout << "state budget exhausted\n";
      return rep.equal() && rep.fixed_point_stable && !rep.budget_exhausted ? kOk : kNo;
    };
  });

  auto* cmd_trace = app.add_subcommand("trace", "Replay a derivation trace");
  cmd_trace->add_option("grammar", input)->required();
  cmd_trace->add_option("trace", second)->required();
  cmd_trace->add_option("--start", start, "Start form (overrides the trace's start line)");
  cmd_trace->add_option("--mode", caps.mode, "Rule order inside matrices")
      ->check(CLI::IsMember({"ordered", "unordered"}));
  cmd_trace->callback([&] {
    action = [&] {
      const ScmGrammar g = require_scm(parse_grammar_file(input), input);
      const Trace t = parse_trace(read_text_file(second));
      const SymbolTable& sym = g.symbols();
      Word x = !start.empty() ? sym.word(start) : t.start ? sym.word(*t.start) : Word{g.start()};
      std::cout << "start " << sym.render(x) << "\n";
      // Validate the whole trace first so a failure names its own step.
      check_trace(g, x, t.steps, caps.parsed_mode());
      for (const auto& st : t.steps) {
        x = check_trace(g, x, {st}, caps.parsed_mode());
        std::cout << "=> " << st.label << " " << sym.render(x) << "\n";
      }
      return kOk;
    };
  });

  auto* cmd_explain = app.add_subcommand("explain", "Describe a grammar matrix by matrix");
  cmd_explain->add_option("grammar", input)->required();
  cmd_explain->callback([&] {
    action = [&] {
      explain(parse_grammar_file(input), std::cout);
      return kOk;
    };
  });

  auto* cmd_suite = app.add_subcommand("suite", "Run a case manifest or the built-in suites");
  cmd_suite->add_option("manifest", manifest);
  cmd_suite->add_flag("--builtin", builtin, "Run the built-in golden-trace and stuck-case suites");
  cmd_suite->callback([&] {
    action = [&] {
      if (manifest.empty() && !builtin)
        throw CLI::ValidationError("suite", "give a manifest or --builtin");
      std::vector<CaseResult> all;
      if (builtin) {
        for (auto& r : run_golden_traces(golden_traces())) all.push_back(std::move(r));
        for (auto& r : run_stuck_suite(stuck_cases())) all.push_back(std::move(r));
      }
      if (!manifest.empty())
        for (auto& r : run_manifest(manifest)) all.push_back(std::move(r));
      return print_cases(all);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    status = action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kNo;
  }
  if (verbose) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "elapsed " << ms << " ms\n";
  }
  return status;
}
