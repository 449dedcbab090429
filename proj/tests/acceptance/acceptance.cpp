// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion, followed by
// indented detail lines, and exits non-zero if any criterion fails.
//
// Tolerances are pinned here and nowhere else: language comparisons are
// exact, metric rows are exact, and the runtime limits below are hard.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scmlab/constructions.hpp"
#include "scmlab/errors.hpp"
#include "scmlab/fixtures.hpp"
#include "scmlab/graph_control.hpp"
#include "scmlab/metrics.hpp"
#include "scmlab/normal_forms.hpp"
#include "scmlab/verification.hpp"

namespace {

using namespace scmlab;
using Clock = std::chrono::steady_clock;

constexpr double kMetricsSeconds = 1.0;         // whole metrics table
constexpr double kSimulationSeconds = 60.0;     // per construction
constexpr std::size_t kStateBudget = 2'000'000; // per enumeration
constexpr std::size_t kOracleFormLen = 8;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(std::string line) {
    pass = false;
    details.push_back("FAIL " + std::move(line));
  }
  void note(std::string line) { details.push_back(std::move(line)); }
  void check(bool ok, std::string line) { ok ? note("ok   " + line) : fail(std::move(line)); }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string seconds_text(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

std::string join(const std::vector<std::string>& words) {
  std::string out = "{";
  for (std::size_t k = 0; k < words.size(); ++k) out += (k ? ", " : "") + words[k];
  return out + "}";
}

std::vector<std::string> rendered(const Grammar& g, const BoundedLanguage& lang) {
  std::vector<std::string> out;
  for (const NamedWord& w : named_words(g, lang)) out.push_back(render_named(w));
  return out;
}

const std::vector<std::pair<std::string, GeneralGrammar>>& type0_fixtures() {
  static const std::vector<std::pair<std::string, GeneralGrammar>> f{{"G0", fixture_g0()},
                                                                     {"G1", fixture_g1()}};
  return f;
}

std::size_t simulation_form_len(ConstructionId id) {
  switch (id) {
    case ConstructionId::scm_634723:
    case ConstructionId::scm_633:
    case ConstructionId::scm_723:
      return 24;
    default:
      return 18;
  }
}

std::string describe(const EquivalenceReport& r) {
  std::string out = r.equal() ? "equal" : "different";
  out += r.fixed_point_stable ? ", stable" : ", not stable";
  if (r.budget_exhausted) out += ", state budget exhausted";
  if (!r.left_only.empty()) out += ", source only " + join(r.left_only);
  if (!r.right_only.empty()) out += ", construction only " + join(r.right_only);
  return out;
}

bool accepted(const EquivalenceReport& r) {
  return r.equal() && r.fixed_point_stable && !r.budget_exhausted;
}

// 1. Each construction on its fixture input has exactly its row.
Outcome metrics_rows() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& info : constructions()) {
    const auto p = metrics(fixture_construction(info.id));
    bool ok = info.expected.matches(p);
    if (!info.expected.i) ok = ok && p.i == 0;  // an unbounded degree still means no permit
    if (info.id == ConstructionId::sscm_gc) {
      const ScmGrammar g = fixture_construction(info.id);
      for (const auto& m : g.matrices()) ok = ok && !m.permit;
    }
    o.check(ok, std::string(info.cli_id) + " " + format_tuple(p) + " against " +
                    info.expected.format());
  }
  const double s = seconds_since(t0);
  o.check(s < kMetricsSeconds, "runtime " + seconds_text(s) + " < " + seconds_text(kMetricsSeconds));
  return o;
}

// 2. Every construction simulates both type-0 fixtures at the fixed caps.
Outcome bounded_simulation() {
  Outcome o;
  for (const auto& info : constructions()) {
    if (info.id == ConstructionId::sscm_gc) continue;
    const SearchCaps caps{simulation_form_len(info.id), 3, std::nullopt, kStateBudget};
    for (const auto& [name, g] : type0_fixtures()) {
      const auto t0 = Clock::now();
      const ScmGrammar c = construct(info.id, encode(g, info.input_kind));
      const auto rep = assert_bounded_equal(g, c, caps);
      const double s = seconds_since(t0);
      o.check(accepted(rep) && s < kSimulationSeconds,
              std::string(info.cli_id) + " on " + name + " maxForm=" +
                  std::to_string(caps.max_form_len) + ": " + describe(rep) + ", " + seconds_text(s));
    }
  }
  return o;
}

// 3. The graph-controlled construction simulates both GC fixtures.
Outcome graph_control_simulation() {
  Outcome o;
  const std::vector<std::tuple<std::string, GcGrammar, SearchCaps, std::vector<std::string>>> cases{
      {"GC0", fixture_gc0(), {20, 4, std::nullopt, kStateBudget}, {"a a", "a a a", "a a a a"}},
      {"GC1", fixture_gc1(), {20, 2, std::nullopt, kStateBudget}, {"a"}},
  };
  for (const auto& [name, gc, caps, expected] : cases) {
    const ScmGrammar c = gc_to_sscm(gc);
    const auto rep = assert_bounded_equal(gc, c, caps);
    const auto words = rendered(Grammar{c}, enumerate_language(Grammar{c}, caps));
    o.check(accepted(rep) && words == expected,
            "thm9 on " + name + ": " + describe(rep) + ", language " + join(words));
  }
  return o;
}

Outcome from_cases(const std::vector<CaseResult>& results) {
  Outcome o;
  for (const auto& r : results) o.check(r.pass, r.name + " (" + r.detail + ")");
  return o;
}

// 6. Rule order inside a matrix does not change any language.
Outcome order_invariance() {
  Outcome o;
  for (const auto& info : constructions()) {
    if (info.id == ConstructionId::sscm_gc) continue;
    const SearchCaps caps{simulation_form_len(info.id), 3, std::nullopt, kStateBudget};
    for (const auto& [name, g] : type0_fixtures()) {
      const Grammar c = construct(info.id, encode(g, info.input_kind));
      const auto ord = enumerate_language(c, caps, Mode::ordered);
      const auto any = enumerate_language(c, caps, Mode::unordered);
      const bool budget = ord.budget_exhausted || any.budget_exhausted;
      std::string line = std::string(info.cli_id) + " on " + name + ": ordered " +
                         join(rendered(c, ord)) + ", unordered " + join(rendered(c, any));
      if (budget) line += ", state budget exhausted";
      o.check(ord.words == any.words && !budget, line);
    }
  }
  return o;
}

// 7a. Every bounded-reachable form of an encoded fixture is in its family.
void family_membership(Outcome& o) {
  constexpr std::size_t kFormLen = 20;
  for (const auto& [name, g] : type0_fixtures()) {
    for (auto kind : {GrammarKind::gnf52, GrammarKind::gnf42, GrammarKind::gnf32, GrammarKind::mmnf,
                      GrammarKind::smmnf, GrammarKind::mmmnf}) {
      const GeneralGrammar e = kind == GrammarKind::gnf52 ? g : encode(g, kind);
      const Family family = *family_for(kind);
      const FamilyValidator v(family, e.symbols());
      const auto forms = reachable_forms(e, {kFormLen, kFormLen, std::nullopt, kStateBudget});
      std::vector<std::string> outside;
      for (const Word& w : forms)
        if (!v.member(w)) outside.push_back(e.symbols().render(w));
      std::string line = std::string(to_string(family)) + " on " + name + " via " +
                         std::string(to_string(kind)) + ": " + std::to_string(forms.size()) +
                         " forms, " + std::to_string(outside.size()) + " outside";
      if (!outside.empty()) line += ", e.g. '" + outside.front() + "'";
      o.check(outside.empty(), line);
    }
  }
}

// 7b. gnf42: no CC or AB while S is present, and never B before A.
void gnf42_assertions(Outcome& o) {
  constexpr std::size_t kFormLen = 24;
  for (const auto& [name, g] : type0_fixtures()) {
    const GeneralGrammar e = encode_gnf42(g);
    const auto& t = e.symbols();
    const Word cc = t.word("C C"), ab = t.word("A B");
    const Symbol s = t.at("S"), a = t.at("A"), b = t.at("B");
    std::size_t with_s = 0, pair_violations = 0, order_violations = 0;
    for (const Word& w : reachable_forms(e, {kFormLen, kFormLen, std::nullopt, kStateBudget})) {
      if (w.contains(s)) {
        ++with_s;
        pair_violations += w.contains(cc) || w.contains(ab);
      }
      bool seen_b = false;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == b) seen_b = true;
        if (w[k] == a && seen_b) {
          ++order_violations;
          break;
        }
      }
    }
    o.check(pair_violations == 0, "gnf42 on " + name + ": " + std::to_string(with_s) +
                                      " forms with S, " + std::to_string(pair_violations) +
                                      " containing CC or AB");
    o.check(order_violations == 0, "gnf42 on " + name + ": " + std::to_string(order_violations) +
                                       " forms with B before A");
  }
}

// 7c. State counts k + g(l) after a failure never collide with each other
// or with plain state counts.
void anti_aliasing(Outcome& o) {
  std::size_t collisions = 0;
  for (std::size_t v = 1; v <= 12; ++v)
    for (std::size_t k = 1; k <= v; ++k)
      for (std::size_t l = 1; l <= v; ++l) {
        const std::size_t count = k + failure_offset(v, l);
        if (count <= v) ++collisions;
        for (std::size_t l2 = 1; l2 <= v; ++l2)
          if (count == l2 + failure_offset(v, l2) && !(k == l && l == l2)) ++collisions;
      }
  o.check(collisions == 0, "failure offsets for v <= 12: " + std::to_string(collisions) + " collisions");
}

Outcome structural_invariants() {
  Outcome o;
  family_membership(o);
  gnf42_assertions(o);
  anti_aliasing(o);
  return o;
}

// 8. The main enumerator agrees with the reference enumerator.
Outcome engine_oracle() {
  Outcome o;
  std::vector<std::pair<std::string, Grammar>> grammars;
  for (const auto& f : fixtures()) grammars.emplace_back(f.name, f.grammar);
  for (const auto& info : constructions()) {
    if (info.id == ConstructionId::sscm_gc) {
      grammars.emplace_back("thm9 on GC0", gc_to_sscm(fixture_gc0()));
      grammars.emplace_back("thm9 on GC1", gc_to_sscm(fixture_gc1()));
      continue;
    }
    for (const auto& [name, g] : type0_fixtures())
      grammars.emplace_back(std::string(info.cli_id) + " on " + name,
                            construct(info.id, encode(g, info.input_kind)));
  }
  for (const auto& [name, g] : grammars) {
    std::size_t compared = 0, mismatched = 0;
    for (std::size_t form = 1; form <= kOracleFormLen; ++form)
      for (Mode mode : {Mode::ordered, Mode::unordered}) {
        if (mode == Mode::unordered && !std::holds_alternative<ScmGrammar>(g)) continue;
        const SearchCaps caps{form, form, std::nullopt, std::nullopt};
        ++compared;
        mismatched += named_words(g, enumerate_language(g, caps, mode)) !=
                      reference_language(g, caps, mode);
      }
    o.check(mismatched == 0, name + ": " + std::to_string(compared) + " cap settings, " +
                                 std::to_string(mismatched) + " mismatches");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 metrics rows", metrics_rows},
      {"2 bounded simulation of G0 and G1", bounded_simulation},
      {"3 graph-controlled simulation", graph_control_simulation},
      {"4 golden traces", [] { return from_cases(run_golden_traces(golden_traces())); }},
      {"5 stuck cases", [] { return from_cases(run_stuck_suite(stuck_cases())); }},
      {"6 ordered and unordered languages agree", order_invariance},
      {"7 structural invariants", structural_invariants},
      {"8 engine agrees with reference enumerator", engine_oracle},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << "  (" << seconds_text(seconds_since(t0))
              << ")\n";
    for (const auto& d : o.details) std::cout << "       " << d << "\n";
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
