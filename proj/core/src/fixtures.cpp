#include "scmlab/fixtures.hpp"

#include "scmlab/errors.hpp"
#include "scmlab/grammar_io.hpp"

namespace scmlab {

namespace {

constexpr std::string_view kG0 = R"(kind: gnf52
terminals: a
nonterminals: A B C D S
start: S
rule: S -> A S a
rule: S -> A S B B
rule: S -> A B B
rule: S -> A B
rule: A B -> eps
rule: C D -> eps
)";

constexpr std::string_view kG1 = R"(kind: gnf52
terminals: a
nonterminals: A B C D S
start: S
rule: S -> C S a
rule: S -> C S D D
rule: S -> C D D
rule: S -> C D
rule: A B -> eps
rule: C D -> eps
)";

constexpr std::string_view kGC0 = R"(kind: gc
terminals: a
nonterminals: A B
start: A
initial: 1
final: 3
node 1: A -> a A ; green: 1 2 ; red: -
node 2: A -> a ; green: 3 ; red: -
node 3: final
)";

constexpr std::string_view kGC1 = R"(kind: gc
terminals: a b
nonterminals: A B
start: A
initial: 1
final: 3
node 1: B -> b ; green: 1 ; red: 2
node 2: A -> a ; green: 3 ; red: -
node 3: final
)";

template <class T>
T parse_as(std::string_view text) {
  return std::get<T>(parse_grammar(text));
}

}  // namespace

GeneralGrammar fixture_g0() { return parse_as<GeneralGrammar>(kG0); }
GeneralGrammar fixture_g1() { return parse_as<GeneralGrammar>(kG1); }
GcGrammar fixture_gc0() { return parse_as<GcGrammar>(kGC0); }
GcGrammar fixture_gc1() { return parse_as<GcGrammar>(kGC1); }

std::string_view fixture_text(std::string_view name) {
  if (name == "g0") return kG0;
  if (name == "g1") return kG1;
  if (name == "gc0") return kGC0;
  if (name == "gc1") return kGC1;
  throw Error("unknown fixture '" + std::string(name) + "'");
}

std::vector<Fixture> fixtures() {
  const SearchCaps type0_caps{16, 3, std::nullopt, std::nullopt};
  return {
      {"g0", fixture_g0(), type0_caps, {"eps", "a", "a a", "a a a"}, "A^n S a^n, then AB erasers"},
      {"g1", fixture_g1(), type0_caps, {"eps", "a", "a a", "a a a"}, "C^n S a^n, then CD erasers"},
      {"gc0", fixture_gc0(), {20, 4, std::nullopt, std::nullopt}, {"a a", "a a a", "a a a a"},
       "a^n, n >= 2"},
      {"gc1", fixture_gc1(), {20, 2, std::nullopt, std::nullopt}, {"a"}, "red arc from node 1"},
  };
}

}  // namespace scmlab
