#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scmlab/grammar.hpp"
#include "scmlab/rewrite.hpp"

namespace scmlab {

/// A small input grammar with its known bounded language.
struct Fixture {
  std::string name;
  Grammar grammar;
  SearchCaps caps;
  std::vector<std::string> expected;  ///< rendered words, "eps" for the empty word
  std::string note;
};

/// gnf52: S -> ASa | ASBB | ABB | AB plus AB -> eps, CD -> eps. Generates a*;
/// only the AB eraser fires.
GeneralGrammar fixture_g0();
/// As fixture_g0 with C, D in place of A, B, so only the CD eraser fires.
GeneralGrammar fixture_g1();
/// Graph-controlled: 1: A -> aA (green 1, 2); 2: A -> a (green 3); 3 final.
/// Generates { a^n : n >= 2 }.
GcGrammar fixture_gc0();
/// Graph-controlled over {a, b}: 1: B -> b (green 1, red 2); 2: A -> a
/// (green 3); 3 final. The only derivation takes the red arc; generates {a}.
GcGrammar fixture_gc1();

/// Canonical file text of the four fixtures, as shipped in the test data.
std::string_view fixture_text(std::string_view name);

std::vector<Fixture> fixtures();

}  // namespace scmlab
