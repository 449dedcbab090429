#include <gtest/gtest.h>

#include "scmlab/errors.hpp"
#include "scmlab/fixtures.hpp"
#include "scmlab/grammar_io.hpp"
#include "scmlab/metrics.hpp"
#include "test_support.hpp"

namespace scmlab {
namespace {

using test::scm;

constexpr std::string_view kSmall = R"(kind: scm
terminals: a
nonterminals: S A B '#'
start: S
matrix r3 { rules: '#'->eps, '#'->eps ; permit: '#' '#' ; forbid: - }
matrix m { rules: S -> A B ; permit: - ; forbid: - }
)";

TEST(SymbolTable, CanonicalIdsPutTerminalsFirst) {
  const SymbolTable t({"b", "a"}, {"S", "A"});
  EXPECT_EQ(t.name(static_cast<Symbol>(0)), "a");
  EXPECT_EQ(t.name(static_cast<Symbol>(1)), "b");
  EXPECT_EQ(t.name(static_cast<Symbol>(2)), "A");
  EXPECT_TRUE(t.is_terminal(t.at("b")));
  EXPECT_TRUE(t.is_nonterminal(t.at("S")));
  EXPECT_EQ(t, SymbolTable({"a", "b"}, {"A", "S"}));
}

TEST(SymbolTable, RejectsClashesAndBadNames) {
  EXPECT_THROW(SymbolTable({"a"}, {"a"}), GrammarError);
  EXPECT_THROW(SymbolTable({"a", "a"}, {}), GrammarError);
  EXPECT_THROW(SymbolTable({"eps"}, {}), GrammarError);
  EXPECT_THROW(SymbolTable({"a b"}, {}), GrammarError);
}

TEST(SymbolTable, WordsParseAndRender) {
  const SymbolTable t({"a"}, {"S", "#", "$"});
  const Word w = t.word("a '#' S $");
  EXPECT_EQ(w.size(), 4u);
  EXPECT_EQ(t.render(w), "a '#' S '$'");
  EXPECT_TRUE(t.word("eps").empty());
  EXPECT_TRUE(t.word("").empty());
  EXPECT_EQ(t.render(Word{}), "eps");
  EXPECT_THROW(t.word("a Z"), GrammarError);
}

TEST(Word, FactorsAndLengthLexOrder) {
  const SymbolTable t({"a"}, {"A", "B"});
  const Word w = t.word("A B B A");
  EXPECT_TRUE(w.contains(t.word("B B")));
  EXPECT_FALSE(w.contains(t.word("A A")));
  EXPECT_EQ(w.occurrences(t.at("A")), (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(w.replace_at(1, t.word("a a")), t.word("A a a B A"));
  EXPECT_LT(t.word("B"), t.word("A A"));
  EXPECT_LT(t.word("A B"), t.word("B A"));
}

TEST(ParseGrammar, MatrixWithPermitOnly) {
  const ScmGrammar g = scm(kSmall);
  const Matrix* r3 = g.find_matrix("r3");
  ASSERT_NE(r3, nullptr);
  EXPECT_EQ(r3->length(), 2u);
  ASSERT_TRUE(r3->permit.has_value());
  EXPECT_EQ(g.symbols().render(*r3->permit), "'#' '#'");
  EXPECT_FALSE(r3->forbid.has_value());
  EXPECT_TRUE(r3->conditional());
  EXPECT_TRUE(r3->simple());
}

TEST(ParseGrammar, UnconditionalMatrix) {
  const Matrix* m = scm(kSmall).find_matrix("m");
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->length(), 1u);
  EXPECT_FALSE(m->conditional());
}

TEST(ParseGrammar, ConditionClausesMayBeOmittedOrSwapped) {
  const ScmGrammar g = scm(R"(kind: scm
terminals: a
nonterminals: S
start: S
matrix x { rules: S -> a ; forbid: a ; permit: S }
matrix y { rules: S -> eps }
)");
  EXPECT_TRUE(g.find_matrix("x")->permit && g.find_matrix("x")->forbid);
  EXPECT_FALSE(g.find_matrix("y")->conditional());
}

TEST(ParseGrammar, ErrorsCarryLineNumbers) {
  const auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_grammar(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  const std::string head = "kind: scm\nterminals: a\nnonterminals: S\nstart: S\n";
  EXPECT_EQ(line_of(head + "matrix m { rules: S -> Z ; permit: - ; forbid: - }\n"), 5u);
  EXPECT_EQ(line_of(head + "matrix m { rules: a -> S }\n"), 5u);
  EXPECT_EQ(line_of(head + "matrix m { rules: S -> a ; permit: eps }\n"), 5u);
  EXPECT_EQ(line_of(head + "\nmatrix m { rules: S -> a\n"), 6u);
  EXPECT_EQ(line_of(head + "matrix m { rules: S -> a }\nmatrix m { rules: S -> a }\n"), 6u);
  EXPECT_EQ(line_of(head + "rule: S -> a\n"), 5u);
  EXPECT_EQ(line_of("kind: nonsense\n"), 1u);
}

TEST(ParseGrammar, CommentsAndBlankLines) {
  const ScmGrammar g = scm("# header\nkind: scm\n\nterminals: a\n  # indented\nnonterminals: S\nstart: S\n");
  EXPECT_TRUE(g.matrices().empty());
}

TEST(SerializeGrammar, UnconditionalMatrixLine) {
  const std::string text = serialize_grammar(scm(R"(kind: scm
terminals: a
nonterminals: S
start: S
matrix m { rules: S -> a }
)"));
  EXPECT_NE(text.find("matrix m { rules: S -> a ; permit: - ; forbid: - }"), std::string::npos);
}

TEST(SerializeGrammar, EmptyTerminalLine) {
  const std::string text =
      serialize_grammar(scm("kind: scm\nterminals:\nnonterminals: S\nstart: S\n"));
  EXPECT_NE(text.find("terminals:\n"), std::string::npos);
}

TEST(SerializeGrammar, RoundTripIsIdempotentOnFixtures) {
  for (const char* name : {"g0", "g1", "gc0", "gc1"}) {
    const Grammar g = parse_grammar(fixture_text(name));
    const std::string once = serialize_grammar(g);
    EXPECT_EQ(parse_grammar(once), g) << name;
    EXPECT_EQ(serialize_grammar(parse_grammar(once)), once) << name;
  }
  const Grammar small = parse_grammar(kSmall);
  EXPECT_EQ(parse_grammar(serialize_grammar(small)), small);
}

TEST(SerializeGrammar, RolesRoundTrip) {
  const std::string text = R"(kind: gnf52
terminals: a
nonterminals: A B C D S
start: S
rule: S -> A S a
rule: S -> A B
rule: A B -> eps
rule: C D -> eps
role p1: stage1
role p2: stage2-final
role p3: eraser
role p4: eraser
)";
  const Grammar g = parse_grammar(text);
  EXPECT_EQ(std::get<GeneralGrammar>(g).rules()[1].role, RuleRole::stage2_final);
  EXPECT_EQ(parse_grammar(serialize_grammar(g)), g);
}

TEST(Metrics, SmallGrammar) {
  const auto p = metrics(scm(kSmall));
  EXPECT_EQ(p, (ParameterTuple{2, 0, 4, 1, 2, 0}));
  EXPECT_EQ(format_metrics(p), "i=2 j=0 n=4 m=1 l=2 s=0");
  EXPECT_EQ(format_tuple(p), "(2,0;4;1,2,0)");
}

TEST(Metrics, UnconditionalOnlyHasZeroDegree) {
  const auto p = metrics(scm(R"(kind: scm
terminals: a
nonterminals: S A
start: S
matrix p1 { rules: S -> A A, A -> a }
matrix p2 { rules: A -> a }
)"));
  EXPECT_EQ(p.i, 0u);
  EXPECT_EQ(p.j, 0u);
  EXPECT_EQ(p.m, 0u);
  EXPECT_EQ(p.s, 0u);
  EXPECT_EQ(p.l, 2u);
}

TEST(Metrics, CountsNonSimpleMatrices) {
  const auto p = metrics(scm(R"(kind: scm
terminals: a
nonterminals: S
start: S
matrix x { rules: S -> a ; permit: S ; forbid: a a a }
matrix y { rules: S -> a ; forbid: a }
)"));
  EXPECT_EQ(p, (ParameterTuple{1, 3, 1, 2, 1, 1}));
}

TEST(ParameterBound, StarAdmitsAnything) {
  const ParameterBound b{0, std::nullopt, 3, std::nullopt, std::nullopt, 0};
  EXPECT_EQ(b.format(), "(0,*;3;*,*,0)");
  EXPECT_TRUE(b.matches(ParameterTuple{0, 9, 3, 40, 7, 0}));
  EXPECT_FALSE(b.matches(ParameterTuple{1, 9, 3, 40, 7, 0}));
  EXPECT_TRUE(b.admits(ParameterTuple{0, 1, 2, 1, 1, 0}));
}

TEST(Grammar, ConstructorValidates) {
  const SymbolTable t({"a"}, {"S"});
  EXPECT_THROW(ScmGrammar(t, t.at("a"), {}), GrammarError);
  EXPECT_THROW(ScmGrammar(t, t.at("S"), {Matrix{"m", {}, {}, {}}}), GrammarError);
  EXPECT_THROW(ScmGrammar(t, t.at("S"), {Matrix{"m", {{t.at("S"), {}}}, Word{}, {}}}), GrammarError);
  EXPECT_THROW(ScmGrammar(t, t.at("S"), {Matrix{"", {{t.at("S"), {}}}, {}, {}}}), GrammarError);
  EXPECT_THROW(GeneralGrammar(GrammarKind::type0, t, t.at("S"), {{t.word("a"), {}, {}}}),
               GrammarError);
}

}  // namespace
}  // namespace scmlab
