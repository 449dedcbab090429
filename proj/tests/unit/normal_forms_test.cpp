#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "scmlab/errors.hpp"
#include "scmlab/fixtures.hpp"
#include "scmlab/normal_forms.hpp"
#include "scmlab/verification.hpp"
#include "test_support.hpp"

namespace scmlab {
namespace {

using Blocks = std::vector<std::vector<std::string>>;

/// P* C (Q u T)* as an explicit NFA over symbol names, determinised on the
/// fly. States are (phase, block, offset): phase 0 reads a P block, phase 1
/// a center, phase 2 a Q block; offset 0 in phases 0 and 2 is the boundary.
class ReferenceAutomaton {
 public:
  ReferenceAutomaton(Blocks p, Blocks centers, Blocks q, std::set<std::string> terminals)
      : p_(std::move(p)), c_(std::move(centers)), q_(std::move(q)), t_(std::move(terminals)) {}

  using State = std::tuple<int, std::size_t, std::size_t>;
  using States = std::set<State>;

  States initial() const { return close({{0, 0, 0}}); }

  States next(const States& from, const std::string& sym) const {
    States out;
    for (const auto& [phase, block, off] : from) {
      if (phase == 0 && off == 0) {
        for (std::size_t b = 0; b < p_.size(); ++b)
          if (p_[b][0] == sym) out.insert(advance(0, b, 1));
        for (std::size_t b = 0; b < c_.size(); ++b)
          if (!c_[b].empty() && c_[b][0] == sym) out.insert(advance(1, b, 1));
      } else if (phase == 0) {
        if (p_[block][off] == sym) out.insert(advance(0, block, off + 1));
      } else if (phase == 1) {
        if (c_[block][off] == sym) out.insert(advance(1, block, off + 1));
      } else if (off == 0) {
        for (std::size_t b = 0; b < q_.size(); ++b)
          if (q_[b][0] == sym) out.insert(advance(2, b, 1));
        if (t_.count(sym)) out.insert({2, 0, 0});
      } else if (q_[block][off] == sym) {
        out.insert(advance(2, block, off + 1));
      }
    }
    return close(out);
  }

  bool accepts(const States& s) const { return s.count({2, 0, 0}) > 0; }

 private:
  State advance(int phase, std::size_t block, std::size_t off) const {
    const Blocks& set = phase == 0 ? p_ : phase == 1 ? c_ : q_;
    if (off < set[block].size()) return {phase, block, off};
    return phase == 0 ? State{0, 0, 0} : State{2, 0, 0};
  }

  States close(States s) const {
    // The empty center links the P boundary to the Q boundary.
    if (s.count({0, 0, 0})) s.insert({2, 0, 0});
    return s;
  }

  Blocks p_, c_, q_;
  std::set<std::string> t_;
};

struct FamilyCase {
  Family family;
  Blocks p, centers, q;
};

std::vector<FamilyCase> family_cases() {
  return {
      {Family::L52, {{"A"}, {"C"}}, {{"S"}, {}}, {{"B"}, {"D"}}},
      {Family::L42, {{"C", "A"}, {"C", "A", "A"}}, {{"S"}, {}, {"C", "C"}}, {{"B", "C"}, {"B", "B", "C"}}},
      {Family::L32, {{"A", "B", "B"}, {"A", "B"}}, {{"S"}, {}, {"A", "A"}, {"A", "B", "A"}},
       {{"B", "A"}, {"B", "B", "A"}}},
      {Family::LMM, {{"0"}, {"1"}}, {{"S"}, {}, {"$"}}, {{"0"}, {"1"}}},
      {Family::LsMM, {{"1", "0"}, {"1", "0", "0"}}, {{"S"}, {}, {"$"}}, {{"0", "1"}, {"0", "0", "1"}}},
  };
}

TEST(FamilyValidator, AgreesWithReferenceAutomatonUpToLengthTen) {
  for (const auto& fc : family_cases()) {
    const SymbolTable table({"a"}, family_nonterminals(fc.family));
    const FamilyValidator v(fc.family, table);
    const ReferenceAutomaton ref(fc.p, fc.centers, fc.q, {"a"});
    std::size_t checked = 0, members = 0, mismatches = 0;
    Word w;
    std::function<void(const ReferenceAutomaton::States&)> walk = [&](const auto& states) {
      const bool expect = ref.accepts(states);
      ++checked;
      members += expect;
      if (v.member(w) != expect && ++mismatches <= 5)
        ADD_FAILURE() << to_string(fc.family) << ": '" << table.render(w) << "' reference says "
                      << expect;
      if (w.size() == 10) return;
      for (std::size_t k = 0; k < table.size(); ++k) {
        const Symbol s = static_cast<Symbol>(k);
        w.push_back(s);
        walk(ref.next(states, table.name(s)));
        w = w.substr(0, w.size() - 1);
      }
    };
    walk(ref.initial());
    EXPECT_EQ(mismatches, 0u) << to_string(fc.family);
    EXPECT_GT(members, 0u);
    RecordProperty(std::string(to_string(fc.family)) + "_words", std::to_string(checked));
  }
}

TEST(FamilyValidator, Examples) {
  const SymbolTable t42({"a"}, family_nonterminals(Family::L42));
  EXPECT_TRUE(family_member(Family::L42, t42, t42.word("C A S B C")));
  const SymbolTable t32({"a"}, family_nonterminals(Family::L32));
  EXPECT_TRUE(family_member(Family::L32, t32, t32.word("A B A")));
  const SymbolTable t52({"a"}, family_nonterminals(Family::L52));
  EXPECT_FALSE(family_member(Family::L52, t52, t52.word("B A")));
  EXPECT_TRUE(family_member(Family::L52, t52, t52.word("A C S B a D a")));
  EXPECT_TRUE(family_member(Family::L52, t52, Word{}));
}

TEST(FamilyValidator, RejectsForeignSymbols) {
  const SymbolTable t({"a"}, {"A", "B", "C", "D", "S", "X"});
  EXPECT_THROW(family_member(Family::L52, t, t.word("X")), Error);
  EXPECT_THROW(FamilyValidator(Family::L42, SymbolTable({"a"}, {"A", "S"})), GrammarError);
}

GeneralGrammar with_extra_rule(const GeneralGrammar& g, std::string_view lhs, std::string_view rhs) {
  auto rules = g.rules();
  rules.push_back({g.symbols().word(lhs), g.symbols().word(rhs), std::nullopt});
  return GeneralGrammar(g.kind(), g.symbols(), g.start(), rules);
}

TEST(ValidateNormalForm, FixturesAreGnf52) {
  EXPECT_TRUE(validate_normal_form(fixture_g0(), GrammarKind::gnf52));
  EXPECT_TRUE(validate_normal_form(fixture_g1(), GrammarKind::gnf52));
}

TEST(ValidateNormalForm, RejectsWrongLeftPart) {
  const auto rep = validate_normal_form(with_extra_rule(fixture_g0(), "S", "B S a"), GrammarKind::gnf52);
  EXPECT_FALSE(rep);
  EXPECT_EQ(rep.offending_rules, (std::vector<std::size_t>{6}));
  EXPECT_FALSE(rep.summary().empty());
}

TEST(ValidateNormalForm, SpecialRulesExactlyOnce) {
  EXPECT_FALSE(validate_normal_form(with_extra_rule(fixture_g0(), "A B", "eps"), GrammarKind::gnf52));
  EXPECT_FALSE(validate_normal_form(with_extra_rule(fixture_g0(), "B A", "eps"), GrammarKind::gnf52));
}

TEST(ValidateNormalForm, EncodingsValidate) {
  for (auto kind : {GrammarKind::gnf42, GrammarKind::gnf32, GrammarKind::mmnf, GrammarKind::smmnf,
                    GrammarKind::mmmnf}) {
    for (const auto& g : {fixture_g0(), fixture_g1()}) {
      const GeneralGrammar e = encode(g, kind);
      EXPECT_EQ(e.kind(), kind);
      const auto rep = validate_normal_form(e, kind);
      EXPECT_TRUE(rep) << to_string(kind) << ": " << rep.summary();
      for (const auto& r : e.rules()) EXPECT_TRUE(r.role.has_value());
    }
  }
}

std::vector<std::string> rule_texts(const GeneralGrammar& g) {
  std::vector<std::string> out;
  for (const auto& r : g.rules())
    out.push_back(g.symbols().render(r.lhs) + " -> " + g.symbols().render(r.rhs));
  return out;
}

bool has_rule(const GeneralGrammar& g, std::string_view text) {
  const auto all = rule_texts(g);
  return std::find(all.begin(), all.end(), text) != all.end();
}

TEST(Encode, Gnf42AppliesTheMorphism) {
  const GeneralGrammar e = encode_gnf42(fixture_g0());
  EXPECT_TRUE(has_rule(e, "S -> C A A S a"));
  EXPECT_TRUE(has_rule(e, "S -> C A A B B C"));
  EXPECT_TRUE(has_rule(e, "A B -> eps"));
  EXPECT_TRUE(has_rule(e, "C C -> eps"));
  EXPECT_EQ(e.symbols().nonterminal_names(), (std::vector<std::string>{"A", "B", "C", "S"}));
}

TEST(Encode, Gnf32AppliesTheMorphism) {
  EXPECT_TRUE(has_rule(encode_gnf32(fixture_g0()), "S -> A B B S a"));
  const GeneralGrammar e = encode_gnf32(fixture_g1());
  EXPECT_TRUE(has_rule(e, "S -> A B B B A"));
  EXPECT_TRUE(has_rule(e, "A A -> eps"));
  EXPECT_TRUE(has_rule(e, "B B B -> eps"));
}

TEST(Encode, MmVariantsInsertTheCenter) {
  EXPECT_TRUE(has_rule(encode_mm(fixture_g0(), GrammarKind::mmnf), "S -> 0 '$' 0"));
  const GeneralGrammar s = encode_mm(fixture_g0(), GrammarKind::smmnf);
  EXPECT_TRUE(has_rule(s, "S -> 1 0 '$' 0 1"));
  EXPECT_TRUE(has_rule(s, "S -> 1 0 S a"));
  EXPECT_TRUE(has_rule(s, "'$' -> eps"));
  const GeneralGrammar m = encode_mm(fixture_g1(), GrammarKind::mmmnf);
  EXPECT_TRUE(has_rule(m, "S -> 1 '$' 0"));
  EXPECT_TRUE(has_rule(m, "1 '$' 0 -> '$'"));
  EXPECT_TRUE(has_rule(m, "0 '$' 1 -> '$'"));
}

TEST(Encode, RolesFollowTheRuleShapes) {
  const GeneralGrammar s = encode_mm(fixture_g0(), GrammarKind::smmnf);
  std::map<std::string, RuleRole> roles;
  for (std::size_t k = 0; k < s.rules().size(); ++k) roles[rule_texts(s)[k]] = *s.rules()[k].role;
  EXPECT_EQ(roles.at("S -> 1 0 S a"), RuleRole::stage1);
  EXPECT_EQ(roles.at("S -> 1 0 S 0 1 0 1"), RuleRole::stage2_s);
  EXPECT_EQ(roles.at("S -> 1 0 '$' 0 1"), RuleRole::center_intro);
  EXPECT_EQ(roles.at("'$' -> eps"), RuleRole::center_erase);
  EXPECT_EQ(roles.at("0 '$' 0 -> '$'"), RuleRole::eraser);
}

TEST(Encode, RequiresGnf52Input) {
  const GeneralGrammar e = encode_gnf42(fixture_g0());
  EXPECT_THROW(encode_gnf32(e), KindMismatch);
  EXPECT_THROW(encode_gnf42(with_extra_rule(fixture_g0(), "S", "B S a")), KindMismatch);
}

TEST(Encode, PreservesTheBoundedLanguageAtFormLengthTwenty) {
  const SearchCaps caps{20, 4, std::nullopt, std::nullopt};
  for (auto kind : {GrammarKind::gnf42, GrammarKind::gnf32, GrammarKind::mmnf, GrammarKind::smmnf,
                    GrammarKind::mmmnf}) {
    for (const auto& [name, g] : {std::pair{"g0", fixture_g0()}, std::pair{"g1", fixture_g1()}}) {
      const auto rep = assert_bounded_equal(g, encode(g, kind), caps);
      EXPECT_TRUE(rep.equal() && rep.fixed_point_stable)
          << name << " via " << to_string(kind) << ": left only " << rep.left_only.size()
          << ", right only " << rep.right_only.size() << ", stable " << rep.fixed_point_stable;
    }
  }
}

// Encoded forms are longer than the forms they simulate, so each target
// gets the smallest form-length cap at which both fixtures catch up.
TEST(Encode, PreservesTheBoundedLanguageWithHeadroom) {
  for (auto [kind, form] : {std::pair{GrammarKind::gnf42, 44}, std::pair{GrammarKind::gnf32, 36},
                            std::pair{GrammarKind::mmnf, 16}, std::pair{GrammarKind::smmnf, 40},
                            std::pair{GrammarKind::mmmnf, 16}}) {
    const SearchCaps caps{static_cast<std::size_t>(form), 3, std::nullopt, std::nullopt};
    for (const auto& [name, g] : {std::pair{"g0", fixture_g0()}, std::pair{"g1", fixture_g1()}}) {
      const auto rep = assert_bounded_equal(g, encode(g, kind), caps);
      EXPECT_TRUE(rep.equal() && rep.fixed_point_stable)
          << name << " via " << to_string(kind) << ": left only " << rep.left_only.size()
          << ", right only " << rep.right_only.size() << ", stable " << rep.fixed_point_stable;
    }
  }
}

TEST(Encode, ReachableFormsStayInTheirFamily) {
  const SearchCaps caps{18, 18, std::nullopt, std::nullopt};
  for (auto kind : {GrammarKind::gnf52, GrammarKind::gnf42, GrammarKind::gnf32, GrammarKind::mmnf,
                    GrammarKind::mmmnf}) {
    for (const auto& g : {fixture_g0(), fixture_g1()}) {
      const GeneralGrammar e = kind == GrammarKind::gnf52 ? g : encode(g, kind);
      const FamilyValidator v(*family_for(kind), e.symbols());
      for (const Word& w : reachable_forms(e, caps))
        EXPECT_TRUE(v.member(w)) << to_string(kind) << ": " << e.symbols().render(w);
    }
  }
}

TEST(Encode, Gnf42FormsWithSAvoidErasablePairs) {
  const SearchCaps caps{24, 24, std::nullopt, std::nullopt};
  for (const auto& g : {fixture_g0(), fixture_g1()}) {
    const GeneralGrammar e = encode_gnf42(g);
    const auto& t = e.symbols();
    const Word cc = t.word("C C"), ab = t.word("A B");
    std::size_t with_s = 0;
    for (const Word& w : reachable_forms(e, caps)) {
      // Scattered subsequence B ... A.
      const std::string_view codes = w.codes();
      const auto first_b = codes.find(static_cast<char>(t.at("B")));
      EXPECT_FALSE(first_b != std::string_view::npos &&
                   codes.find(static_cast<char>(t.at("A")), first_b) != std::string_view::npos)
          << t.render(w);
      if (!w.contains(t.at("S"))) continue;
      ++with_s;
      EXPECT_FALSE(w.contains(cc) || w.contains(ab)) << t.render(w);
    }
    EXPECT_GT(with_s, 3u);
  }
}

// The strong MM forms shrink through "1 $ 1" and "1 0 $ 0 1", which lie
// outside {10,100}* {S, eps, $} ({01,001} u T)*. The shrinking phase is
// described instead by alpha in {10,100}* {1, 10, eps} and beta in
// {1, 01, eps} ({01,001} u T)*.
TEST(Encode, StrongMmFormsFollowTheShrinkingPhaseShape) {
  const SearchCaps caps{18, 18, std::nullopt, std::nullopt};
  Blocks centers{{"S"}};
  for (const Blocks::value_type& x : Blocks{{}, {"1"}, {"1", "0"}})
    for (const Blocks::value_type& c : Blocks{{}, {"$"}})
      for (const Blocks::value_type& y : Blocks{{}, {"1"}, {"0", "1"}}) {
        auto piece = x;
        piece.insert(piece.end(), c.begin(), c.end());
        piece.insert(piece.end(), y.begin(), y.end());
        if (!piece.empty()) centers.push_back(piece);
      }
  const ReferenceAutomaton phase2({{"1", "0"}, {"1", "0", "0"}}, centers,
                                  {{"0", "1"}, {"0", "0", "1"}}, {"a"});
  for (const auto& g : {fixture_g0(), fixture_g1()}) {
    const GeneralGrammar e = encode_mm(g, GrammarKind::smmnf);
    const auto& t = e.symbols();
    for (const Word& w : reachable_forms(e, caps)) {
      auto s = phase2.initial();
      for (std::size_t k = 0; k < w.size(); ++k) s = phase2.next(s, t.name(w[k]));
      EXPECT_TRUE(phase2.accepts(s)) << t.render(w);
    }
  }
}

}  // namespace
}  // namespace scmlab
