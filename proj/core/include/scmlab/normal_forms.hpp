#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scmlab/grammar.hpp"

namespace scmlab {

/// Regular sets of sentential forms: P* {centers} (Q u T)* with the block
/// sets below, T being the grammar's terminals.
///
///   L52   P = {A, C}         centers S, eps              Q = {B, D}
///   L42   P = {CA, CAA}      centers S, eps, CC          Q = {BC, BBC}
///   L32   P = {ABB, AB}      centers S, eps, AA, ABA     Q = {BA, BBA}
///   LMM   P = {0, 1}         centers S, eps, $           Q = {0, 1}
///   LsMM  P = {10, 100}      centers S, eps, $           Q = {01, 001}
enum class Family { L52, L42, L32, LMM, LsMM };

std::string_view to_string(Family f) noexcept;
std::optional<Family> parse_family(std::string_view text) noexcept;
/// Family whose forms a grammar of this kind derives (mmnf and mmmnf share LMM).
std::optional<Family> family_for(GrammarKind kind) noexcept;
/// The nonterminal names a family is defined over.
std::vector<std::string> family_nonterminals(Family f);

class FamilyValidator {
 public:
  /// Throws GrammarError when `table` lacks one of the family's nonterminals.
  FamilyValidator(Family f, const SymbolTable& table);

  Family family() const noexcept { return family_; }
  /// Exact membership. Throws Error for symbols that are neither terminals
  /// nor family nonterminals.
  bool member(const Word& w) const;

 private:
  Family family_;
  std::vector<Word> prefix_;
  std::vector<Word> centers_;
  std::vector<Word> suffix_;
  std::vector<bool> terminal_;
  std::vector<bool> allowed_;
};

bool family_member(Family f, const SymbolTable& table, const Word& w);

/// Nonterminal morphism; symbols not in the map (S, terminals) are fixed.
struct MorphismSpec {
  std::map<std::string, std::vector<std::string>> image;
};

/// A -> CAA, B -> BBC, C -> CA, D -> BC
MorphismSpec gnf42_morphism();
/// A -> ABB, B -> BA, C -> AB, D -> BBA
MorphismSpec gnf32_morphism();

/// Left map for the u-parts and right map for the v-parts of an MM variant.
struct MmPairing {
  MorphismSpec left;
  MorphismSpec right;
};

/// mmnf:  A -> 0,  C -> 1   | B -> 0,   D -> 1
/// smmnf: A -> 10, C -> 100 | B -> 01,  D -> 001
/// mmmnf: A -> 0,  C -> 1   | B -> 1,   D -> 0
/// Each (5,2) eraser pair maps onto a shrinking rule around '$'.
MmPairing mm_pairing(GrammarKind variant);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
  std::vector<std::size_t> offending_rules;  ///< 0-based rule positions

  explicit operator bool() const noexcept { return ok; }
  std::string summary() const;
};

/// Checks the nonterminal set, the start symbol, the shape of every
/// context-free S-rule, that the kind's special rules occur exactly once,
/// and that any role tags agree with the shapes.
ValidationReport validate_normal_form(const GeneralGrammar& g, GrammarKind kind);

/// Role implied by a rule's shape under `kind`, if it has a valid one.
std::optional<RuleRole> classify_rule(const GeneralGrammar& g, std::size_t rule, GrammarKind kind);

/// The following encoders take a validated gnf52 grammar (KindMismatch
/// otherwise), map the right-hand sides of its context-free rules, replace
/// the erasers by the target's special rules and tag every rule's role.
GeneralGrammar encode_gnf42(const GeneralGrammar& g);
GeneralGrammar encode_gnf32(const GeneralGrammar& g);
/// S -> uSa and S -> uSv keep their shape, S -> uv becomes S -> u'$v'.
GeneralGrammar encode_mm(const GeneralGrammar& g, GrammarKind variant);
/// Dispatches on `target` (gnf42, gnf32, mmnf, smmnf, mmmnf).
GeneralGrammar encode(const GeneralGrammar& g, GrammarKind target);

}  // namespace scmlab
