#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "scmlab/grammar.hpp"
#include "scmlab/metrics.hpp"

namespace scmlab {

/// The SCM constructions. Command-line ids are thm1 ... thm9 in this order.
enum class ConstructionId {
  sscm_21532,  ///< from gnf42
  sscm_31522,  ///< from mmmnf
  sscm_31433,  ///< from gnf32
  scm_434726,  ///< from gnf32
  scm_524724,  ///< from gnf32
  scm_634723,  ///< from smmnf
  scm_633,     ///< from smmnf, three nonterminals
  scm_723,     ///< from smmnf, three nonterminals
  sscm_gc,     ///< from a graph-controlled grammar, forbidding-only
};

struct ConstructionInfo {
  ConstructionId id;
  std::string_view cli_id;  ///< "thm1" ...
  GrammarKind input_kind;
  ParameterBound expected;  ///< exact row; '*' where it grows with the input
};

const std::vector<ConstructionInfo>& constructions();
const ConstructionInfo& construction_info(ConstructionId id);
std::optional<ConstructionId> parse_construction(std::string_view cli_id) noexcept;

// Each builder checks the input kind tag and validates the normal form
// (KindMismatch otherwise). Context-free S-rules become matrices labelled by
// the input rule position (p<k>, or rg<k> where they carry a condition);
// the simulating matrices use the labels r1, r2, ...

/// [(A->#),(B->#),-,#], [(C->#),(C->#),-,#], [(#->eps)x2,##,-].
ScmGrammar build_sscm_21532(const GeneralGrammar& g);
/// r_$ = [($->eps)], r1 = [(0->#),(1->#),-,#], r2 = [(#->eps)x2,#$#,-].
ScmGrammar build_sscm_31522(const GeneralGrammar& g);
/// r1 = [(B->#)x3,-,#], r2 = [(A->#),(A->##),-,#], r3 = [(#->eps)x3,###,-].
ScmGrammar build_sscm_31433(const GeneralGrammar& g);
/// Seven binary matrices erasing BBB and AA through '#' markers.
ScmGrammar build_scm_434726(const GeneralGrammar& g);
/// Variant of the above trading forbidding length for permitting length.
ScmGrammar build_scm_524724(const GeneralGrammar& g);

// The three builders below need role-tagged input. A center rule S -> u$v
// is dropped because S -> uSv followed by r1 produces the same center; when
// the grammar has no matching S -> uSv the center rule is kept, rewritten
// to emit the construction's center directly ($$, SS or S1S).

/// Center "$$"; r1..r7 shrink 0$$0 and 1$$1 through $^6 and $^4.
ScmGrammar build_scm_634723(const GeneralGrammar& g);
/// As above with SS as the center; nonterminals {S, 0, 1}.
ScmGrammar build_scm_633(const GeneralGrammar& g);
/// Center "S1S"; rules r1..r8 with r5_0 and r5_1; nonterminals {S, 0, 1}.
ScmGrammar build_scm_723(const GeneralGrammar& g);

/// Runs the builder for `id` and checks that the output's metrics stay
/// within the expected row (Error otherwise). Graph-controlled input is
/// accepted only for sscm_gc; any other mismatch throws KindMismatch.
ScmGrammar construct(ConstructionId id, const Grammar& g);

}  // namespace scmlab
