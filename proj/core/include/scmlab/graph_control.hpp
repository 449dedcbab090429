#pragma once

#include <cstddef>
#include <vector>

#include "scmlab/grammar.hpp"
#include "scmlab/rewrite.hpp"

namespace scmlab {

/// A position in a graph-controlled derivation: current node and form.
struct GcConfiguration {
  std::size_t node = 0;
  Word form;

  friend bool operator==(const GcConfiguration&, const GcConfiguration&) = default;
  friend auto operator<=>(const GcConfiguration&, const GcConfiguration&) = default;
};

/// Successors of a non-final configuration, sorted. If the node's lhs occurs
/// in the form: every (rewritten occurrence, green target) pair. Otherwise:
/// the unchanged form paired with every red target. Throws Error at the
/// final node, which has no rule.
std::vector<GcConfiguration> gc_step(const GcGrammar& g, const GcConfiguration& c);

/// Terminal forms reached at the final node, breadth-first from
/// (initial, start) under `caps`.
BoundedLanguage gc_enumerate(const GcGrammar& g, const SearchCaps& caps,
                             const SearchOptions& opts = {});

/// g(l) = v * l, the number of extra C's the failure path adds at node l.
constexpr std::size_t failure_offset(std::size_t v, std::size_t l) noexcept { return v * l; }

/// Forbidding-only SCM grammar over {A, B, C} simulating `g`. The control
/// state k is encoded as C^(k+1) in front of the C-free simulated form.
///
/// Matrices, in output order:
///   m_init                  [(C -> C C A)] forbid CC
///   m_sigma_<l>_<s>         l x (C -> eps), (C -> C^(s+1)), (Y_l -> alpha_l); forbid C^(l+2)
///   m_phi1_<l>              (C -> eps), (C -> C^(g(l)+2)); forbid Y_l
///   m_phi2_<l>_<f>          (l+g(l)) x (C -> eps), (C -> C^(f+1)); forbid C^(l+g(l)+2)
///   m_final                 (v+1) x (C -> eps); forbid C^(v+2)
///
/// m_phi1 deletes one C and expands another to C^(g(l)+2): a net gain of
/// g(l), taking C^(k+1) to C^(k+1+g(l)), which is the count m_phi2 for node
/// l accepts exactly when k = l.
/// Throws GrammarError if the input's alphabet already uses C.
ScmGrammar gc_to_sscm(const GcGrammar& g);

}  // namespace scmlab
