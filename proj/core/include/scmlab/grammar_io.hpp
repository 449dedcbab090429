#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "scmlab/grammar.hpp"

namespace scmlab {

/// Parses the line-oriented grammar format:
///
///   kind: scm|type0|gnf52|gnf42|gnf32|mmnf|smmnf|mmmnf|gc
///   terminals: a b
///   nonterminals: S A '#'
///   start: S
///   matrix r1 { rules: A -> '#', B -> '#' ; permit: - ; forbid: '#' }
///   rule: A B -> eps                     (type0 and normal-form kinds)
///   role p3: eraser                      (rule labels are p1, p2, ...)
///   initial: 1 / final: 3 / node 1: A -> a A ; green: 1 2 ; red: -   (gc)
///   node 3: final
///
/// Lines whose first non-blank character is '#' are comments. Symbols that
/// are not [A-Za-z0-9_]+ must be quoted. In a matrix the permit and forbid
/// clauses may be omitted, meaning absent.
///
/// Throws ParseError (with line number) on syntax errors, undeclared
/// symbols, empty condition words and terminal rule heads; GrammarError when
/// the assembled grammar is structurally invalid.
Grammar parse_grammar(std::string_view text);

/// Reads and parses a file. Throws IoError when it cannot be read.
Grammar parse_grammar_file(const std::filesystem::path& path);

/// Canonical text: header with sorted symbol lists, then matrices, rules or
/// nodes in their stored order. parse_grammar(serialize_grammar(g)) == g.
std::string serialize_grammar(const Grammar& g);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace scmlab
