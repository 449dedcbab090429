#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "scmlab/grammar.hpp"

namespace scmlab {

/// Descriptional complexity (i, j; n; m, l, s) of an SCM grammar.
struct ParameterTuple {
  std::size_t i = 0;  ///< longest permitting word
  std::size_t j = 0;  ///< longest forbidden word
  std::size_t n = 0;  ///< nonterminals
  std::size_t m = 0;  ///< conditional matrices
  std::size_t l = 0;  ///< longest matrix
  std::size_t s = 0;  ///< non-simple matrices

  friend bool operator==(const ParameterTuple&, const ParameterTuple&) = default;
};

ParameterTuple metrics(const ScmGrammar& g);

/// "i=4 j=3 n=4 m=7 l=2 s=6"
std::string format_metrics(const ParameterTuple& t);
/// "(4,3;4;7,2,6)"
std::string format_tuple(const ParameterTuple& t);

/// A parameter row where a component may be unbounded ('*').
struct ParameterBound {
  std::optional<std::size_t> i, j, n, m, l, s;

  /// Component-wise t <= bound, '*' admitting anything.
  bool admits(const ParameterTuple& t) const noexcept;
  /// Component-wise equality on the bounded components.
  bool matches(const ParameterTuple& t) const noexcept;
  /// "(0,*;3;*,*,0)"
  std::string format() const;
};

}  // namespace scmlab
