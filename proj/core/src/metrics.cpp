#include "scmlab/metrics.hpp"

#include <algorithm>
#include <array>

namespace scmlab {

ParameterTuple metrics(const ScmGrammar& g) {
  ParameterTuple t;
  t.n = g.symbols().nonterminals().size();
  for (const auto& m : g.matrices()) {
    if (m.permit) t.i = std::max(t.i, m.permit->size());
    if (m.forbid) t.j = std::max(t.j, m.forbid->size());
    if (m.conditional()) ++t.m;
    if (!m.simple()) ++t.s;
    t.l = std::max(t.l, m.length());
  }
  return t;
}

std::string format_metrics(const ParameterTuple& t) {
  return "i=" + std::to_string(t.i) + " j=" + std::to_string(t.j) + " n=" + std::to_string(t.n) +
         " m=" + std::to_string(t.m) + " l=" + std::to_string(t.l) + " s=" + std::to_string(t.s);
}

namespace {

std::string component(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : "*";
}

std::string layout(const std::array<std::string, 6>& c) {
  return "(" + c[0] + "," + c[1] + ";" + c[2] + ";" + c[3] + "," + c[4] + "," + c[5] + ")";
}

}  // namespace

std::string format_tuple(const ParameterTuple& t) {
  return layout({std::to_string(t.i), std::to_string(t.j), std::to_string(t.n), std::to_string(t.m),
                 std::to_string(t.l), std::to_string(t.s)});
}

bool ParameterBound::admits(const ParameterTuple& t) const noexcept {
  auto le = [](std::size_t v, const std::optional<std::size_t>& b) { return !b || v <= *b; };
  return le(t.i, i) && le(t.j, j) && le(t.n, n) && le(t.m, m) && le(t.l, l) && le(t.s, s);
}

bool ParameterBound::matches(const ParameterTuple& t) const noexcept {
  auto eq = [](std::size_t v, const std::optional<std::size_t>& b) { return !b || v == *b; };
  return eq(t.i, i) && eq(t.j, j) && eq(t.n, n) && eq(t.m, m) && eq(t.l, l) && eq(t.s, s);
}

std::string ParameterBound::format() const {
  return layout({component(i), component(j), component(n), component(m), component(l), component(s)});
}

}  // namespace scmlab
