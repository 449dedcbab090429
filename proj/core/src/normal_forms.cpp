#include "scmlab/normal_forms.hpp"

#include <algorithm>
#include <set>

#include "scmlab/errors.hpp"

namespace scmlab {

namespace {

using Names = std::vector<std::string>;

struct FamilySpec {
  Names nonterminals;
  std::vector<Names> prefix, centers, suffix;
};

FamilySpec family_spec(Family f) {
  switch (f) {
    case Family::L52:
      return {{"S", "A", "B", "C", "D"}, {{"A"}, {"C"}}, {{"S"}, {}}, {{"B"}, {"D"}}};
    case Family::L42:
      return {{"S", "A", "B", "C"},
              {{"C", "A"}, {"C", "A", "A"}},
              {{"S"}, {}, {"C", "C"}},
              {{"B", "C"}, {"B", "B", "C"}}};
    case Family::L32:
      return {{"S", "A", "B"},
              {{"A", "B", "B"}, {"A", "B"}},
              {{"S"}, {}, {"A", "A"}, {"A", "B", "A"}},
              {{"B", "A"}, {"B", "B", "A"}}};
    case Family::LMM:
      return {{"S", "0", "1", "$"}, {{"0"}, {"1"}}, {{"S"}, {}, {"$"}}, {{"0"}, {"1"}}};
    case Family::LsMM:
      return {{"S", "0", "1", "$"},
              {{"1", "0"}, {"1", "0", "0"}},
              {{"S"}, {}, {"$"}},
              {{"0", "1"}, {"0", "0", "1"}}};
  }
  return {};
}

Word to_word(const Names& names, const SymbolTable& t) {
  Word w;
  for (const auto& n : names) w.push_back(t.at(n));
  return w;
}

std::vector<Word> to_words(const std::vector<Names>& v, const SymbolTable& t) {
  std::vector<Word> out;
  for (const auto& n : v) out.push_back(to_word(n, t));
  return out;
}

bool matches_at(const Word& w, std::size_t pos, const Word& block) {
  return pos + block.size() <= w.size() && w.codes().substr(pos, block.size()) == block.codes();
}

/// w[b, e) is a concatenation of blocks.
bool in_star(const Word& w, std::size_t b, std::size_t e, const std::vector<Word>& blocks) {
  std::vector<bool> ok(e - b + 1, false);
  ok[0] = true;
  for (std::size_t i = b; i < e; ++i) {
    if (!ok[i - b]) continue;
    for (const auto& blk : blocks)
      if (i + blk.size() <= e && matches_at(w, i, blk)) ok[i - b + blk.size()] = true;
  }
  return ok[e - b];
}

bool in_plus(const Word& w, std::size_t b, std::size_t e, const std::vector<Word>& blocks) {
  return e > b && in_star(w, b, e, blocks);
}

struct Special {
  Names lhs;
  Names rhs;
  RuleRole role;
};

struct NfSpec {
  Names nonterminals;
  std::vector<Names> u_blocks;
  std::vector<Names> v_blocks;
  bool marker = false;  // S -> u $ v in place of S -> u v
  std::vector<Special> specials;
};

NfSpec nf_spec(GrammarKind kind) {
  const std::vector<Special> mm_specials = {{{"0", "$", "0"}, {"$"}, RuleRole::eraser},
                                            {{"1", "$", "1"}, {"$"}, RuleRole::eraser},
                                            {{"$"}, {}, RuleRole::center_erase}};
  switch (kind) {
    case GrammarKind::gnf52:
      return {{"S", "A", "B", "C", "D"}, {{"A"}, {"C"}}, {{"B"}, {"D"}}, false,
              {{{"A", "B"}, {}, RuleRole::eraser}, {{"C", "D"}, {}, RuleRole::eraser}}};
    case GrammarKind::gnf42:
      return {{"S", "A", "B", "C"}, {{"C", "A"}, {"C", "A", "A"}}, {{"B", "C"}, {"B", "B", "C"}},
              false,
              {{{"A", "B"}, {}, RuleRole::eraser}, {{"C", "C"}, {}, RuleRole::eraser}}};
    case GrammarKind::gnf32:
      return {{"S", "A", "B"}, {{"A", "B", "B"}, {"A", "B"}}, {{"B", "A"}, {"B", "B", "A"}}, false,
              {{{"A", "A"}, {}, RuleRole::eraser}, {{"B", "B", "B"}, {}, RuleRole::eraser}}};
    case GrammarKind::mmnf:
      return {{"S", "0", "1", "$"}, {{"0"}, {"1"}}, {{"0"}, {"1"}}, true, mm_specials};
    case GrammarKind::smmnf:
      return {{"S", "0", "1", "$"}, {{"1", "0"}, {"1", "0", "0"}}, {{"0", "1"}, {"0", "0", "1"}},
              true, mm_specials};
    case GrammarKind::mmmnf:
      return {{"S", "0", "1", "$"}, {{"0"}, {"1"}}, {{"0"}, {"1"}}, true,
              {{{"0", "$", "1"}, {"$"}, RuleRole::eraser},
               {{"1", "$", "0"}, {"$"}, RuleRole::eraser},
               {{"$"}, {}, RuleRole::center_erase}}};
    default:
      throw Error("'" + std::string(to_string(kind)) + "' is not a normal form");
  }
}

bool same_names(Names a, Names b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Shape-derived role of a rule, assuming the nonterminal set already matches.
std::optional<RuleRole> shape_role(const GeneralRule& r, const SymbolTable& t, const NfSpec& shape) {
  const Symbol S = t.at("S");
  for (const auto& sp : shape.specials)
    if (r.lhs == to_word(sp.lhs, t) && r.rhs == to_word(sp.rhs, t)) return sp.role;
  if (r.lhs != Word{S}) return std::nullopt;

  const auto U = to_words(shape.u_blocks, t);
  const auto V = to_words(shape.v_blocks, t);
  const Word& w = r.rhs;
  const std::size_t n = w.size();
  const auto s_at = w.occurrences(S);
  if (s_at.size() > 1) return std::nullopt;
  if (s_at.size() == 1) {
    const std::size_t p = s_at[0];
    if (!in_plus(w, 0, p, U)) return std::nullopt;
    if (n == p + 2 && t.is_terminal(w[p + 1])) return RuleRole::stage1;
    if (in_star(w, p + 1, n, V)) return RuleRole::stage2_s;
    return std::nullopt;
  }
  if (shape.marker) {
    const auto m_at = w.occurrences(t.at("$"));
    if (m_at.size() != 1) return std::nullopt;
    const std::size_t p = m_at[0];
    if (in_plus(w, 0, p, U) && in_star(w, p + 1, n, V)) return RuleRole::center_intro;
    return std::nullopt;
  }
  for (std::size_t k = 1; k <= n; ++k)
    if (in_plus(w, 0, k, U) && in_star(w, k, n, V)) return RuleRole::stage2_final;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::L52: return "L52";
    case Family::L42: return "L42";
    case Family::L32: return "L32";
    case Family::LMM: return "LMM";
    case Family::LsMM: return "LsMM";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) noexcept {
  for (Family f : {Family::L52, Family::L42, Family::L32, Family::LMM, Family::LsMM})
    if (to_string(f) == text) return f;
  return std::nullopt;
}

std::optional<Family> family_for(GrammarKind kind) noexcept {
  switch (kind) {
    case GrammarKind::gnf52: return Family::L52;
    case GrammarKind::gnf42: return Family::L42;
    case GrammarKind::gnf32: return Family::L32;
    case GrammarKind::mmnf:
    case GrammarKind::mmmnf: return Family::LMM;
    case GrammarKind::smmnf: return Family::LsMM;
    default: return std::nullopt;
  }
}

std::vector<std::string> family_nonterminals(Family f) { return family_spec(f).nonterminals; }

FamilyValidator::FamilyValidator(Family f, const SymbolTable& table) : family_(f) {
  const FamilySpec shape = family_spec(f);
  prefix_ = to_words(shape.prefix, table);
  centers_ = to_words(shape.centers, table);
  suffix_ = to_words(shape.suffix, table);
  terminal_.assign(table.size(), false);
  allowed_.assign(table.size(), false);
  for (Symbol s : table.terminals()) terminal_[index_of(s)] = allowed_[index_of(s)] = true;
  for (const auto& n : shape.nonterminals) allowed_[index_of(table.at(n))] = true;
}

bool FamilyValidator::member(const Word& w) const {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    if (index_of(w[i]) >= allowed_.size() || !allowed_[index_of(w[i])])
      throw Error("symbol outside the alphabet of family " + std::string(to_string(family_)));

  // pre[i]: w[0,i) in P*.  suf[i]: w[i,n) in (Q u T)*.
  std::vector<bool> pre(n + 1, false), suf(n + 1, false);
  pre[0] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!pre[i]) continue;
    for (const auto& b : prefix_)
      if (matches_at(w, i, b)) pre[i + b.size()] = true;
  }
  suf[n] = true;
  for (std::size_t i = n; i-- > 0;) {
    if (terminal_[index_of(w[i])] && suf[i + 1]) {
      suf[i] = true;
      continue;
    }
    for (const auto& b : suffix_)
      if (matches_at(w, i, b) && suf[i + b.size()]) suf[i] = true;
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (!pre[i]) continue;
    for (const auto& c : centers_)
      if (matches_at(w, i, c) && suf[i + c.size()]) return true;
  }
  return false;
}

bool family_member(Family f, const SymbolTable& table, const Word& w) {
  return FamilyValidator(f, table).member(w);
}

MorphismSpec gnf42_morphism() {
  return {{{"A", {"C", "A", "A"}}, {"B", {"B", "B", "C"}}, {"C", {"C", "A"}}, {"D", {"B", "C"}}}};
}

MorphismSpec gnf32_morphism() {
  return {{{"A", {"A", "B", "B"}}, {"B", {"B", "A"}}, {"C", {"A", "B"}}, {"D", {"B", "B", "A"}}}};
}

MmPairing mm_pairing(GrammarKind variant) {
  switch (variant) {
    case GrammarKind::mmnf:
      return {{{{"A", {"0"}}, {"C", {"1"}}}}, {{{"B", {"0"}}, {"D", {"1"}}}}};
    case GrammarKind::smmnf:
      return {{{{"A", {"1", "0"}}, {"C", {"1", "0", "0"}}}},
              {{{"B", {"0", "1"}}, {"D", {"0", "0", "1"}}}}};
    case GrammarKind::mmmnf:
      return {{{{"A", {"0"}}, {"C", {"1"}}}}, {{{"B", {"1"}}, {"D", {"0"}}}}};
    default:
      throw Error("'" + std::string(to_string(variant)) + "' is not an MM variant");
  }
}

std::string ValidationReport::summary() const {
  if (ok) return "ok";
  std::string out;
  for (std::size_t i = 0; i < problems.size(); ++i) out += (i ? "; " : "") + problems[i];
  return out;
}

std::optional<RuleRole> classify_rule(const GeneralGrammar& g, std::size_t rule, GrammarKind kind) {
  const NfSpec shape = nf_spec(kind);
  if (!same_names(g.symbols().nonterminal_names(), shape.nonterminals)) return std::nullopt;
  return shape_role(g.rules().at(rule), g.symbols(), shape);
}

ValidationReport validate_normal_form(const GeneralGrammar& g, GrammarKind kind) {
  ValidationReport rep;
  auto problem = [&rep](std::string msg) {
    rep.ok = false;
    rep.problems.push_back(std::move(msg));
  };
  const NfSpec shape = nf_spec(kind);
  const SymbolTable& t = g.symbols();
  const std::string name(to_string(kind));
  if (!same_names(t.nonterminal_names(), shape.nonterminals)) {
    std::string want;
    for (const auto& n : shape.nonterminals) want += (want.empty() ? "" : " ") + quote_symbol(n);
    problem("nonterminals must be exactly {" + want + "} for " + name);
    return rep;
  }
  if (t.name(g.start()) != "S") problem("start symbol must be S");

  std::vector<std::size_t> special_count(shape.specials.size(), 0);
  for (std::size_t i = 0; i < g.rules().size(); ++i) {
    const GeneralRule& r = g.rules()[i];
    const std::string label = "p" + std::to_string(i + 1) + " (" + t.render(r.lhs) + " -> " +
                              t.render(r.rhs) + ")";
    const auto role = shape_role(r, t, shape);
    bool bad = false;
    if (!role) {
      problem("rule " + label + " does not have a " + name + " shape");
      bad = true;
    } else if (r.role && *r.role != *role) {
      problem("rule " + label + " is tagged " + std::string(to_string(*r.role)) +
              " but has shape " + std::string(to_string(*role)));
      bad = true;
    }
    for (std::size_t k = 0; k < shape.specials.size(); ++k) {
      const auto& sp = shape.specials[k];
      if (r.lhs == to_word(sp.lhs, t) && r.rhs == to_word(sp.rhs, t) && ++special_count[k] > 1) {
        problem("rule " + label + " repeats a special rule");
        bad = true;
      }
    }
    if (bad) rep.offending_rules.push_back(i);
  }
  for (std::size_t k = 0; k < shape.specials.size(); ++k) {
    if (special_count[k] == 0) {
      const auto& sp = shape.specials[k];
      problem("missing rule " + t.render(to_word(sp.lhs, t)) + " -> " +
              t.render(to_word(sp.rhs, t)));
    }
  }
  return rep;
}

namespace {

void require_gnf52(const GeneralGrammar& g) {
  if (g.kind() != GrammarKind::gnf52)
    throw KindMismatch("expected a gnf52 grammar, got " + std::string(to_string(g.kind())));
  const auto rep = validate_normal_form(g, GrammarKind::gnf52);
  if (!rep) throw KindMismatch("input is not a valid gnf52 grammar: " + rep.summary());
}

Word apply_map(const Word& w, std::size_t b, std::size_t e, const SymbolTable& in,
               const SymbolTable& out, const MorphismSpec& map) {
  Word r;
  for (std::size_t i = b; i < e; ++i) {
    const std::string& n = in.name(w[i]);
    auto it = map.image.find(n);
    if (it == map.image.end()) {
      r.push_back(out.at(n));
    } else {
      for (const auto& m : it->second) r.push_back(out.at(m));
    }
  }
  return r;
}

/// Shared encoder: cf rules mapped (u-part by `left`, rest by `right`,
/// S -> uv gets `center` between the parts), then the target's specials.
GeneralGrammar encode_with(const GeneralGrammar& g, GrammarKind target, const MorphismSpec& left,
                           const MorphismSpec& right, const std::optional<std::string>& center) {
  require_gnf52(g);
  const NfSpec shape = nf_spec(target);
  const SymbolTable& in = g.symbols();
  for (const auto& tname : in.terminal_names())
    if (std::find(shape.nonterminals.begin(), shape.nonterminals.end(), tname) !=
        shape.nonterminals.end())
      throw KindMismatch("terminal '" + tname + "' clashes with a " +
                         std::string(to_string(target)) + " nonterminal");
  SymbolTable out(in.terminal_names(), shape.nonterminals);
  const Symbol S_in = in.at("S");
  const auto is_right = [&](Symbol s) {
    const auto& n = in.name(s);
    return n == "B" || n == "D";
  };

  std::vector<GeneralRule> rules;
  for (std::size_t i = 0; i < g.rules().size(); ++i) {
    const GeneralRule& r = g.rules()[i];
    const auto role = classify_rule(g, i, GrammarKind::gnf52);
    if (role == RuleRole::eraser) continue;
    const Word& w = r.rhs;
    // u ends at S, or at the first right-side letter for S -> uv.
    std::size_t split = 0;
    while (split < w.size() && w[split] != S_in && !is_right(w[split])) ++split;
    GeneralRule nr;
    nr.lhs = Word{out.at("S")};
    nr.rhs = apply_map(w, 0, split, in, out, left);
    if (*role == RuleRole::stage2_final && center) {
      nr.rhs.push_back(out.at(*center));
      nr.role = RuleRole::center_intro;
    } else {
      nr.role = role;
    }
    nr.rhs += apply_map(w, split, w.size(), in, out, right);
    rules.push_back(std::move(nr));
  }
  for (const auto& sp : shape.specials)
    rules.push_back({to_word(sp.lhs, out), to_word(sp.rhs, out), sp.role});

  const Symbol start = out.at("S");
  GeneralGrammar result(target, std::move(out), start, std::move(rules));
  const auto rep = validate_normal_form(result, target);
  if (!rep) throw Error("internal: encoder produced an invalid grammar: " + rep.summary());
  return result;
}

}  // namespace

GeneralGrammar encode_gnf42(const GeneralGrammar& g) {
  const auto m = gnf42_morphism();
  return encode_with(g, GrammarKind::gnf42, m, m, std::nullopt);
}

GeneralGrammar encode_gnf32(const GeneralGrammar& g) {
  const auto m = gnf32_morphism();
  return encode_with(g, GrammarKind::gnf32, m, m, std::nullopt);
}

GeneralGrammar encode_mm(const GeneralGrammar& g, GrammarKind variant) {
  const auto p = mm_pairing(variant);
  return encode_with(g, variant, p.left, p.right, std::string("$"));
}

GeneralGrammar encode(const GeneralGrammar& g, GrammarKind target) {
  switch (target) {
    case GrammarKind::gnf42: return encode_gnf42(g);
    case GrammarKind::gnf32: return encode_gnf32(g);
    case GrammarKind::mmnf:
    case GrammarKind::smmnf:
    case GrammarKind::mmmnf: return encode_mm(g, target);
    default:
      throw Error("cannot encode into '" + std::string(to_string(target)) + "'");
  }
}

}  // namespace scmlab
