#include "scmlab/grammar_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scmlab/errors.hpp"
#include "text_util.hpp"

namespace scmlab {

namespace {

enum class Tok { name, arrow, lbrace, rbrace, semi, comma, colon, dash, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  bool quoted = false;
};

bool bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex_line(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '\'') {
      const std::size_t close = line.find('\'', i + 1);
      if (close == std::string_view::npos) throw ParseError(lineno, "unterminated quote");
      if (close == i + 1) throw ParseError(lineno, "empty quoted symbol");
      out.push_back({Tok::name, std::string(line.substr(i + 1, close - i - 1)), true});
      i = close + 1;
      continue;
    }
    if (bare_char(c)) {
      std::size_t j = i;
      // '-' joins a bare token only between name characters ("stage2-S").
      while (j < line.size() &&
             (bare_char(line[j]) ||
              (line[j] == '-' && j + 1 < line.size() && bare_char(line[j + 1]) && j > i)))
        ++j;
      out.push_back({Tok::name, std::string(line.substr(i, j - i)), false});
      i = j;
      continue;
    }
    switch (c) {
      case '-':
        if (i + 1 < line.size() && line[i + 1] == '>') {
          out.push_back({Tok::arrow, "->", false});
          i += 2;
        } else {
          out.push_back({Tok::dash, "-", false});
          ++i;
        }
        continue;
      case '{': out.push_back({Tok::lbrace, "{", false}); break;
      case '}': out.push_back({Tok::rbrace, "}", false}); break;
      case ';': out.push_back({Tok::semi, ";", false}); break;
      case ',': out.push_back({Tok::comma, ",", false}); break;
      case ':': out.push_back({Tok::colon, ":", false}); break;
      default:
        throw ParseError(lineno, std::string("unexpected character '") + c +
                                     "' (quote non-alphanumeric symbols)");
    }
    ++i;
  }
  out.push_back({Tok::end, "", false});
  return out;
}

std::string describe(const Token& t) {
  return t.kind == Tok::end ? "end of line" : "'" + t.text + "'";
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t lineno)
      : toks_(std::move(tokens)), line_(lineno) {}

  std::size_t line() const noexcept { return line_; }
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::name && !peek().quoted && peek().text == kw;
  }

  Token expect(Tok k, std::string_view what) {
    if (!at(k)) fail("expected " + std::string(what) + ", found " + describe(peek()));
    return toks_[pos_++];
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "', found " + describe(peek()));
    ++pos_;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  void expect_end() {
    if (!at(Tok::end)) fail("unexpected " + describe(peek()));
  }

  /// Name tokens up to the next punctuation. Unquoted "eps" alone is lambda.
  std::vector<Token> names() {
    std::vector<Token> out;
    while (at(Tok::name)) out.push_back(toks_[pos_++]);
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

struct Header {
  std::optional<GrammarKind> kind;
  std::optional<std::vector<std::string>> terminals;
  std::optional<std::vector<std::string>> nonterminals;
  std::optional<std::string> start;
  std::optional<std::size_t> initial;
  std::optional<std::size_t> final_node;
  std::size_t start_line = 0;
};

struct Statement {
  LineParser parser;
  std::string keyword;
};

std::size_t parse_index(LineParser& p) {
  const Token t = p.expect(Tok::name, "a node number");
  auto v = detail::parse_size(t.text);
  if (t.quoted || !v) p.fail("expected a node number, found '" + t.text + "'");
  return *v;
}

class Assembler {
 public:
  explicit Assembler(const SymbolTable& table) : table_(table) {}

  Word word(LineParser& p, const std::vector<Token>& toks, bool allow_eps) const {
    if (toks.size() == 1 && !toks[0].quoted && toks[0].text == "eps") {
      if (!allow_eps) p.fail("empty word not allowed here");
      return {};
    }
    if (toks.empty()) p.fail("expected a word, found " + describe(p.peek()));
    Word w;
    for (const auto& t : toks) {
      if (!t.quoted && t.text == "eps") p.fail("'eps' must stand alone");
      auto s = table_.find(t.text);
      if (!s) p.fail("undeclared symbol '" + t.text + "'");
      w.push_back(*s);
    }
    return w;
  }

  CfRule cf_rule(LineParser& p) const {
    const auto lhs_toks = p.names();
    if (lhs_toks.size() != 1) p.fail("rule head must be a single nonterminal");
    const Word lhs = word(p, lhs_toks, false);
    if (table_.is_terminal(lhs[0]))
      p.fail("terminal '" + lhs_toks[0].text + "' used as rule lhs");
    p.expect(Tok::arrow, "'->'");
    return CfRule{lhs[0], word(p, p.names(), true)};
  }

  std::optional<Word> condition(LineParser& p) const {
    if (p.accept(Tok::dash)) return std::nullopt;
    const auto toks = p.names();
    if (toks.empty() || (toks.size() == 1 && !toks[0].quoted && toks[0].text == "eps"))
      p.fail("empty condition word (use '-' for an absent condition)");
    return word(p, toks, false);
  }

  Matrix matrix(LineParser& p) const {
    Matrix m;
    const Token label = p.expect(Tok::name, "a matrix label");
    m.label = label.text;
    p.expect(Tok::lbrace, "'{'");
    p.expect_keyword("rules");
    p.expect(Tok::colon, "':'");
    m.rules.push_back(cf_rule(p));
    while (p.accept(Tok::comma)) m.rules.push_back(cf_rule(p));
    bool seen_permit = false, seen_forbid = false;
    while (p.accept(Tok::semi)) {
      if (p.at_keyword("permit") && !seen_permit) {
        p.expect_keyword("permit");
        p.expect(Tok::colon, "':'");
        m.permit = condition(p);
        seen_permit = true;
      } else if (p.at_keyword("forbid") && !seen_forbid) {
        p.expect_keyword("forbid");
        p.expect(Tok::colon, "':'");
        m.forbid = condition(p);
        seen_forbid = true;
      } else {
        p.fail("expected 'permit' or 'forbid', found " + describe(p.peek()));
      }
    }
    p.expect(Tok::rbrace, "'}'");
    p.expect_end();
    return m;
  }

  GeneralRule general_rule(LineParser& p) const {
    p.expect(Tok::colon, "':'");
    GeneralRule r;
    r.lhs = word(p, p.names(), false);
    if (table_.is_terminal_word(r.lhs)) p.fail("terminal word used as rule lhs");
    p.expect(Tok::arrow, "'->'");
    r.rhs = word(p, p.names(), true);
    p.expect_end();
    return r;
  }

  std::vector<std::size_t> index_list(LineParser& p) const {
    std::vector<std::size_t> out;
    if (p.accept(Tok::dash)) return out;
    out.push_back(parse_index(p));
    while (true) {
      p.accept(Tok::comma);
      if (!p.at(Tok::name)) break;
      out.push_back(parse_index(p));
    }
    return out;
  }

  GcNode node(LineParser& p) const {
    GcNode n;
    n.index = parse_index(p);
    p.expect(Tok::colon, "':'");
    if (p.at_keyword("final")) {
      p.expect_keyword("final");
      p.expect_end();
      return n;
    }
    n.rule = cf_rule(p);
    bool seen_green = false, seen_red = false;
    while (p.accept(Tok::semi)) {
      if (p.at_keyword("green") && !seen_green) {
        p.expect_keyword("green");
        p.expect(Tok::colon, "':'");
        n.green = index_list(p);
        seen_green = true;
      } else if (p.at_keyword("red") && !seen_red) {
        p.expect_keyword("red");
        p.expect(Tok::colon, "':'");
        n.red = index_list(p);
        seen_red = true;
      } else {
        p.fail("expected 'green' or 'red', found " + describe(p.peek()));
      }
    }
    p.expect_end();
    return n;
  }

 private:
  const SymbolTable& table_;
};

std::vector<std::string> symbol_list(LineParser& p) {
  std::vector<std::string> out;
  for (const auto& t : p.names()) {
    if (!t.quoted && t.text == "eps") p.fail("'eps' is reserved");
    out.push_back(t.text);
  }
  p.expect_end();
  return out;
}

template <class T>
void set_once(std::optional<T>& slot, T value, const LineParser& p, std::string_view key) {
  if (slot) p.fail("duplicate '" + std::string(key) + ":' line");
  slot = std::move(value);
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  Header h;
  std::vector<Statement> body;
  std::size_t lineno = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++lineno;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    LineParser p(lex_line(line, lineno), lineno);
    const Token head = p.expect(Tok::name, "a statement keyword");
    if (head.quoted) p.fail("expected a statement keyword");
    const std::string& kw = head.text;
    if (kw == "kind") {
      p.expect(Tok::colon, "':'");
      const Token k = p.expect(Tok::name, "a grammar kind");
      auto kind = parse_grammar_kind(k.text);
      if (!kind) p.fail("unknown grammar kind '" + k.text + "'");
      p.expect_end();
      set_once(h.kind, *kind, p, kw);
    } else if (kw == "terminals" || kw == "nonterminals") {
      p.expect(Tok::colon, "':'");
      set_once(kw == "terminals" ? h.terminals : h.nonterminals, symbol_list(p), p, kw);
    } else if (kw == "start") {
      p.expect(Tok::colon, "':'");
      const Token s = p.expect(Tok::name, "a start symbol");
      p.expect_end();
      set_once(h.start, s.text, p, kw);
      h.start_line = lineno;
    } else if (kw == "initial" || kw == "final") {
      p.expect(Tok::colon, "':'");
      const std::size_t v = parse_index(p);
      p.expect_end();
      set_once(kw == "initial" ? h.initial : h.final_node, v, p, kw);
    } else if (kw == "matrix" || kw == "rule" || kw == "role" || kw == "node") {
      body.push_back({std::move(p), kw});
    } else {
      p.fail("unknown statement '" + kw + "'");
    }
  }

  if (!h.kind) throw ParseError(lineno, "missing 'kind:' line");
  if (!h.nonterminals) throw ParseError(lineno, "missing 'nonterminals:' line");
  if (!h.start) throw ParseError(lineno, "missing 'start:' line");
  const GrammarKind kind = *h.kind;

  SymbolTable table;
  try {
    table = SymbolTable(h.terminals.value_or(std::vector<std::string>{}), *h.nonterminals);
  } catch (const GrammarError& e) {
    throw ParseError(1, e.what());
  }
  const auto start = table.find(*h.start);
  if (!start) throw ParseError(h.start_line, "undeclared start symbol '" + *h.start + "'");
  if (!table.is_nonterminal(*start))
    throw ParseError(h.start_line, "start symbol must be a nonterminal");

  Assembler as(table);
  const bool general = kind == GrammarKind::type0 || is_normal_form(kind);
  if (kind != GrammarKind::gc && (h.initial || h.final_node))
    throw ParseError(lineno, "'initial:'/'final:' only apply to kind gc");

  std::vector<Matrix> matrices;
  std::set<std::string> labels;
  std::vector<GeneralRule> rules;
  std::vector<std::pair<Statement*, Token>> roles;
  std::vector<GcNode> nodes;
  for (auto& st : body) {
    LineParser& p = st.parser;
    if (st.keyword == "matrix") {
      if (kind != GrammarKind::scm) p.fail("'matrix' requires kind scm");
      Matrix m = as.matrix(p);
      if (!labels.insert(m.label).second) p.fail("duplicate matrix label '" + m.label + "'");
      matrices.push_back(std::move(m));
    } else if (st.keyword == "rule") {
      if (!general) p.fail("'rule:' requires kind type0 or a normal form");
      rules.push_back(as.general_rule(p));
    } else if (st.keyword == "role") {
      if (!general) p.fail("'role' requires kind type0 or a normal form");
      roles.emplace_back(&st, p.expect(Tok::name, "a rule label"));
    } else {
      if (kind != GrammarKind::gc) p.fail("'node' requires kind gc");
      nodes.push_back(as.node(p));
    }
  }

  std::set<std::size_t> tagged;
  for (auto& [st, label] : roles) {
    LineParser& p = st->parser;
    std::size_t idx = 0;
    if (label.text.size() < 2 || label.text[0] != 'p' ||
        !(idx = detail::parse_size(std::string_view(label.text).substr(1)).value_or(0)) ||
        idx > rules.size())
      p.fail("unknown rule label '" + label.text + "'");
    p.expect(Tok::colon, "':'");
    const Token r = p.expect(Tok::name, "a rule role");
    p.expect_end();
    auto role = parse_rule_role(r.text);
    if (!role) p.fail("unknown rule role '" + r.text + "'");
    if (!tagged.insert(idx).second) p.fail("rule '" + label.text + "' tagged twice");
    rules[idx - 1].role = *role;
  }

  switch (kind) {
    case GrammarKind::scm:
      return ScmGrammar(std::move(table), *start, std::move(matrices));
    case GrammarKind::gc: {
      if (!h.initial || !h.final_node) throw ParseError(lineno, "kind gc needs 'initial:' and 'final:'");
      std::sort(nodes.begin(), nodes.end(),
                [](const GcNode& a, const GcNode& b) { return a.index < b.index; });
      return GcGrammar(std::move(table), *start, std::move(nodes), *h.initial, *h.final_node);
    }
    default:
      return GeneralGrammar(kind, std::move(table), *start, std::move(rules));
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Grammar parse_grammar_file(const std::filesystem::path& path) {
  return parse_grammar(read_text_file(path));
}

namespace {

std::string symbol_line(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += " " + quote_symbol(n);
  return out;
}

void write_header(std::ostream& os, GrammarKind kind, const SymbolTable& t, Symbol start) {
  os << "kind: " << to_string(kind) << '\n';
  os << "terminals:" << symbol_line(t.terminal_names()) << '\n';
  os << "nonterminals:" << symbol_line(t.nonterminal_names()) << '\n';
  os << "start: " << quote_symbol(t.name(start)) << '\n';
}

std::string cf_text(const SymbolTable& t, const CfRule& r) {
  return quote_symbol(t.name(r.lhs)) + " -> " + t.render(r.rhs);
}

std::string list_text(const std::vector<std::size_t>& v) {
  if (v.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

std::string serialize_grammar(const Grammar& g) {
  std::ostringstream os;
  write_header(os, kind_of(g), symbols_of(g), start_of(g));
  if (const auto* scm = std::get_if<ScmGrammar>(&g)) {
    const auto& t = scm->symbols();
    for (const auto& m : scm->matrices()) {
      os << "matrix " << quote_symbol(m.label) << " { rules: ";
      for (std::size_t i = 0; i < m.rules.size(); ++i)
        os << (i ? ", " : "") << cf_text(t, m.rules[i]);
      os << " ; permit: " << (m.permit ? t.render(*m.permit) : "-");
      os << " ; forbid: " << (m.forbid ? t.render(*m.forbid) : "-") << " }\n";
    }
  } else if (const auto* gen = std::get_if<GeneralGrammar>(&g)) {
    const auto& t = gen->symbols();
    for (const auto& r : gen->rules())
      os << "rule: " << t.render(r.lhs) << " -> " << t.render(r.rhs) << '\n';
    for (std::size_t i = 0; i < gen->rules().size(); ++i)
      if (const auto& role = gen->rules()[i].role)
        os << "role p" << i + 1 << ": " << to_string(*role) << '\n';
  } else {
    const auto& gc = std::get<GcGrammar>(g);
    const auto& t = gc.symbols();
    os << "initial: " << gc.initial() << '\n';
    os << "final: " << gc.final_node() << '\n';
    for (const auto& n : gc.nodes()) {
      os << "node " << n.index << ": ";
      if (!n.rule) {
        os << "final\n";
        continue;
      }
      os << cf_text(t, *n.rule) << " ; green: " << list_text(n.green)
         << " ; red: " << list_text(n.red) << '\n';
    }
  }
  return os.str();
}

}  // namespace scmlab
