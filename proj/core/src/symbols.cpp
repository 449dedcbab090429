#include "scmlab/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "scmlab/errors.hpp"
#include "text_util.hpp"

namespace scmlab {

Word::Word(std::initializer_list<Symbol> symbols) {
  codes_.reserve(symbols.size());
  for (Symbol s : symbols) push_back(s);
}

Word::Word(std::span<const Symbol> symbols) {
  codes_.reserve(symbols.size());
  for (Symbol s : symbols) push_back(s);
}

std::size_t Word::count(Symbol s) const noexcept {
  return static_cast<std::size_t>(std::count(codes_.begin(), codes_.end(), static_cast<char>(s)));
}

std::vector<std::size_t> Word::occurrences(Symbol s) const {
  std::vector<std::size_t> out;
  const char c = static_cast<char>(s);
  for (std::size_t i = 0; i < codes_.size(); ++i)
    if (codes_[i] == c) out.push_back(i);
  return out;
}

Word Word::replace_at(std::size_t pos, const Word& replacement) const {
  return replace_range(pos, 1, replacement);
}

Word Word::replace_range(std::size_t pos, std::size_t len, const Word& replacement) const {
  std::string out;
  out.reserve(codes_.size() - len + replacement.size());
  out.append(codes_, 0, pos);
  out.append(replacement.codes_);
  out.append(codes_, pos + len, std::string::npos);
  return from_codes(std::move(out));
}

bool is_valid_symbol_name(std::string_view name) noexcept {
  if (name.empty() || name == "eps") return false;
  for (unsigned char c : name) {
    if (!std::isprint(c) || std::isspace(c) || c == '\'' || c == '"') return false;
  }
  return true;
}

std::string quote_symbol(std::string_view name) {
  const bool bare = std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
  if (bare) return std::string(name);
  return "'" + std::string(name) + "'";
}

SymbolTable::SymbolTable(std::vector<std::string> terminals,
                         std::vector<std::string> nonterminals) {
  std::sort(terminals.begin(), terminals.end());
  std::sort(nonterminals.begin(), nonterminals.end());
  names_.reserve(terminals.size() + nonterminals.size());
  for (auto& t : terminals) names_.push_back(std::move(t));
  terminal_count_ = names_.size();
  for (auto& n : nonterminals) names_.push_back(std::move(n));

  if (names_.size() > 256) throw GrammarError("alphabet has more than 256 symbols");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_valid_symbol_name(names_[i]))
      throw GrammarError("invalid symbol name '" + names_[i] + "'");
    auto [it, inserted] = by_name_.emplace(names_[i], static_cast<Symbol>(i));
    if (!inserted) throw GrammarError("symbol '" + names_[i] + "' declared twice");
  }
}

std::optional<Symbol> SymbolTable::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Symbol SymbolTable::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw GrammarError("undeclared symbol '" + std::string(name) + "'");
}

std::vector<Symbol> SymbolTable::terminals() const {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < terminal_count_; ++i) out.push_back(static_cast<Symbol>(i));
  return out;
}

std::vector<Symbol> SymbolTable::nonterminals() const {
  std::vector<Symbol> out;
  for (std::size_t i = terminal_count_; i < names_.size(); ++i)
    out.push_back(static_cast<Symbol>(i));
  return out;
}

std::vector<std::string> SymbolTable::terminal_names() const {
  return {names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(terminal_count_)};
}

std::vector<std::string> SymbolTable::nonterminal_names() const {
  return {names_.begin() + static_cast<std::ptrdiff_t>(terminal_count_), names_.end()};
}

bool SymbolTable::is_terminal_word(const Word& w) const noexcept {
  for (unsigned char c : w.codes())
    if (c >= terminal_count_) return false;
  return true;
}

Word SymbolTable::word(std::string_view text) const {
  Word w;
  const auto tokens = detail::split_symbol_tokens(text);
  if (tokens.size() == 1 && tokens.front() == "eps") return w;
  for (const auto& tok : tokens) w.push_back(at(tok));
  return w;
}

std::string SymbolTable::render(const Word& w) const {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += quote_symbol(name(w[i]));
  }
  return out;
}

}  // namespace scmlab
