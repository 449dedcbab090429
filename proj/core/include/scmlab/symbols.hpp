#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scmlab {

/// Index of a symbol inside its grammar's SymbolTable.
enum class Symbol : std::uint8_t {};

constexpr std::size_t index_of(Symbol s) noexcept {
  return static_cast<std::size_t>(s);
}

/// A finite sequence of symbols. The empty word is lambda.
///
/// Symbols are packed one byte each so that words hash and compare like
/// strings; `operator<=>` is the length-lexicographic order used for every
/// deterministic listing in the library.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Symbol> symbols);
  explicit Word(std::span<const Symbol> symbols);

  static Word from_codes(std::string codes) {
    Word w;
    w.codes_ = std::move(codes);
    return w;
  }

  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }

  Symbol operator[](std::size_t i) const noexcept {
    return static_cast<Symbol>(static_cast<unsigned char>(codes_[i]));
  }

  void push_back(Symbol s) { codes_.push_back(static_cast<char>(s)); }
  Word& operator+=(const Word& other) {
    codes_ += other.codes_;
    return *this;
  }
  friend Word operator+(Word lhs, const Word& rhs) { return lhs += rhs; }

  /// Subword (factor) test: true iff `sub` occurs contiguously in *this.
  bool contains(const Word& sub) const noexcept {
    return codes_.find(sub.codes_) != std::string::npos;
  }
  bool contains(Symbol s) const noexcept {
    return codes_.find(static_cast<char>(s)) != std::string::npos;
  }
  std::size_t count(Symbol s) const noexcept;

  /// Positions where `s` occurs, left to right.
  std::vector<std::size_t> occurrences(Symbol s) const;

  /// Copy of *this with the single symbol at `pos` replaced by `replacement`.
  Word replace_at(std::size_t pos, const Word& replacement) const;
  /// Copy of *this with [pos, pos+len) replaced by `replacement`.
  Word replace_range(std::size_t pos, std::size_t len, const Word& replacement) const;

  Word substr(std::size_t pos, std::size_t len = std::string::npos) const {
    return from_codes(codes_.substr(pos, len));
  }

  std::string_view codes() const noexcept { return codes_; }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    if (a.size() != b.size()) return a.size() <=> b.size();
    const int c = a.codes_.compare(b.codes_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  std::string codes_;
};

/// Alphabet of one grammar: terminals and nonterminals with unique names.
///
/// Ids are canonical: terminals sorted by name come first, then nonterminals
/// sorted by name. Two tables built from the same name sets are therefore
/// identical, which makes grammar equality purely structural and keeps the
/// id order of terminal words equal to the name order.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(std::vector<std::string> terminals, std::vector<std::string> nonterminals);

  std::size_t size() const noexcept { return names_.size(); }

  std::optional<Symbol> find(std::string_view name) const;
  /// Throws GrammarError when `name` is not declared.
  Symbol at(std::string_view name) const;
  const std::string& name(Symbol s) const { return names_.at(index_of(s)); }
  bool is_terminal(Symbol s) const noexcept { return index_of(s) < terminal_count_; }
  bool is_nonterminal(Symbol s) const noexcept {
    return index_of(s) >= terminal_count_ && index_of(s) < names_.size();
  }

  std::vector<Symbol> terminals() const;
  std::vector<Symbol> nonterminals() const;
  std::vector<std::string> terminal_names() const;
  std::vector<std::string> nonterminal_names() const;

  bool is_terminal_word(const Word& w) const noexcept;

  /// Parses whitespace-separated names ("A '#' B"); "eps" or blank is lambda.
  Word word(std::string_view text) const;
  /// Space-separated rendering, quoting tokens that need it; lambda is "eps".
  std::string render(const Word& w) const;

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.names_ == b.names_ && a.terminal_count_ == b.terminal_count_;
  }

 private:
  std::vector<std::string> names_;
  std::size_t terminal_count_ = 0;
  std::unordered_map<std::string, Symbol> by_name_;
};

/// True for names usable as symbols: non-empty, printable, no whitespace or
/// quote, and not the reserved token "eps".
bool is_valid_symbol_name(std::string_view name) noexcept;

/// Token form of a symbol name: bare when [A-Za-z0-9_]+, otherwise quoted.
std::string quote_symbol(std::string_view name);

}  // namespace scmlab

template <>
struct std::hash<scmlab::Word> {
  std::size_t operator()(const scmlab::Word& w) const noexcept {
    return std::hash<std::string_view>{}(w.codes());
  }
};
