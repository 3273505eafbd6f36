#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "verlagerung/abelian.hpp"
#include "verlagerung/word.hpp"

namespace vlg {

class ParseError : public PreconditionError {
 public:
  ParseError(std::size_t position, const std::string& what)
      : PreconditionError("parse error at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct FpGroup {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  std::size_t num_generators() const { return generator_names.size(); }
  std::string format(const Word& w) const { return vlg::to_string(w, generator_names); }
  std::string to_string() const {
    std::string out = "< ";
    for (std::size_t i = 0; i < generator_names.size(); ++i) out += (i ? ", " : "") + generator_names[i];
    out += " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) out += (i ? ", " : "") + format(relators[i]);
    return out + " >";
  }
};

namespace detail {

// Recursive-descent reader for words and presentations.
//   expr  := term ('*' term)*
//   term  := atom ('^' integer)*
//   atom  := name | '1' | '(' expr ')' | '[' expr ',' expr ']'
class WordParser {
 public:
  WordParser(std::string_view text, std::size_t offset = 0) : text_(text), pos_(offset) {}

  std::vector<std::string> names;

  std::size_t pos() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) const { throw ParseError(pos_, why); }

  static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string name() {
    skip_ws();
    if (pos_ >= text_.size() || !name_start(text_[pos_])) fail("expected a generator name");
    std::size_t b = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(b, pos_ - b));
  }

  long integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an exponent");
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > 1000000) fail("exponent too large");
      v = v * 10 + (text_[pos_++] - '0');
    }
    return neg ? -v : v;
  }

  Word expr() {
    Word w = term();
    while (accept('*')) w = w * term();
    return w;
  }

  Word term() {
    Word w = atom();
    while (accept('^')) w = w.pow(integer());
    return w;
  }

  Word atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = expr();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word x = expr();
      expect(',');
      Word y = expr();
      expect(']');
      return x * y * x.inverse() * y.inverse();
    }
    if (c == '1') {
      ++pos_;
      return Word();
    }
    const std::size_t at = pos_;
    std::string n = name();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return Word::generator(i);
    throw ParseError(at, "unknown generator '" + n + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_;
};

}  // namespace detail

// Parses "< a, b | a^3, b^2, (a*b)^2 >". A relation "u = v" becomes u v^-1.
inline FpGroup parse_presentation(std::string_view text) {
  detail::WordParser p(text);
  p.expect('<');
  FpGroup G;
  if (p.peek() != '|') {
    do {
      const std::size_t at = p.pos();
      std::string n = p.name();
      for (const auto& m : p.names)
        if (m == n) throw ParseError(at, "duplicate generator '" + n + "'");
      p.names.push_back(std::move(n));
    } while (p.accept(','));
  }
  p.expect('|');
  if (p.peek() != '>') {
    do {
      Word r = p.expr();
      if (p.accept('=')) r = r * p.expr().inverse();
      G.relators.push_back(std::move(r));
    } while (p.accept(','));
  }
  p.expect('>');
  if (!p.at_end()) p.fail("trailing input");
  G.generator_names = p.names;
  return G;
}

inline Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  detail::WordParser p(text);
  p.names = names;
  Word w = p.expr();
  if (!p.at_end()) p.fail("trailing input");
  return w;
}

// Comma-separated list of words, e.g. "a, b*a*b^-1, b^2"; empty text gives none.
inline std::vector<Word> parse_word_list(std::string_view text, const std::vector<std::string>& names) {
  detail::WordParser p(text);
  p.names = names;
  std::vector<Word> out;
  if (p.at_end()) return out;
  do out.push_back(p.expr());
  while (p.accept(','));
  if (!p.at_end()) p.fail("trailing input");
  return out;
}

// Cokernel of the relator exponent matrix: the group, the map from exponent
// vectors over the generators, and a section back.
inline QuotientMap abelianization_fp(const FpGroup& G) {
  IntMatrix R(G.num_generators(), G.relators.size());
  for (std::size_t j = 0; j < G.relators.size(); ++j)
    R.set_column(j, exponent_sums(G.relators[j], G.num_generators()));
  return cokernel_structure(R);
}

inline std::size_t tf_rank(const FpGroup& G) { return abelianization_fp(G).group.free_rank(); }

}  // namespace vlg
