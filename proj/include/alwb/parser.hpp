#ifndef ALWB_PARSER_HPP
#define ALWB_PARSER_HPP

#include "alwb/formula.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace alwb {

/// Syntax error carrying the byte offset where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

enum class Tok { Impl, Join, Meet, Fus, Minus, Tilde, Multiple, Var, T, F, LParen, RParen, Comma, Turnstile, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::size_t value = 0;  // variable index or multiplier
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::End, start};
    auto rest = text_.substr(pos_);
    auto take = [&](std::string_view lexeme, Tok kind) -> bool {
      if (rest.substr(0, lexeme.size()) != lexeme) return false;
      pos_ += lexeme.size();
      current_ = {kind, start};
      return true;
    };
    // Multi-byte spellings first, then the ASCII ones.
    if (take("->", Tok::Impl) || take("→", Tok::Impl) || take("\\/", Tok::Join) ||
        take("∨", Tok::Join) || take("/\\", Tok::Meet) || take("∧", Tok::Meet) ||
        take("|-", Tok::Turnstile) || take("⊢", Tok::Turnstile) || take("*", Tok::Fus) ||
        take("-", Tok::Minus) || take("~", Tok::Tilde) || take("(", Tok::LParen) ||
        take(")", Tok::RParen) || take(",", Tok::Comma))
      return current_;

    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (n > 100000) throw ParseError("multiplier too large", start);
        ++pos_;
      }
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '.') throw ParseError("expected '.' after multiplier", pos_);
      ++pos_;
      return {Tok::Multiple, start, n};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      std::string_view word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "t") return {Tok::T, start};
      if (word == "f") return {Tok::F, start};
      if (word == "p") return {Tok::Var, start, 0};
      if (word == "q") return {Tok::Var, start, 1};
      if (word == "r") return {Tok::Var, start, 2};
      if (word == "s") return {Tok::Var, start, 3};
      if (word.size() > 1 && word[0] == 'p') {
        std::size_t idx = 0;
        for (char d : word.substr(1)) {
          if (!std::isdigit(static_cast<unsigned char>(d))) throw ParseError("unknown identifier '" + std::string(word) + "'", start);
          idx = idx * 10 + static_cast<std::size_t>(d - '0');
          if (idx > 1000000) throw ParseError("variable index too large", start);
        }
        return {Tok::Var, start, idx};
      }
      throw ParseError("unknown identifier '" + std::string(word) + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, 0};
};

// Recursive descent over the precedence ladder -> < \/ < /\ < * < unary.
class Parser {
 public:
  Parser(std::string_view text, bool pointed) : lexer_(text), pointed_(pointed) { advance(); }

  Formula formula() { return implication(); }

  Consecution consecution() {
    Consecution out;
    if (look_.kind == Tok::Turnstile) {
      advance();
      out.conclusion = formula();
      return out;
    }
    for (;;) {
      out.premises.push_back(formula());
      if (look_.kind == Tok::Comma) {
        advance();
        continue;
      }
      if (look_.kind == Tok::Turnstile) {
        advance();
        out.conclusion = formula();
        return out;
      }
      throw ParseError("expected ',' or '|-'", look_.pos);
    }
  }

  void expect_end() {
    if (look_.kind != Tok::End) throw ParseError("unexpected trailing input", look_.pos);
  }

 private:
  void advance() { look_ = lexer_.next(); }

  Formula implication() {
    Formula lhs = join();
    if (look_.kind == Tok::Impl) {
      advance();
      return Formula::impl(lhs, implication());
    }
    return lhs;
  }

  Formula join() {
    Formula acc = meet();
    while (look_.kind == Tok::Join) {
      advance();
      acc = Formula::join(acc, meet());
    }
    return acc;
  }

  Formula meet() {
    Formula acc = fusion();
    while (look_.kind == Tok::Meet) {
      advance();
      acc = Formula::meet(acc, fusion());
    }
    return acc;
  }

  Formula fusion() {
    Formula acc = unary();
    while (look_.kind == Tok::Fus) {
      advance();
      acc = Formula::fus(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    Token tok = look_;
    switch (tok.kind) {
      case Tok::Minus:
        advance();
        return neg(unary());
      case Tok::Tilde:
        if (!pointed_) throw ParseError("f not allowed (~ abbreviates -> f)", tok.pos);
        advance();
        return lneg(unary());
      case Tok::Multiple:
        advance();
        return multiple(tok.value, unary());
      default: return atom();
    }
  }

  Formula atom() {
    Token tok = look_;
    switch (tok.kind) {
      case Tok::Var: advance(); return Formula::var(tok.value);
      case Tok::T: advance(); return Formula::t();
      case Tok::F:
        if (!pointed_) throw ParseError("f not allowed", tok.pos);
        advance();
        return Formula::f();
      case Tok::LParen: {
        advance();
        Formula inner = formula();
        if (look_.kind != Tok::RParen) throw ParseError("expected ')'", look_.pos);
        advance();
        return inner;
      }
      case Tok::End: throw ParseError("unexpected end of input", tok.pos);
      default: throw ParseError("expected a formula", tok.pos);
    }
  }

  Lexer lexer_;
  Token look_{Tok::End, 0};
  bool pointed_;
};

}  // namespace detail

/// Parses a formula. With `pointed` off, any occurrence of f (or ~) is rejected.
inline Formula parse_formula(std::string_view text, bool pointed = true) {
  detail::Parser p(text, pointed);
  Formula out = p.formula();
  p.expect_end();
  return out;
}

/// Parses `phi1, ..., phin |- phi` (n may be 0).
inline Consecution parse_consecution(std::string_view text, bool pointed = true) {
  detail::Parser p(text, pointed);
  Consecution out = p.consecution();
  p.expect_end();
  return out;
}

}  // namespace alwb

#endif  // ALWB_PARSER_HPP
