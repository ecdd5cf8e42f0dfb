#include <cctype>

#include "mtpi/errors.h"
#include "mtpi/formula.h"

namespace mtpi {

namespace {

enum class Tok { kAtom, kTrue, kFalse, kNot, kAnd, kOr, kImp, kIff, kBox, kDia, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t first_line) : text_(text), line_(first_line) {}

  Token Next() {
    SkipSpace();
    const std::size_t line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::kEnd, "", line, col};
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        Advance();
      }
      std::string word(text_.substr(start, pos_ - start));
      if (word == "true") return {Tok::kTrue, word, line, col};
      if (word == "false") return {Tok::kFalse, word, line, col};
      return {Tok::kAtom, word, line, col};
    }
    auto starts = [&](std::string_view s) { return text_.substr(pos_, s.size()) == s; };
    struct Symbol {
      std::string_view text;
      Tok kind;
    };
    static constexpr Symbol kSymbols[] = {
        {"<->", Tok::kIff}, {"->", Tok::kImp}, {"<>", Tok::kDia}, {"[]", Tok::kBox},
        {"~", Tok::kNot},   {"&", Tok::kAnd},  {"|", Tok::kOr},   {"(", Tok::kLParen},
        {")", Tok::kRParen},
    };
    for (const auto& s : kSymbols) {
      if (starts(s.text)) {
        for (std::size_t i = 0; i < s.text.size(); ++i) Advance();
        return {s.kind, std::string(s.text), line, col};
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) Advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t first_line) : lexer_(text, first_line) {
    tok_ = lexer_.Next();
  }

  Formula ParseAll() {
    if (tok_.kind == Tok::kEnd) throw ParseError("empty formula", tok_.line, tok_.column);
    Formula f = ParseIff();
    if (tok_.kind != Tok::kEnd) Fail("unexpected '" + tok_.text + "'");
    return f;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError(what, tok_.line, tok_.column);
  }

  void Shift() { tok_ = lexer_.Next(); }

  Formula ParseIff() {
    Formula lhs = ParseImp();
    while (tok_.kind == Tok::kIff) {
      Shift();
      Formula rhs = ParseImp();
      lhs = Formula::And(Formula::Or(Formula::Not(lhs), rhs), Formula::Or(Formula::Not(rhs), lhs));
    }
    return lhs;
  }

  Formula ParseImp() {
    Formula lhs = ParseOr();
    if (tok_.kind == Tok::kImp) {
      Shift();
      Formula rhs = ParseImp();
      return Formula::Or(Formula::Not(lhs), rhs);
    }
    return lhs;
  }

  Formula ParseOr() {
    std::vector<Formula> parts{ParseAnd()};
    while (tok_.kind == Tok::kOr) {
      Shift();
      parts.push_back(ParseAnd());
    }
    return parts.size() == 1 ? parts[0] : Formula::Or(std::move(parts));
  }

  Formula ParseAnd() {
    std::vector<Formula> parts{ParseUnary()};
    while (tok_.kind == Tok::kAnd) {
      Shift();
      parts.push_back(ParseUnary());
    }
    return parts.size() == 1 ? parts[0] : Formula::And(std::move(parts));
  }

  Formula ParseUnary() {
    switch (tok_.kind) {
      case Tok::kNot: Shift(); return Formula::Not(ParseUnary());
      case Tok::kBox: Shift(); return Formula::Box(ParseUnary());
      case Tok::kDia: Shift(); return Formula::Dia(ParseUnary());
      case Tok::kTrue: Shift(); return Formula::True();
      case Tok::kFalse: Shift(); return Formula::False();
      case Tok::kAtom: {
        Formula v = Formula::Var(tok_.text);
        Shift();
        return v;
      }
      case Tok::kLParen: {
        Shift();
        Formula inner = ParseIff();
        if (tok_.kind != Tok::kRParen) Fail("expected ')'");
        Shift();
        return inner;
      }
      case Tok::kEnd: Fail("unexpected end of formula");
      default: Fail("unexpected '" + tok_.text + "'");
    }
  }

  Lexer lexer_;
  Token tok_;
};

}  // namespace

Formula Parse(std::string_view text, std::size_t first_line) {
  return Parser(text, first_line).ParseAll();
}

}  // namespace mtpi
