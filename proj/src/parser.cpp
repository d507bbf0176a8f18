#include "bcdt/error.hpp"
#include "bcdt/formula.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace bcdt {

namespace {

enum class Tok {
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Bang,
  Amp,
  Bar,
  Caret,
  Always,
  Eventually,
  True,
  False,
  Var,
  Greater,
  LessEqual,
  Number,
  End
};

struct Token {
  Tok kind;
  std::string_view text;
  int line;
  int column;
  double number = 0.0;
  int var = 0;
};

const char* describe(Tok t) {
  switch (t) {
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::LBracket: return "'['";
  case Tok::RBracket: return "']'";
  case Tok::LBrace: return "'{'";
  case Tok::RBrace: return "'}'";
  case Tok::Comma: return "','";
  case Tok::Bang: return "'!'";
  case Tok::Amp: return "'&'";
  case Tok::Bar: return "'|'";
  case Tok::Caret: return "'^'";
  case Tok::Always: return "'G'";
  case Tok::Eventually: return "'F'";
  case Tok::True: return "'true'";
  case Tok::False: return "'false'";
  case Tok::Var: return "variable";
  case Tok::Greater: return "'>'";
  case Tok::LessEqual: return "'<='";
  case Tok::Number: return "number";
  case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token tok{Tok::End, {}, line_, column_};
    if (pos_ >= src_.size())
      return tok;
    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      advance(1);
      tok.kind = k;
      tok.text = src_.substr(start, 1);
      return tok;
    };
    switch (c) {
    case '(': return single(Tok::LParen);
    case ')': return single(Tok::RParen);
    case '[': return single(Tok::LBracket);
    case ']': return single(Tok::RBracket);
    case '{': return single(Tok::LBrace);
    case '}': return single(Tok::RBrace);
    case ',': return single(Tok::Comma);
    case '!': return single(Tok::Bang);
    case '&': return single(Tok::Amp);
    case '|': return single(Tok::Bar);
    case '^': return single(Tok::Caret);
    case '>': return single(Tok::Greater);
    case '<':
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        advance(2);
        tok.kind = Tok::LessEqual;
        tok.text = src_.substr(start, 2);
        return tok;
      }
      break;
    default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')
      return number(tok);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isalnum(static_cast<unsigned char>(src_[end])))
        ++end;
      const std::string_view word = src_.substr(pos_, end - pos_);
      tok.text = word;
      if (word == "G")
        tok.kind = Tok::Always;
      else if (word == "F")
        tok.kind = Tok::Eventually;
      else if (word == "true")
        tok.kind = Tok::True;
      else if (word == "false")
        tok.kind = Tok::False;
      else if (word.size() > 1 && word[0] == 'x' && all_digits(word.substr(1))) {
        tok.kind = Tok::Var;
        long v = std::strtol(std::string(word.substr(1)).c_str(), nullptr, 10);
        if (v < 1 || v > 1'000'000)
          throw SyntaxError("variable index out of range: " + std::string(word), line_, column_, {"x1, x2, ..."});
        tok.var = static_cast<int>(v) - 1;
      } else {
        throw SyntaxError("unknown identifier '" + std::string(word) + "'", line_, column_,
                          {"'G'", "'F'", "'true'", "'false'", "variable"});
      }
      advance(end - pos_);
      return tok;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line_, column_, {});
  }

private:
  static bool all_digits(std::string_view s) {
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        return false;
    return true;
  }

  Token number(Token tok) {
    std::size_t end = pos_;
    if (src_[end] == '+' || src_[end] == '-')
      ++end;
    auto digits = [&] {
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end])))
        ++end;
    };
    const std::size_t mantissa_start = end;
    digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      digits();
    }
    if (end == mantissa_start || (end == mantissa_start + 1 && src_[mantissa_start] == '.'))
      throw SyntaxError("malformed number", line_, column_, {"number"});
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-'))
        ++exp;
      if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
        end = exp;
        digits();
      }
    }
    tok.text = src_.substr(pos_, end - pos_);
    // from_chars rejects a leading '+'
    std::string_view body = tok.text;
    if (!body.empty() && body[0] == '+')
      body.remove_prefix(1);
    auto res = std::from_chars(body.data(), body.data() + body.size(), tok.number);
    if (res.ec != std::errc{} || res.ptr != body.data() + body.size())
      throw SyntaxError("malformed number '" + std::string(tok.text) + "'", line_, column_, {"number"});
    tok.kind = Tok::Number;
    advance(end - pos_);
    return tok;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) { cur_ = lex_.next(); }

  FormulaPtr parse() {
    FormulaPtr f = disjunction();
    if (cur_.kind != Tok::End)
      fail({Tok::Amp, Tok::Bar, Tok::End});
    return f;
  }

private:
  [[noreturn]] void fail(std::initializer_list<Tok> expected) {
    std::vector<std::string> names;
    std::string msg = "unexpected ";
    msg += cur_.kind == Tok::End ? "end of input" : "'" + std::string(cur_.text) + "'";
    msg += "; expected ";
    bool first = true;
    for (Tok t : expected) {
      names.emplace_back(describe(t));
      msg += (first ? "" : " or ") + names.back();
      first = false;
    }
    throw SyntaxError(msg, cur_.line, cur_.column, std::move(names));
  }

  Token expect(Tok k) {
    if (cur_.kind != k)
      fail({k});
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  bool accept(Tok k) {
    if (cur_.kind != k)
      return false;
    cur_ = lex_.next();
    return true;
  }

  FormulaPtr disjunction() {
    std::vector<FormulaPtr> ops{conjunction()};
    while (accept(Tok::Bar))
      ops.push_back(conjunction());
    return make_or(std::move(ops));
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> ops{unary()};
    std::vector<double> weights;
    bool weighted = false;
    while (cur_.kind == Tok::Amp) {
      const Token amp = cur_;
      cur_ = lex_.next();
      if (cur_.kind == Tok::Caret) {
        if (ops.size() != 1)
          throw SemanticError("weights must follow the first '&' of a conjunction (line " +
                              std::to_string(amp.line) + ", column " + std::to_string(amp.column) + ")");
        cur_ = lex_.next();
        weights = weight_list();
        weighted = true;
        // a single weighted operand: "(A &^{w})"
        if (cur_.kind == Tok::RParen || cur_.kind == Tok::End)
          break;
      }
      ops.push_back(unary());
    }
    if (weighted)
      return make_and(std::move(ops), std::move(weights));
    return make_and(std::move(ops));
  }

  std::vector<double> weight_list() {
    expect(Tok::LBrace);
    std::vector<double> w{expect(Tok::Number).number};
    while (accept(Tok::Comma))
      w.push_back(expect(Tok::Number).number);
    expect(Tok::RBrace);
    for (double x : w)
      if (!(x > 0.0))
        throw SemanticError("conjunction weights must be positive");
    return w;
  }

  int bound() {
    const Token t = expect(Tok::Number);
    if (t.number < 0 || t.number != static_cast<double>(static_cast<long long>(t.number)) || t.number > 1e9)
      throw SemanticError("interval bound must be a non-negative integer, got '" + std::string(t.text) + "'");
    return static_cast<int>(t.number);
  }

  FormulaPtr unary() {
    switch (cur_.kind) {
    case Tok::Bang:
      cur_ = lex_.next();
      return make_not(unary());
    case Tok::Always:
    case Tok::Eventually: {
      const Temporal op = cur_.kind == Tok::Always ? Temporal::Always : Temporal::Eventually;
      cur_ = lex_.next();
      expect(Tok::LBracket);
      const int a = bound();
      expect(Tok::Comma);
      const int b = bound();
      expect(Tok::RBracket);
      if (a > b)
        throw SemanticError("malformed interval [" + std::to_string(a) + "," + std::to_string(b) + "]: a > b");
      return make_temporal(op, a, b, unary());
    }
    case Tok::LParen: {
      cur_ = lex_.next();
      FormulaPtr f = disjunction();
      expect(Tok::RParen);
      return f;
    }
    case Tok::True:
      cur_ = lex_.next();
      return make_constant(true);
    case Tok::False:
      cur_ = lex_.next();
      return make_constant(false);
    case Tok::Var: {
      const int var = cur_.var;
      cur_ = lex_.next();
      Comparator cmp;
      if (accept(Tok::Greater))
        cmp = Comparator::Greater;
      else if (accept(Tok::LessEqual))
        cmp = Comparator::LessEqual;
      else
        fail({Tok::Greater, Tok::LessEqual});
      const double pi = expect(Tok::Number).number;
      return make_predicate(Face{var, cmp, pi});
    }
    default:
      fail({Tok::Bang, Tok::Always, Tok::Eventually, Tok::LParen, Tok::True, Tok::False, Tok::Var});
    }
  }

  Lexer lex_;
  Token cur_;
};

} // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

} // namespace bcdt
