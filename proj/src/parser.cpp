#include "liepoisson/parser.hpp"

#include <cctype>

namespace liepoisson {

namespace {

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::End, ""};
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      current_ = {Token::Number, text_.substr(start, pos_ - start)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      current_ = {Token::Ident, text_.substr(start, pos_ - start)};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': current_ = {Token::Plus, "+"}; return;
      case '-': current_ = {Token::Minus, "-"}; return;
      case '*': current_ = {Token::Star, "*"}; return;
      case '/': current_ = {Token::Slash, "/"}; return;
      case '^': current_ = {Token::Caret, "^"}; return;
      case '(': current_ = {Token::LParen, "("}; return;
      case ')': current_ = {Token::RParen, ")"}; return;
      default: throw ParseError(std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_;
};

bool is_coordinate_name(const std::string& name, Coordinate& index) {
  if (name.size() < 2 || name[0] != 'x') return false;
  if (name[1] == '0') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  index = std::stoi(name.substr(1));
  return true;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) {}

  Expression parse() {
    Expression e = parse_sum();
    if (lexer_.peek().kind != Token::End)
      throw ParseError("unexpected trailing input near '" + lexer_.peek().text + "'");
    return e;
  }

 private:
  Expression parse_sum() {
    Expression acc = parse_product();
    while (true) {
      Token::Kind k = lexer_.peek().kind;
      if (k == Token::Plus) {
        lexer_.take();
        acc = add(acc, parse_product());
      } else if (k == Token::Minus) {
        lexer_.take();
        acc = sub(acc, parse_product());
      } else {
        return acc;
      }
    }
  }

  Expression parse_product() {
    Expression acc = parse_unary();
    while (true) {
      Token::Kind k = lexer_.peek().kind;
      if (k == Token::Star) {
        lexer_.take();
        acc = mul(acc, parse_unary());
      } else if (k == Token::Slash) {
        lexer_.take();
        Expression divisor = parse_unary();
        if (!is_invertible_term(divisor))
          throw ParseError("divisor must be a single invertible factor: " + to_string(divisor));
        acc = divide_by_term(acc, divisor);
      } else {
        return acc;
      }
    }
  }

  Expression parse_unary() {
    if (lexer_.peek().kind == Token::Minus) {
      lexer_.take();
      return neg(parse_unary());
    }
    if (lexer_.peek().kind == Token::Plus) {
      lexer_.take();
      return parse_unary();
    }
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    if (lexer_.peek().kind != Token::Caret) return base;
    lexer_.take();
    bool negative = false;
    if (lexer_.peek().kind == Token::Minus) {
      lexer_.take();
      negative = true;
    }
    Token t = lexer_.take();
    if (t.kind != Token::Number) throw ParseError("expected integer exponent after '^'");
    int e = std::stoi(t.text);
    return pow(base, negative ? -e : e);
  }

  Expression parse_primary() {
    Token t = lexer_.take();
    if (t.kind == Token::Number) return Expression::constant(Rational(Integer(t.text)));
    if (t.kind == Token::LParen) {
      Expression e = parse_sum();
      expect(Token::RParen, ")");
      return e;
    }
    if (t.kind != Token::Ident) throw ParseError("unexpected token '" + t.text + "'");

    if ((t.text == "exp" || t.text == "sin" || t.text == "cos") && lexer_.peek().kind == Token::LParen) {
      lexer_.take();
      Expression arg = parse_sum();
      expect(Token::RParen, ")");
      return make_function(t.text, arg);
    }
    Coordinate index = 0;
    if (is_coordinate_name(t.text, index)) return Expression::coordinate(index);
    return Expression::symbol(t.text);
  }

  // Function arguments must reduce to c * x_i with rational c.
  Expression make_function(const std::string& name, const Expression& arg) {
    Coordinate coord = 0;
    Rational scale;
    if (arg.terms().size() == 1) {
      const auto& [key, c] = *arg.terms().begin();
      if (key.params.empty() && key.exps.empty() && key.trig.empty() && key.mono.size() == 1 &&
          key.mono.begin()->second == 1) {
        coord = key.mono.begin()->first;
        scale = c;
      }
    }
    if (coord == 0) {
      if (arg.is_zero()) {
        if (name == "exp" || name == "cos") return Expression::constant(Rational(1));
        return Expression();  // sin(0) = 0
      }
      throw ParseError(name + " argument must be a rational multiple of one coordinate, got: " +
                       to_string(arg));
    }
    TermKey key;
    if (name == "exp") {
      key.exps.emplace(coord, scale);
      return Expression::term(Rational(1), std::move(key));
    }
    Rational coeff(1);
    TrigKind kind = (name == "sin") ? TrigKind::sin : TrigKind::cos;
    if (scale < 0) {
      if (kind == TrigKind::sin) coeff = -coeff;
      scale = -scale;
    }
    key.trig.emplace(coord, TrigFactor{kind, std::move(scale)});
    return Expression::term(coeff, std::move(key));
  }

  void expect(Token::Kind kind, const std::string& what) {
    Token t = lexer_.take();
    if (t.kind != kind) throw ParseError("expected '" + what + "', got '" + t.text + "'");
  }

  Lexer lexer_;
};

}  // namespace

Expression parse_expression(const std::string& text) { return Parser(text).parse(); }

}  // namespace liepoisson
