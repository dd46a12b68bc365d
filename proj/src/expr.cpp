#include "spinor_hardy/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace spinh {

namespace {

struct Token {
  enum class Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };
  Kind kind;
  std::size_t pos;
  double value = 0.0;
  std::string ident;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Token::Kind::end, start};
    const char c = text_[pos_];
    switch (c) {
      case '+': ++pos_; return {Token::Kind::plus, start};
      case '-': ++pos_; return {Token::Kind::minus, start};
      case '*': ++pos_; return {Token::Kind::star, start};
      case '/': ++pos_; return {Token::Kind::slash, start};
      case '^': ++pos_; return {Token::Kind::caret, start};
      case '(': ++pos_; return {Token::Kind::lparen, start};
      case ')': ++pos_; return {Token::Kind::rparen, start};
      case ',': ++pos_; return {Token::Kind::comma, start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      Token t{Token::Kind::ident, start};
      t.ident = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    throw ExprError("unexpected character '" + std::string(1, c) + "' at column " +
                        std::to_string(start + 1),
                    start);
  }

 private:
  Token lex_number(std::size_t start) {
    std::size_t end = start;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) ||
                                  text_[end] == '.'))
      ++end;
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
      if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
        ++exp;
        while (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) ++exp;
        end = exp;
      }
    }
    Token t{Token::Kind::number, start};
    const char* first = text_.data() + start;
    const char* last = text_.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, t.value);
    if (ec != std::errc() || ptr != last)
      throw ExprError("malformed number at column " + std::to_string(start + 1), start);
    pos_ = end;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : lexer_(text) { advance(); }

  RadialExpr run(std::string_view text) {
    RadialExpr out;
    out.text_ = std::string(text);
    nodes_ = &out.nodes_;
    out.root_ = parse_sum();
    expect(Token::Kind::end, "end of input");
    return out;
  }

 private:
  using Node = RadialExpr::Node;
  using Op = RadialExpr::Node::Op;

  void advance() { current_ = lexer_.next(); }

  void expect(Token::Kind kind, const std::string& what) {
    if (current_.kind != kind)
      throw ExprError("expected " + what + " at column " + std::to_string(current_.pos + 1),
                      current_.pos);
    advance();
  }

  int add_node(Op op, double value = 0.0, int a = -1, int b = -1) {
    nodes_->push_back({op, value, a, b});
    return static_cast<int>(nodes_->size()) - 1;
  }

  int parse_sum() {
    int lhs = parse_product();
    while (current_.kind == Token::Kind::plus || current_.kind == Token::Kind::minus) {
      const Op op = current_.kind == Token::Kind::plus ? Op::add : Op::sub;
      advance();
      const int rhs = parse_product();
      lhs = add_node(op, 0.0, lhs, rhs);
    }
    return lhs;
  }

  int parse_product() {
    int lhs = parse_unary();
    while (current_.kind == Token::Kind::star || current_.kind == Token::Kind::slash) {
      const Op op = current_.kind == Token::Kind::star ? Op::mul : Op::div;
      advance();
      const int rhs = parse_unary();
      lhs = add_node(op, 0.0, lhs, rhs);
    }
    return lhs;
  }

  int parse_unary() {
    if (current_.kind == Token::Kind::minus) {
      advance();
      return add_node(Op::neg, 0.0, parse_unary());
    }
    return parse_power();
  }

  // Right-associative, and the exponent may itself carry a sign: r^-2.
  int parse_power() {
    const int base = parse_atom();
    if (current_.kind != Token::Kind::caret) return base;
    advance();
    const int exponent = parse_unary();
    return add_node(Op::pow, 0.0, base, exponent);
  }

  int parse_atom() {
    const Token t = current_;
    switch (t.kind) {
      case Token::Kind::number:
        advance();
        return add_node(Op::number, t.value);
      case Token::Kind::lparen: {
        advance();
        const int inner = parse_sum();
        expect(Token::Kind::rparen, "')'");
        return inner;
      }
      case Token::Kind::ident:
        advance();
        return parse_ident(t);
      default:
        throw ExprError("expected a value at column " + std::to_string(t.pos + 1), t.pos);
    }
  }

  int parse_ident(const Token& t) {
    if (t.ident == "r") return add_node(Op::var);
    Op op;
    int arity = 1;
    if (t.ident == "exp") op = Op::exp;
    else if (t.ident == "sin") op = Op::sin;
    else if (t.ident == "cos") op = Op::cos;
    else if (t.ident == "sqrt") op = Op::sqrt;
    else if (t.ident == "pow") { op = Op::pow; arity = 2; }
    else
      throw ExprError("unknown identifier '" + t.ident + "' at column " +
                          std::to_string(t.pos + 1),
                      t.pos);
    expect(Token::Kind::lparen, "'(' after '" + t.ident + "'");
    const int a = parse_sum();
    int b = -1;
    if (arity == 2) {
      expect(Token::Kind::comma, "',' in pow(base, exponent)");
      b = parse_sum();
    }
    expect(Token::Kind::rparen, "')'");
    return arity == 2 ? add_node(op, 0.0, a, b) : add_node(op, 0.0, a);
  }

  Lexer lexer_;
  Token current_{Token::Kind::end, 0};
  std::vector<Node>* nodes_ = nullptr;
};

RadialExpr RadialExpr::parse(std::string_view text) {
  return ExprParser(text).run(text);
}

double RadialExpr::eval(int node, double r) const {
  const Node& n = nodes_[node];
  using Op = Node::Op;
  switch (n.op) {
    case Op::number: return n.value;
    case Op::var: return r;
    case Op::add: return eval(n.a, r) + eval(n.b, r);
    case Op::sub: return eval(n.a, r) - eval(n.b, r);
    case Op::mul: return eval(n.a, r) * eval(n.b, r);
    case Op::div: return eval(n.a, r) / eval(n.b, r);
    case Op::pow: return std::pow(eval(n.a, r), eval(n.b, r));
    case Op::neg: return -eval(n.a, r);
    case Op::exp: return std::exp(eval(n.a, r));
    case Op::sin: return std::sin(eval(n.a, r));
    case Op::cos: return std::cos(eval(n.a, r));
    case Op::sqrt: return std::sqrt(eval(n.a, r));
  }
  return 0.0;
}

double RadialExpr::operator()(double r) const {
  if (root_ < 0) throw std::logic_error("RadialExpr: evaluating an empty expression");
  return eval(root_, r);
}

}  // namespace spinh
