#include "ttquant/parser.hpp"

#include <cctype>

#include "ttquant/errors.hpp"

namespace ttq {

namespace {

struct Token {
  enum class Kind { Number, Identifier, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t k = 0;
  while (k < text.size()) {
    const char c = text[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = k;
      while (k < text.size() && (std::isdigit(static_cast<unsigned char>(text[k])) || text[k] == '.')) ++k;
      tokens.push_back({Token::Kind::Number, std::string(text.substr(start, k - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = k;
      while (k < text.size() && (std::isalnum(static_cast<unsigned char>(text[k])) || text[k] == '_')) ++k;
      tokens.push_back({Token::Kind::Identifier, std::string(text.substr(start, k - start)), start});
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      tokens.push_back({Token::Kind::Symbol, std::string(1, c), k});
      ++k;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", k);
    }
  }
  tokens.push_back({Token::Kind::End, "", text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Ast parse_all() {
    Ast root = expression();
    if (peek().kind != Token::Kind::End) throw ParseError("unexpected '" + peek().text + "'", peek().position);
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at_symbol(char c) const { return peek().kind == Token::Kind::Symbol && peek().text[0] == c; }
  Token take() { return tokens_[pos_++]; }

  void expect(char c) {
    if (!at_symbol(c)) {
      const auto& t = peek();
      throw ParseError(std::string("expected '") + c + "' but found " +
                           (t.kind == Token::Kind::End ? std::string("end of input") : "'" + t.text + "'"),
                       t.position);
    }
    ++pos_;
  }

  static Ast binary(Ast::Kind kind, std::size_t position, Ast lhs, Ast rhs) {
    Ast node;
    node.kind = kind;
    node.position = position;
    node.children.push_back(std::move(lhs));
    node.children.push_back(std::move(rhs));
    return node;
  }

  Ast expression() {
    Ast lhs = term();
    while (at_symbol('+') || at_symbol('-')) {
      const Token op = take();
      lhs = binary(op.text == "+" ? Ast::Kind::Add : Ast::Kind::Sub, op.position, std::move(lhs), term());
    }
    return lhs;
  }

  Ast term() {
    Ast lhs = unary();
    while (at_symbol('*') || at_symbol('/')) {
      const Token op = take();
      lhs = binary(op.text == "*" ? Ast::Kind::Mul : Ast::Kind::Div, op.position, std::move(lhs), unary());
    }
    return lhs;
  }

  Ast unary() {
    if (at_symbol('-') || at_symbol('+')) {
      const Token op = take();
      Ast operand = unary();
      if (op.text == "+") return operand;
      Ast node;
      node.kind = Ast::Kind::Negate;
      node.position = op.position;
      node.children.push_back(std::move(operand));
      return node;
    }
    return power();
  }

  Ast power() {
    Ast base = primary();
    if (!at_symbol('^')) return base;
    const Token op = take();
    const Token exp = take();
    if (exp.kind != Token::Kind::Number || exp.text.find('.') != std::string::npos) {
      throw ParseError("exponent must be a nonnegative integer", exp.position);
    }
    Ast node;
    node.kind = Ast::Kind::Pow;
    node.position = op.position;
    node.exponent = static_cast<unsigned>(std::stoul(exp.text));
    node.children.push_back(std::move(base));
    return node;
  }

  Ast primary() {
    const Token t = take();
    switch (t.kind) {
      case Token::Kind::Number: {
        Ast node;
        node.position = t.position;
        try {
          node.number = parse_rational(t.text);
        } catch (const Error&) {
          throw ParseError("malformed number '" + t.text + "'", t.position);
        }
        return node;
      }
      case Token::Kind::Identifier: {
        Ast node;
        node.kind = Ast::Kind::Identifier;
        node.position = t.position;
        node.name = t.text;
        if (at_symbol('(')) {
          ++pos_;
          node.kind = Ast::Kind::Call;
          node.children.push_back(expression());
          expect(')');
        }
        return node;
      }
      case Token::Kind::Symbol:
        if (t.text == "(") {
          Ast inner = expression();
          expect(')');
          return inner;
        }
        throw ParseError("unexpected '" + t.text + "'", t.position);
      case Token::Kind::End:
        break;
    }
    throw ParseError("unexpected end of input", t.position);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Ast parse_ast(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

PhaseFunction evaluate_ast(const Ast& ast, const ContextPtr& ctx, const Resolver& resolver) {
  auto child = [&](std::size_t k) { return evaluate_ast(ast.children[k], ctx, resolver); };
  switch (ast.kind) {
    case Ast::Kind::Number:
      return PhaseFunction::constant(ctx, GaussRational(ast.number));
    case Ast::Kind::Identifier: {
      if (ast.name == "i") return PhaseFunction::constant(ctx, GaussRational::imaginary_unit());
      if (auto var = ctx->lookup(ast.name)) return PhaseFunction::variable(ctx, *var);
      if (resolver) {
        if (auto value = resolver(ast.name)) return *value;
      }
      throw UnknownIdentifierError(ast.name, ast.position);
    }
    case Ast::Kind::Negate:
      return -child(0);
    case Ast::Kind::Add:
      return child(0) + child(1);
    case Ast::Kind::Sub:
      return child(0) - child(1);
    case Ast::Kind::Mul:
      return child(0) * child(1);
    case Ast::Kind::Div: {
      PhaseFunction denominator = child(1);
      if (denominator.is_zero()) throw DivisionByZeroError("division by zero at position " + std::to_string(ast.position));
      return child(0) / denominator;
    }
    case Ast::Kind::Pow:
      return child(0).pow(ast.exponent);
    case Ast::Kind::Call:
      throw ParseError("'" + ast.name + "' is not a function of phase-space expressions", ast.position);
  }
  throw Error("malformed syntax tree");
}

PhaseFunction parse(std::string_view text, const ContextPtr& ctx, const Resolver& resolver) {
  return evaluate_ast(parse_ast(text), ctx, resolver);
}

}  // namespace ttq
