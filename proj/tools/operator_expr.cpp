#include "operator_expr.hpp"

#include <functional>

#include "ttquant/errors.hpp"
#include "ttquant/parser.hpp"

namespace ttq::cli {

namespace {

bool contains_call(const Ast& ast) {
  if (ast.kind == Ast::Kind::Call) return true;
  for (const auto& child : ast.children) {
    if (contains_call(child)) return true;
  }
  return false;
}

DiffOperator lift(const Value& v) {
  if (const auto* f = std::get_if<PhaseFunction>(&v)) return DiffOperator::from_function(*f);
  return std::get<DiffOperator>(v);
}

struct Evaluator {
  const ContextPtr& ctx;
  const QuantizationConfig& config;
  Resolver resolver;

  Value operator()(const Ast& ast) const {
    if (!contains_call(ast)) return evaluate_ast(ast, ctx, resolver);
    switch (ast.kind) {
      case Ast::Kind::Call:
        return call(ast);
      case Ast::Kind::Negate:
        return -lift((*this)(ast.children[0]));
      case Ast::Kind::Add:
        return lift((*this)(ast.children[0])) + lift((*this)(ast.children[1]));
      case Ast::Kind::Sub:
        return lift((*this)(ast.children[0])) - lift((*this)(ast.children[1]));
      case Ast::Kind::Mul: {
        const Value a = (*this)(ast.children[0]);
        const Value b = (*this)(ast.children[1]);
        if (const auto* f = std::get_if<PhaseFunction>(&a)) return *f * lift(b);
        return compose(lift(a), lift(b));
      }
      case Ast::Kind::Div: {
        const Value a = (*this)(ast.children[0]);
        const Value b = (*this)(ast.children[1]);
        const auto* den = std::get_if<PhaseFunction>(&b);
        if (!den) throw ParseError("cannot divide by an operator", ast.position);
        return (PhaseFunction::constant(ctx, 1) / *den) * lift(a);
      }
      case Ast::Kind::Pow: {
        const DiffOperator base = lift((*this)(ast.children[0]));
        DiffOperator out = DiffOperator::identity(ctx);
        for (unsigned k = 0; k < ast.exponent; ++k) out = compose(out, base);
        return out;
      }
      default:
        throw ParseError("unexpected expression", ast.position);
    }
  }

  Value call(const Ast& ast) const {
    if (ast.children.size() != 1) throw ParseError("'" + ast.name + "' takes one argument", ast.position);
    const Value arg = (*this)(ast.children[0]);
    const auto* f = std::get_if<PhaseFunction>(&arg);
    if (!f) throw ParseError("'" + ast.name + "' expects an observable, not an operator", ast.position);
    QuantizationConfig cfg = config;
    if (ast.name == "Q") {
      // configured map
    } else if (ast.name == "KS") {
      cfg.map = MapKind::KostantSouriau;
    } else if (ast.name == "TT1") {
      cfg.map = MapKind::Tuned1;
    } else if (ast.name == "TT2") {
      cfg.map = MapKind::Tuned2;
    } else if (ast.name == "C") {
      cfg.map = MapKind::Canonical;
    } else {
      throw UnknownIdentifierError(ast.name, ast.position);
    }
    if (cfg.map == MapKind::Tuned2 && !cfg.metric) cfg.metric = Metric::flat(ctx);
    return quantize(*f, cfg);
  }
};

}  // namespace

Value evaluate_operator_expression(std::string_view text, const ContextPtr& ctx, const QuantizationConfig& config) {
  const Evaluator eval{ctx, config, builtin_resolver(ctx)};
  return eval(parse_ast(text));
}

DiffOperator as_operator(const Value& v, const QuantizationConfig& config) {
  if (const auto* f = std::get_if<PhaseFunction>(&v)) return quantize(*f, config);
  return std::get<DiffOperator>(v);
}

}  // namespace ttq::cli
