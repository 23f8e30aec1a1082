#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttquant/phase_function.hpp"

namespace ttq {

/// Syntax tree of the expression grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' integer)?
///   primary := number | identifier | identifier '(' expr ')' | '(' expr ')'
struct Ast {
  enum class Kind { Number, Identifier, Negate, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  std::size_t position = 0;
  std::string name;       // Identifier, Call
  mpq_class number;       // Number
  unsigned exponent = 0;  // Pow
  std::vector<Ast> children;
};

/// Throws ParseError with the offending position.
Ast parse_ast(std::string_view text);

/// Extra names (macros) looked up before reporting an unknown identifier.
using Resolver = std::function<std::optional<PhaseFunction>(std::string_view)>;

PhaseFunction evaluate_ast(const Ast& ast, const ContextPtr& ctx, const Resolver& resolver = {});

/// Parses text into a canonical PhaseFunction. Identifiers are the context's
/// variables, "i", and whatever the resolver supplies.
PhaseFunction parse(std::string_view text, const ContextPtr& ctx, const Resolver& resolver = {});

}  // namespace ttq
