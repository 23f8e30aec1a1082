#pragma once

#include <string_view>
#include <variant>

#include "ttquant/quantize.hpp"

namespace ttq::cli {

/// Either an observable or an operator; operator expressions are built from
/// observables with KS(f), TT1(f), TT2(f), C(f) and Q(f) (the configured
/// map), combined by +, -, * (composition) and integer powers.
using Value = std::variant<PhaseFunction, DiffOperator>;

Value evaluate_operator_expression(std::string_view text, const ContextPtr& ctx, const QuantizationConfig& config);

/// Observables are quantized with the configured map; operators pass through.
DiffOperator as_operator(const Value& v, const QuantizationConfig& config);

}  // namespace ttq::cli
