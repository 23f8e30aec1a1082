#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttquant/phase_function.hpp"

namespace ttq {

/// Derivative multi-index over q1..qn followed by p1..pn.
using MultiIndex = std::vector<unsigned>;

unsigned order_of(const MultiIndex& index);

/// Ascending total order, then descending exponents in variable order, so
/// d/dq1 < d/dq2 < d/dp1 and d2/dq1^2 < d2/dq1dp1 < d2/dp1^2.
struct DerivativeOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Linear differential operator sum_k c_k(q, p) d^(a_k) in normal order:
/// every coefficient stands to the left of its derivative monomial.
class DiffOperator {
 public:
  using TermMap = std::map<MultiIndex, PhaseFunction, DerivativeOrder>;

  /// The zero operator.
  explicit DiffOperator(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static DiffOperator from_function(const PhaseFunction& f);
  static DiffOperator identity(const ContextPtr& ctx);
  /// d/dx for a phase variable x.
  static DiffOperator derivative(const ContextPtr& ctx, std::size_t var);

  const ContextPtr& context() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Highest total derivative order (0 for the zero operator).
  unsigned order() const;
  /// Coefficient of a derivative monomial (zero if absent).
  PhaseFunction coefficient(const MultiIndex& index) const;

  /// Adds c * d^index, dropping the term if it cancels.
  void add_term(const MultiIndex& index, const PhaseFunction& c);

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  DiffOperator operator-() const;
  /// Left multiplication by a function: f * A.
  friend DiffOperator operator*(const PhaseFunction& f, const DiffOperator& a);

  friend bool operator==(const DiffOperator& a, const DiffOperator& b);

 private:
  ContextPtr ctx_;
  TermMap terms_;
};

/// Normal form of A o B by the generalized Leibniz rule.
DiffOperator compose(const DiffOperator& a, const DiffOperator& b);
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);
PhaseFunction apply(const DiffOperator& a, const PhaseFunction& f);
/// Mixed partial derivative d^index f.
PhaseFunction partial(const PhaseFunction& f, const MultiIndex& index);

/// Drops every term with a momentum derivative; such terms annihilate
/// vertically polarized (p-independent) wave functions.
DiffOperator restrict_to_polarized(const DiffOperator& a);
/// True when the polarized part has p-free coefficients, so the operator
/// maps functions of q alone to functions of q alone.
bool preserves_polarization(const DiffOperator& a);

struct OperatorFormat {
  FormatOptions function;
  /// Pull a common factor out of the derivative terms, as in
  /// "i*hbar*(q2*d/dq1 - q1*d/dq2)".
  bool factor_common = true;
};

/// Order-0 part first, then derivative terms by DerivativeOrder.
std::string format(const DiffOperator& a, const OperatorFormat& options = {});
std::string derivative_symbol(const MultiIndex& index, const PhaseContext& ctx, const FormatOptions& options = {});

/// [{"coeff": "...", "dq": [...], "dp": [...]}, ...]
nlohmann::json to_json(const DiffOperator& a);
DiffOperator operator_from_json(const nlohmann::json& j, const ContextPtr& ctx);

}  // namespace ttq
