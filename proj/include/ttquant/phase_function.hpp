#pragma once

#include <map>
#include <string>

#include "ttquant/context.hpp"
#include "ttquant/gauss_rational.hpp"
#include "ttquant/polynomial.hpp"

namespace ttq {

/// Exact rational function over Q(i) in the variables of a PhaseContext.
///
/// Always canonical: numerator and denominator are coprime, the denominator
/// has leading coefficient one, and zero is 0/1. Equality is therefore
/// componentwise equality.
class PhaseFunction {
 public:
  /// The zero function.
  explicit PhaseFunction(ContextPtr ctx);

  static PhaseFunction constant(ContextPtr ctx, const GaussRational& c);
  static PhaseFunction variable(ContextPtr ctx, std::size_t var);
  static PhaseFunction q(ContextPtr ctx, int i);
  static PhaseFunction p(ContextPtr ctx, int i);
  static PhaseFunction param(ContextPtr ctx, std::string_view name);
  /// num / den, reduced. Throws DivisionByZeroError if den is zero.
  static PhaseFunction ratio(ContextPtr ctx, Polynomial num, Polynomial den);

  const ContextPtr& context() const noexcept { return ctx_; }
  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool depends_on(std::size_t var) const { return num_.depends_on(var) || den_.depends_on(var); }
  /// True if no p variable occurs.
  bool is_momentum_free() const;
  /// True if only parameters occur.
  bool is_parameter_only() const;

  PhaseFunction& operator+=(const PhaseFunction& o);
  PhaseFunction& operator-=(const PhaseFunction& o);
  PhaseFunction& operator*=(const PhaseFunction& o);
  PhaseFunction& operator/=(const PhaseFunction& o);
  friend PhaseFunction operator+(PhaseFunction a, const PhaseFunction& b) { return a += b; }
  friend PhaseFunction operator-(PhaseFunction a, const PhaseFunction& b) { return a -= b; }
  friend PhaseFunction operator*(PhaseFunction a, const PhaseFunction& b) { return a *= b; }
  friend PhaseFunction operator/(PhaseFunction a, const PhaseFunction& b) { return a /= b; }
  PhaseFunction operator-() const;

  PhaseFunction scaled(const GaussRational& c) const;
  PhaseFunction pow(unsigned k) const;

  friend bool operator==(const PhaseFunction& a, const PhaseFunction& b);

 private:
  PhaseFunction(ContextPtr ctx, Polynomial num, Polynomial den) noexcept;

  ContextPtr ctx_;
  Polynomial num_;
  Polynomial den_;
};

using Bindings = std::map<std::size_t, PhaseFunction>;
using Point = std::map<std::size_t, GaussRational>;

/// Partial derivative in a phase variable. Parameters are constants and may
/// not be differentiated (VariableError).
PhaseFunction differentiate(const PhaseFunction& f, std::size_t var);

/// Simultaneous substitution of the bound variables. PoleError if the
/// denominator collapses to zero.
PhaseFunction substitute(const PhaseFunction& f, const Bindings& bindings);

bool is_identically_zero(const PhaseFunction& f);

/// Exact value; every occurring variable must be bound. PoleError at poles.
GaussRational evaluate(const PhaseFunction& f, const Point& point);

struct FormatOptions {
  /// Render phase variables as Q1.., P1.. (the transformed chart).
  bool upper_case_chart = false;
};

/// Canonical text in the expression grammar; parse(format(f)) == f.
std::string format(const PhaseFunction& f, const FormatOptions& options = {});
std::string format(const Polynomial& p, const PhaseContext& ctx, const FormatOptions& options = {});

}  // namespace ttq
