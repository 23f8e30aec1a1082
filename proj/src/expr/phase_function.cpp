#include "ttquant/phase_function.hpp"

#include <algorithm>

#include "ttquant/errors.hpp"

namespace ttq {

namespace {

void normalize(Polynomial& num, Polynomial& den, bool coprime = false) {
  if (den.is_zero()) throw DivisionByZeroError("division by zero");
  const std::size_t nv = den.nvars();
  if (num.is_zero()) {
    den = Polynomial::constant(nv, 1);
    return;
  }
  if (den.is_constant()) {
    if (!den.is_one()) num = num.scaled(GaussRational(1) / den.leading_coefficient());
    den = Polynomial::constant(nv, 1);
    return;
  }
  const Polynomial g = coprime ? Polynomial::constant(nv, 1) : gcd(num, den);
  if (!g.is_one()) {
    num = exact_divide(num, g);
    den = exact_divide(den, g);
  }
  if (!den.leading_coefficient().is_one()) {
    const GaussRational inv = GaussRational(1) / den.leading_coefficient();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
}

}  // namespace

PhaseFunction::PhaseFunction(ContextPtr ctx)
    : ctx_(std::move(ctx)), num_(ctx_->nvars()), den_(Polynomial::constant(ctx_->nvars(), 1)) {}

PhaseFunction::PhaseFunction(ContextPtr ctx, Polynomial num, Polynomial den) noexcept
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {}

PhaseFunction PhaseFunction::constant(ContextPtr ctx, const GaussRational& c) {
  const std::size_t nv = ctx->nvars();
  return {std::move(ctx), Polynomial::constant(nv, c), Polynomial::constant(nv, 1)};
}

PhaseFunction PhaseFunction::variable(ContextPtr ctx, std::size_t var) {
  const std::size_t nv = ctx->nvars();
  if (var >= nv) throw VariableError("variable index out of range");
  return {std::move(ctx), Polynomial::variable(nv, var), Polynomial::constant(nv, 1)};
}

PhaseFunction PhaseFunction::q(ContextPtr ctx, int i) {
  const auto v = ctx->q(i);
  return variable(std::move(ctx), v);
}

PhaseFunction PhaseFunction::p(ContextPtr ctx, int i) {
  const auto v = ctx->p(i);
  return variable(std::move(ctx), v);
}

PhaseFunction PhaseFunction::param(ContextPtr ctx, std::string_view name) {
  const auto v = ctx->param(name);
  return variable(std::move(ctx), v);
}

PhaseFunction PhaseFunction::ratio(ContextPtr ctx, Polynomial num, Polynomial den) {
  if (num.nvars() != ctx->nvars() || den.nvars() != ctx->nvars()) {
    throw Error("polynomial does not match the context's variables");
  }
  normalize(num, den);
  return {std::move(ctx), std::move(num), std::move(den)};
}

bool PhaseFunction::is_momentum_free() const {
  for (std::size_t v = 0; v < ctx_->nvars(); ++v) {
    if (ctx_->is_p(v) && depends_on(v)) return false;
  }
  return true;
}

bool PhaseFunction::is_parameter_only() const {
  for (std::size_t v = 0; v < ctx_->phase_vars(); ++v) {
    if (depends_on(v)) return false;
  }
  return true;
}

PhaseFunction& PhaseFunction::operator+=(const PhaseFunction& o) {
  require_same_context(ctx_, o.ctx_);
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize(num_, den_);
    return *this;
  }
  const Polynomial g = gcd(den_, o.den_);
  const Polynomial a = exact_divide(o.den_, g);
  const Polynomial b = exact_divide(den_, g);
  num_ = num_ * a + o.num_ * b;
  den_ = den_ * a;
  normalize(num_, den_);
  return *this;
}

PhaseFunction& PhaseFunction::operator-=(const PhaseFunction& o) { return *this += -o; }

PhaseFunction& PhaseFunction::operator*=(const PhaseFunction& o) {
  require_same_context(ctx_, o.ctx_);
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // Cross-cancel; inputs are already reduced.
  const Polynomial g1 = gcd(num_, o.den_);
  const Polynomial g2 = gcd(o.num_, den_);
  num_ = exact_divide(num_, g1) * exact_divide(o.num_, g2);
  den_ = exact_divide(den_, g2) * exact_divide(o.den_, g1);
  normalize(num_, den_, true);
  return *this;
}

PhaseFunction& PhaseFunction::operator/=(const PhaseFunction& o) {
  require_same_context(ctx_, o.ctx_);
  if (o.is_zero()) throw DivisionByZeroError("division by the zero function");
  PhaseFunction inv(ctx_, o.den_, o.num_);
  normalize(inv.num_, inv.den_);
  return *this *= inv;
}

PhaseFunction PhaseFunction::operator-() const { return {ctx_, -num_, den_}; }

PhaseFunction PhaseFunction::scaled(const GaussRational& c) const {
  if (c.is_zero()) return PhaseFunction(ctx_);
  return {ctx_, num_.scaled(c), den_};
}

PhaseFunction PhaseFunction::pow(unsigned k) const { return {ctx_, num_.pow(k), den_.pow(k)}; }

bool operator==(const PhaseFunction& a, const PhaseFunction& b) {
  require_same_context(a.ctx_, b.ctx_);
  return a.num_ == b.num_ && a.den_ == b.den_;
}

PhaseFunction differentiate(const PhaseFunction& f, std::size_t var) {
  const auto& ctx = *f.context();
  if (var >= ctx.nvars()) throw VariableError("unknown variable index " + std::to_string(var));
  if (!ctx.is_phase(var)) {
    throw VariableError("cannot differentiate in parameter '" + ctx.name(var) + "'");
  }
  const Polynomial& n = f.numerator();
  const Polynomial& d = f.denominator();
  if (d.is_one()) return PhaseFunction::ratio(f.context(), n.derivative(var), d);
  if (!d.depends_on(var)) return PhaseFunction::ratio(f.context(), n.derivative(var), d);
  return PhaseFunction::ratio(f.context(), n.derivative(var) * d - n * d.derivative(var), d * d);
}

namespace {

/// Numerator/denominator pair of P(bindings) over a shared denominator.
std::pair<Polynomial, Polynomial> substitute_polynomial(const Polynomial& p, const PhaseContext& ctx,
                                                        const Bindings& bindings) {
  const std::size_t nv = ctx.nvars();
  std::map<std::size_t, unsigned> max_power;
  for (const auto& [var, value] : bindings) {
    const unsigned d = p.degree_in(var);
    if (d > 0) max_power[var] = d;
  }
  // Cache of powers n_v^k and d_v^k.
  std::map<std::pair<std::size_t, unsigned>, Polynomial> num_pow;
  std::map<std::pair<std::size_t, unsigned>, Polynomial> den_pow;
  auto power = [&](std::map<std::pair<std::size_t, unsigned>, Polynomial>& cache, const Polynomial& base,
                   std::size_t var, unsigned k) -> const Polynomial& {
    auto key = std::make_pair(var, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, base.pow(k)).first;
    return it->second;
  };

  Polynomial common_den = Polynomial::constant(nv, 1);
  for (const auto& [var, d] : max_power) {
    const auto& b = bindings.at(var);
    if (!b.denominator().is_one()) common_den = common_den * power(den_pow, b.denominator(), var, d);
  }
  std::vector<Polynomial::Term> pieces;
  Polynomial result(nv);
  for (const auto& [e, c] : p.terms()) {
    Exponents free = e;
    Polynomial term = Polynomial::constant(nv, 1);
    for (const auto& [var, d] : max_power) {
      free[var] = 0;
      const auto& b = bindings.at(var);
      if (e[var] > 0) term = term * power(num_pow, b.numerator(), var, e[var]);
      if (!b.denominator().is_one() && d > e[var]) {
        term = term * power(den_pow, b.denominator(), var, d - e[var]);
      }
    }
    result += term.times_monomial(free, c);
  }
  return {std::move(result), std::move(common_den)};
}

std::string describe(const Bindings& bindings, const PhaseContext& ctx) {
  std::string out;
  for (const auto& [var, value] : bindings) {
    if (!out.empty()) out += ", ";
    out += ctx.name(var) + " -> " + format(value);
  }
  return out;
}

}  // namespace

PhaseFunction substitute(const PhaseFunction& f, const Bindings& bindings) {
  const auto& ctx = *f.context();
  for (const auto& [var, value] : bindings) {
    if (var >= ctx.nvars()) throw VariableError("unknown variable index in bindings");
    require_same_context(f.context(), value.context());
  }
  auto [nn, nd] = substitute_polynomial(f.numerator(), ctx, bindings);
  auto [dn, dd] = substitute_polynomial(f.denominator(), ctx, bindings);
  if (dn.is_zero()) {
    throw PoleError("denominator vanishes after substitution " + describe(bindings, ctx));
  }
  return PhaseFunction::ratio(f.context(), nn * dd, nd * dn);
}

bool is_identically_zero(const PhaseFunction& f) { return f.numerator().is_zero(); }

namespace {

GaussRational evaluate_polynomial(const Polynomial& p, const PhaseContext& ctx, const Point& point) {
  GaussRational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    GaussRational t = c;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      auto it = point.find(v);
      if (it == point.end()) throw VariableError("no value given for '" + ctx.name(v) + "'");
      for (unsigned k = 0; k < e[v]; ++k) t *= it->second;
    }
    sum += t;
  }
  return sum;
}

}  // namespace

GaussRational evaluate(const PhaseFunction& f, const Point& point) {
  const auto& ctx = *f.context();
  const GaussRational d = evaluate_polynomial(f.denominator(), ctx, point);
  if (d.is_zero()) throw PoleError("pole at the evaluation point");
  return evaluate_polynomial(f.numerator(), ctx, point) / d;
}

}  // namespace ttq
