#include "ttquant/coords.hpp"

#include <functional>
#include <map>

#include "ttquant/errors.hpp"
#include "ttquant/symplectic.hpp"

namespace ttq {

namespace {

Bindings position_bindings(const ContextPtr& ctx, const std::vector<PhaseFunction>& values) {
  Bindings b;
  for (int i = 0; i < ctx->n(); ++i) b.emplace(ctx->q(i), values[i]);
  return b;
}

std::vector<PhaseFunction> positions(const ContextPtr& ctx) {
  std::vector<PhaseFunction> out;
  for (int i = 0; i < ctx->n(); ++i) out.push_back(PhaseFunction::q(ctx, i));
  return out;
}

void require_two_dimensions(const ContextPtr& ctx, const std::string& name) {
  if (ctx->n() < 2) throw DomainError(name + " needs n >= 2");
}

}  // namespace

PointTransformation PointTransformation::make(const ContextPtr& ctx, std::vector<PhaseFunction> forward,
                                              std::vector<PhaseFunction> inverse, std::string name) {
  const auto n = static_cast<std::size_t>(ctx->n());
  if (forward.size() != n || inverse.size() != n) throw DomainError("transformation needs n component functions");
  for (const auto* side : {&forward, &inverse}) {
    for (const auto& f : *side) {
      require_same_context(ctx, f.context());
      if (!f.is_momentum_free()) throw DomainError("point transformations may not depend on momenta");
    }
  }
  const Bindings by_inverse = position_bindings(ctx, inverse);
  const Bindings by_forward = position_bindings(ctx, forward);
  for (int i = 0; i < ctx->n(); ++i) {
    if (!(substitute(forward[i], by_inverse) == PhaseFunction::q(ctx, i)) ||
        !(substitute(inverse[i], by_forward) == PhaseFunction::q(ctx, i))) {
      throw DomainError("inverse does not match forward map for '" + name + "'");
    }
  }
  Metric::Matrix jacobian(n, std::vector<PhaseFunction>(n, PhaseFunction(ctx)));
  for (int i = 0; i < ctx->n(); ++i) {
    for (int k = 0; k < ctx->n(); ++k) jacobian[i][k] = differentiate(forward[i], ctx->q(k));
  }
  if (determinant(jacobian).is_zero()) throw SingularError("Jacobian of '" + name + "' is singular");
  return PointTransformation(ctx, std::move(forward), std::move(inverse), std::move(name));
}

PointTransformation PointTransformation::identity(const ContextPtr& ctx) {
  return make(ctx, positions(ctx), positions(ctx), "identity");
}

PointTransformation PointTransformation::rotate2d(const ContextPtr& ctx, const mpq_class& t) {
  require_two_dimensions(ctx, "rotate2d");
  const mpq_class denom = 1 + t * t;
  const GaussRational c{mpq_class((1 - t * t) / denom)};
  const GaussRational s{mpq_class(2 * t / denom)};
  auto fwd = positions(ctx);
  auto inv = positions(ctx);
  const auto q1 = PhaseFunction::q(ctx, 0);
  const auto q2 = PhaseFunction::q(ctx, 1);
  fwd[0] = q1.scaled(c) - q2.scaled(s);
  fwd[1] = q1.scaled(s) + q2.scaled(c);
  inv[0] = q1.scaled(c) + q2.scaled(s);
  inv[1] = q2.scaled(c) - q1.scaled(s);
  return make(ctx, std::move(fwd), std::move(inv), "rotate2d(" + t.get_str() + ")");
}

PointTransformation PointTransformation::scale(const ContextPtr& ctx, const mpq_class& c) {
  if (sgn(c) == 0) throw SingularError("scale factor must be nonzero");
  auto fwd = positions(ctx);
  auto inv = positions(ctx);
  for (auto& f : fwd) f = f.scaled(GaussRational(c));
  for (auto& f : inv) f = f.scaled(GaussRational(mpq_class(1 / c)));
  return make(ctx, std::move(fwd), std::move(inv), "scale(" + c.get_str() + ")");
}

PointTransformation PointTransformation::shear(const ContextPtr& ctx) {
  require_two_dimensions(ctx, "shear");
  auto fwd = positions(ctx);
  auto inv = positions(ctx);
  const auto q1 = PhaseFunction::q(ctx, 0);
  fwd[1] = fwd[1] + q1 * q1;
  inv[1] = inv[1] - q1 * q1;
  return make(ctx, std::move(fwd), std::move(inv), "shear");
}

PointTransformation transformation_by_name(const std::string& text, const ContextPtr& ctx) {
  std::string name = text;
  std::string arg;
  if (const auto open = text.find('('); open != std::string::npos) {
    if (text.back() != ')') throw Error("malformed transformation '" + text + "'");
    name = text.substr(0, open);
    arg = text.substr(open + 1, text.size() - open - 2);
  }
  if (name == "identity" && arg.empty()) return PointTransformation::identity(ctx);
  if (name == "shear" && arg.empty()) return PointTransformation::shear(ctx);
  if (name == "scale") return arg.empty() ? PointTransformation::scale(ctx) : PointTransformation::scale(ctx, parse_rational(arg));
  if (name == "rotate2d") {
    return arg.empty() ? PointTransformation::rotate2d(ctx) : PointTransformation::rotate2d(ctx, parse_rational(arg));
  }
  throw Error("unknown transformation '" + text + "' (expected identity, scale, shear, rotate2d)");
}

CotangentLift cotangent_lift(const PointTransformation& t) {
  const auto& ctx = t.context();
  const int n = ctx->n();
  CotangentLift lift(t);
  const Bindings by_forward = position_bindings(ctx, t.forward());
  const Bindings by_inverse = position_bindings(ctx, t.inverse());

  for (int i = 0; i < n; ++i) {
    PhaseFunction big_p(ctx);
    for (int j = 0; j < n; ++j) {
      const PhaseFunction dq_dQ = substitute(differentiate(t.inverse()[j], ctx->q(i)), by_forward);
      big_p += dq_dQ * PhaseFunction::p(ctx, j);
    }
    lift.new_momenta_.push_back(big_p);
  }
  for (int j = 0; j < n; ++j) {
    PhaseFunction small_p(ctx);
    for (int i = 0; i < n; ++i) {
      const PhaseFunction dQ_dq = substitute(differentiate(t.forward()[i], ctx->q(j)), by_inverse);
      small_p += dQ_dq * PhaseFunction::p(ctx, i);
    }
    lift.old_momenta_.push_back(small_p);
  }
  for (int i = 0; i < n; ++i) {
    lift.to_new_.emplace(ctx->q(i), t.inverse()[i]);
    lift.to_new_.emplace(ctx->p(i), lift.old_momenta_[i]);
    lift.to_old_.emplace(ctx->q(i), t.forward()[i]);
    lift.to_old_.emplace(ctx->p(i), lift.new_momenta_[i]);
  }
  if (!lift.preserves_tautological_form()) throw Error("cotangent lift does not preserve the tautological form");

  // Chain rule for each old coordinate derivative.
  for (std::size_t var = 0; var < ctx->phase_vars(); ++var) {
    DiffOperator d(ctx);
    for (int i = 0; i < n; ++i) {
      const PhaseFunction dQ = differentiate(t.forward()[i], var);
      const PhaseFunction dP = differentiate(lift.new_momenta_[i], var);
      if (!dQ.is_zero()) d += substitute(dQ, lift.to_new_) * DiffOperator::derivative(ctx, ctx->q(i));
      if (!dP.is_zero()) d += substitute(dP, lift.to_new_) * DiffOperator::derivative(ctx, ctx->p(i));
    }
    lift.old_derivatives_.push_back(std::move(d));
  }
  return lift;
}

bool CotangentLift::preserves_tautological_form() const {
  const auto& ctx = context();
  for (int k = 0; k < ctx->n(); ++k) {
    PhaseFunction sum(ctx);
    for (int i = 0; i < ctx->n(); ++i) sum += new_momenta_[i] * differentiate(base_.forward()[i], ctx->q(k));
    if (!(sum == PhaseFunction::p(ctx, k))) return false;
  }
  return true;
}

PhaseFunction pushforward_function(const PhaseFunction& f, const CotangentLift& lift) {
  return substitute(f, lift.to_new_chart());
}

PhaseFunction pullback_function(const PhaseFunction& f, const CotangentLift& lift) {
  return substitute(f, lift.to_old_chart());
}

DiffOperator pushforward_operator(const DiffOperator& a, const CotangentLift& lift) {
  require_same_context(a.context(), lift.context());
  const auto& ctx = a.context();
  const auto& d = lift.old_derivatives();
  std::map<std::pair<std::size_t, unsigned>, DiffOperator> powers;
  std::function<const DiffOperator&(std::size_t, unsigned)> power = [&](std::size_t var, unsigned k) -> const DiffOperator& {
    auto key = std::make_pair(var, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    DiffOperator value = k == 1 ? d[var] : compose(d[var], power(var, k - 1));
    return powers.emplace(key, std::move(value)).first->second;
  };
  DiffOperator out(ctx);
  for (const auto& [index, c] : a.terms()) {
    DiffOperator term = DiffOperator::identity(ctx);
    for (std::size_t var = 0; var < index.size(); ++var) {
      if (index[var] > 0) term = compose(term, power(var, index[var]));
    }
    out += pushforward_function(c, lift) * term;
  }
  return out;
}

}  // namespace ttq
