#include "ttquant/symplectic.hpp"

#include "ttquant/errors.hpp"

namespace ttq {

VectorField::VectorField(DiffOperator op) : op_(std::move(op)) {
  for (const auto& [index, c] : op_.terms()) {
    if (order_of(index) != 1) throw DomainError("a vector field has first-order terms only");
  }
}

VectorField VectorField::from_components(const ContextPtr& ctx, const std::vector<PhaseFunction>& q_components,
                                         const std::vector<PhaseFunction>& p_components) {
  const auto n = static_cast<std::size_t>(ctx->n());
  if (q_components.size() != n || p_components.size() != n) {
    throw DomainError("vector field needs n position and n momentum components");
  }
  DiffOperator op(ctx);
  for (int i = 0; i < ctx->n(); ++i) {
    op += q_components[i] * DiffOperator::derivative(ctx, ctx->q(i));
    op += p_components[i] * DiffOperator::derivative(ctx, ctx->p(i));
  }
  return VectorField(std::move(op));
}

PhaseFunction VectorField::q_component(int i) const {
  MultiIndex index(context()->phase_vars(), 0);
  index[context()->q(i)] = 1;
  return op_.coefficient(index);
}

PhaseFunction VectorField::p_component(int i) const {
  MultiIndex index(context()->phase_vars(), 0);
  index[context()->p(i)] = 1;
  return op_.coefficient(index);
}

VectorField hamiltonian_vf(const PhaseFunction& f) {
  const auto& ctx = f.context();
  std::vector<PhaseFunction> qc, pc;
  for (int i = 0; i < ctx->n(); ++i) {
    qc.push_back(-differentiate(f, ctx->p(i)));
    pc.push_back(differentiate(f, ctx->q(i)));
  }
  return VectorField::from_components(ctx, qc, pc);
}

PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g) {
  require_same_context(f.context(), g.context());
  const auto& ctx = f.context();
  PhaseFunction out(ctx);
  for (int i = 0; i < ctx->n(); ++i) {
    out += differentiate(f, ctx->q(i)) * differentiate(g, ctx->p(i));
    out -= differentiate(f, ctx->p(i)) * differentiate(g, ctx->q(i));
  }
  return out;
}

VectorField tautological_vf(const ContextPtr& ctx) {
  std::vector<PhaseFunction> qc, pc;
  for (int i = 0; i < ctx->n(); ++i) {
    qc.emplace_back(ctx);
    pc.push_back(PhaseFunction::p(ctx, i));
  }
  return VectorField::from_components(ctx, qc, pc);
}

PhaseFunction theta_contract(const VectorField& x) {
  const auto& ctx = x.context();
  PhaseFunction out(ctx);
  for (int i = 0; i < ctx->n(); ++i) out += PhaseFunction::p(ctx, i) * x.q_component(i);
  return out;
}

}  // namespace ttq
