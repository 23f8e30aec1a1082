#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "ttquant/diffop.hpp"

namespace ttq {

/// First-order operator without a multiplication part:
/// sum_i a^i d/dq^i + b_i d/dp_i.
class VectorField {
 public:
  /// Throws DomainError if op has an order-0 term or order above one.
  explicit VectorField(DiffOperator op);
  static VectorField from_components(const ContextPtr& ctx, const std::vector<PhaseFunction>& q_components,
                                     const std::vector<PhaseFunction>& p_components);

  const ContextPtr& context() const noexcept { return op_.context(); }
  const DiffOperator& as_operator() const noexcept { return op_; }
  PhaseFunction q_component(int i) const;
  PhaseFunction p_component(int i) const;

  /// Derivative of f along the field.
  PhaseFunction operator()(const PhaseFunction& f) const { return apply(op_, f); }

  friend bool operator==(const VectorField& a, const VectorField& b) { return a.op_ == b.op_; }

 private:
  DiffOperator op_;
};

/// X_f = -(df/dp_i) d/dq^i + (df/dq^i) d/dp_i.
VectorField hamiltonian_vf(const PhaseFunction& f);

/// {f, g} = sum_i (df/dq^i)(dg/dp_i) - (df/dp_i)(dg/dq^i).
PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g);

/// The fibre Euler field sum_i p_i d/dp_i.
VectorField tautological_vf(const ContextPtr& ctx);

/// Pairing of p_i dq^i with X: sum_i p_i a^i.
PhaseFunction theta_contract(const VectorField& x);

/// Symmetric metric either on all of phase space (2n x 2n, coordinates
/// q1..qn, p1..pn) or on the base Q only (n x n, coordinates q1..qn).
class Metric {
 public:
  enum class Space { Phase, Base };
  using Matrix = std::vector<std::vector<PhaseFunction>>;

  static Metric flat(const ContextPtr& ctx, Space space = Space::Phase);
  /// Throws DomainError on shape or symmetry violations and SingularError
  /// when the determinant vanishes identically.
  static Metric from_components(const ContextPtr& ctx, Space space, Matrix g);

  const ContextPtr& context() const noexcept { return ctx_; }
  Space space() const noexcept { return space_; }
  std::size_t dimension() const noexcept { return g_.size(); }
  const Matrix& components() const noexcept { return g_; }
  bool is_flat_identity() const noexcept { return flat_; }

 private:
  Metric(ContextPtr ctx, Space space, Matrix g, bool flat)
      : ctx_(std::move(ctx)), space_(space), g_(std::move(g)), flat_(flat) {}

  ContextPtr ctx_;
  Space space_;
  Matrix g_;
  bool flat_;
};

/// Square matrix of expression strings; 2n rows give a phase-space metric,
/// n rows a base metric.
Metric metric_from_json(const nlohmann::json& j, const ContextPtr& ctx);

PhaseFunction determinant(const Metric::Matrix& m);
/// Throws SingularError if the matrix is not invertible.
Metric::Matrix inverse(const Metric::Matrix& m);

/// f -> (1/sqrt|g|) d_mu (sqrt|g| g^{mu nu} d_nu f), the analyst's sign
/// (positive on q^2). Throws DomainError when sqrt|g| is not rational.
DiffOperator laplace_beltrami(const Metric& g);

}  // namespace ttq
