#pragma once

#include <string>
#include <vector>

#include "ttquant/diffop.hpp"

namespace ttq {

/// Invertible rational point transformation Q^i = Q^i(q) of the base.
///
/// Both directions are written in the context's position slots: forward()
/// holds Q^i as functions of q1..qn, inverse() holds q^i as functions of the
/// new coordinates, which reuse the same slots.
class PointTransformation {
 public:
  /// Verifies both compositions are the identity (DomainError otherwise)
  /// and that the Jacobian determinant is not identically zero
  /// (SingularError).
  static PointTransformation make(const ContextPtr& ctx, std::vector<PhaseFunction> forward,
                                  std::vector<PhaseFunction> inverse, std::string name = "custom");

  static PointTransformation identity(const ContextPtr& ctx);
  /// Rotation of the (q1, q2) plane with cos = (1 - t^2)/(1 + t^2),
  /// sin = 2t/(1 + t^2); t = 1/2 gives the 3-4-5 rotation.
  static PointTransformation rotate2d(const ContextPtr& ctx, const mpq_class& t = mpq_class(1, 2));
  /// Q = c q.
  static PointTransformation scale(const ContextPtr& ctx, const mpq_class& c = 2);
  /// Q1 = q1, Q2 = q2 + q1^2.
  static PointTransformation shear(const ContextPtr& ctx);

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<PhaseFunction>& forward() const noexcept { return forward_; }
  const std::vector<PhaseFunction>& inverse() const noexcept { return inverse_; }
  const std::string& name() const noexcept { return name_; }

 private:
  PointTransformation(ContextPtr ctx, std::vector<PhaseFunction> forward, std::vector<PhaseFunction> inverse,
                      std::string name)
      : ctx_(std::move(ctx)), forward_(std::move(forward)), inverse_(std::move(inverse)), name_(std::move(name)) {}

  ContextPtr ctx_;
  std::vector<PhaseFunction> forward_;
  std::vector<PhaseFunction> inverse_;
  std::string name_;
};

/// "identity", "shear", "scale", "scale(3)", "rotate2d", "rotate2d(1/3)".
PointTransformation transformation_by_name(const std::string& text, const ContextPtr& ctx);

/// Extension of a point transformation to T*Q preserving p_i dq^i:
/// P_i = sum_j (dq^j/dQ^i) p_j.
class CotangentLift {
 public:
  const PointTransformation& base() const noexcept { return base_; }
  const ContextPtr& context() const noexcept { return base_.context(); }
  /// P_i in terms of the old (q, p).
  const std::vector<PhaseFunction>& new_momenta() const noexcept { return new_momenta_; }
  /// p_j in terms of the new (Q, P).
  const std::vector<PhaseFunction>& old_momenta() const noexcept { return old_momenta_; }
  /// Old variables expressed in the new chart.
  const Bindings& to_new_chart() const noexcept { return to_new_; }
  /// New variables expressed in the old chart.
  const Bindings& to_old_chart() const noexcept { return to_old_; }
  /// d/dx for each old phase variable x, written in the new chart.
  const std::vector<DiffOperator>& old_derivatives() const noexcept { return old_derivatives_; }

  /// Exact check of sum_i P_i dQ^i/dq^k = p_k for every k.
  bool preserves_tautological_form() const;

 private:
  friend CotangentLift cotangent_lift(const PointTransformation& t);
  explicit CotangentLift(PointTransformation base) : base_(std::move(base)) {}

  PointTransformation base_;
  std::vector<PhaseFunction> new_momenta_;
  std::vector<PhaseFunction> old_momenta_;
  Bindings to_new_;
  Bindings to_old_;
  std::vector<DiffOperator> old_derivatives_;
};

CotangentLift cotangent_lift(const PointTransformation& t);

/// f re-expressed in the new chart.
PhaseFunction pushforward_function(const PhaseFunction& f, const CotangentLift& lift);
/// Inverse of pushforward_function.
PhaseFunction pullback_function(const PhaseFunction& f, const CotangentLift& lift);
/// The operator conjugated into the new chart by the chain rule, normal
/// ordered. Commutes with pushforward_function under apply().
DiffOperator pushforward_operator(const DiffOperator& a, const CotangentLift& lift);

}  // namespace ttq
