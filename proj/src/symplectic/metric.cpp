#include <optional>

#include "ttquant/errors.hpp"
#include "ttquant/parser.hpp"
#include "ttquant/symplectic.hpp"

namespace ttq {

namespace {

std::size_t expected_dimension(const PhaseContext& ctx, Metric::Space space) {
  return space == Metric::Space::Phase ? ctx.phase_vars() : static_cast<std::size_t>(ctx.n());
}

/// Row echelon reduction; returns the determinant and optionally the inverse.
PhaseFunction eliminate(Metric::Matrix a, Metric::Matrix* inverse_out) {
  const std::size_t d = a.size();
  const auto& ctx = a.at(0).at(0).context();
  Metric::Matrix inv(d, std::vector<PhaseFunction>(d, PhaseFunction(ctx)));
  for (std::size_t k = 0; k < d; ++k) inv[k][k] = PhaseFunction::constant(ctx, 1);
  PhaseFunction det = PhaseFunction::constant(ctx, 1);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col].is_zero()) ++pivot;
    if (pivot == d) return PhaseFunction(ctx);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(inv[pivot], inv[col]);
      det = -det;
    }
    const PhaseFunction p = a[col][col];
    det *= p;
    for (std::size_t j = 0; j < d; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const PhaseFunction factor = a[r][col];
      for (std::size_t j = 0; j < d; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  if (inverse_out) *inverse_out = std::move(inv);
  return det;
}

std::optional<PhaseFunction> sqrt_abs(const PhaseFunction& f) {
  const auto& ctx = f.context();
  auto den = exact_sqrt(f.denominator());
  if (!den) return std::nullopt;
  auto num = exact_sqrt(f.numerator());
  if (!num) num = exact_sqrt(-f.numerator());
  if (!num) return std::nullopt;
  return PhaseFunction::ratio(ctx, *num, *den);
}

}  // namespace

Metric Metric::flat(const ContextPtr& ctx, Space space) {
  const std::size_t d = expected_dimension(*ctx, space);
  Matrix g(d, std::vector<PhaseFunction>(d, PhaseFunction(ctx)));
  for (std::size_t k = 0; k < d; ++k) g[k][k] = PhaseFunction::constant(ctx, 1);
  return Metric(ctx, space, std::move(g), true);
}

Metric Metric::from_components(const ContextPtr& ctx, Space space, Matrix g) {
  const std::size_t d = expected_dimension(*ctx, space);
  if (g.size() != d) throw DomainError("metric has " + std::to_string(g.size()) + " rows, expected " + std::to_string(d));
  bool identity = true;
  for (std::size_t r = 0; r < d; ++r) {
    if (g[r].size() != d) throw DomainError("metric must be square");
    for (std::size_t c = 0; c < d; ++c) require_same_context(ctx, g[r][c].context());
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (!(g[r][c] == g[c][r])) throw DomainError("metric must be symmetric");
      const bool expected = r == c ? g[r][c] == PhaseFunction::constant(ctx, 1) : g[r][c].is_zero();
      identity = identity && expected;
    }
  }
  if (determinant(g).is_zero()) throw SingularError("metric determinant vanishes identically");
  return Metric(ctx, space, std::move(g), identity);
}

Metric metric_from_json(const nlohmann::json& j, const ContextPtr& ctx) {
  if (!j.is_array()) throw DomainError("metric JSON must be an array of rows");
  Metric::Matrix g;
  for (const auto& row : j) {
    if (!row.is_array()) throw DomainError("metric JSON rows must be arrays");
    std::vector<PhaseFunction> r;
    for (const auto& entry : row) {
      r.push_back(entry.is_string() ? parse(entry.get<std::string>(), ctx) : parse(entry.dump(), ctx));
    }
    g.push_back(std::move(r));
  }
  const auto space = g.size() == ctx->phase_vars() ? Metric::Space::Phase : Metric::Space::Base;
  return Metric::from_components(ctx, space, std::move(g));
}

PhaseFunction determinant(const Metric::Matrix& m) { return eliminate(m, nullptr); }

Metric::Matrix inverse(const Metric::Matrix& m) {
  Metric::Matrix inv;
  if (eliminate(m, &inv).is_zero()) throw SingularError("matrix is singular");
  return inv;
}

DiffOperator laplace_beltrami(const Metric& g) {
  const auto& ctx = g.context();
  const std::size_t d = g.dimension();
  DiffOperator out(ctx);
  // Coordinates are the first d variables: q's, then p's for phase metrics.
  auto second = [&](std::size_t mu, std::size_t nu) {
    MultiIndex index(ctx->phase_vars(), 0);
    ++index[mu];
    ++index[nu];
    return index;
  };
  if (g.is_flat_identity()) {
    for (std::size_t mu = 0; mu < d; ++mu) out.add_term(second(mu, mu), PhaseFunction::constant(ctx, 1));
    return out;
  }
  const auto ginv = inverse(g.components());
  const auto root = sqrt_abs(determinant(g.components()));
  if (!root) throw DomainError("sqrt|det g| is not a rational function");
  for (std::size_t mu = 0; mu < d; ++mu) {
    for (std::size_t nu = 0; nu < d; ++nu) out.add_term(second(mu, nu), ginv[mu][nu]);
  }
  for (std::size_t nu = 0; nu < d; ++nu) {
    PhaseFunction drift(ctx);
    for (std::size_t mu = 0; mu < d; ++mu) drift += differentiate(*root * ginv[mu][nu], mu);
    MultiIndex index(ctx->phase_vars(), 0);
    index[nu] = 1;
    out.add_term(index, drift / *root);
  }
  return out;
}

}  // namespace ttq
