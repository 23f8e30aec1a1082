#include "ttquant/quantize.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ttquant/errors.hpp"

namespace ttq {

MapKind map_kind_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "c") return MapKind::Canonical;
  if (lower == "ks") return MapKind::KostantSouriau;
  if (lower == "tt1") return MapKind::Tuned1;
  if (lower == "tt2") return MapKind::Tuned2;
  throw Error("unknown quantization map '" + std::string(name) + "' (expected c, ks, tt1, tt2)");
}

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Canonical:
      return "c";
    case MapKind::KostantSouriau:
      return "ks";
    case MapKind::Tuned1:
      return "tt1";
    case MapKind::Tuned2:
      return "tt2";
  }
  return "?";
}

QuantizationConfig QuantizationConfig::for_map(MapKind kind, const ContextPtr& ctx) {
  QuantizationConfig config;
  config.map = kind;
  if (kind == MapKind::Tuned2) config.metric = Metric::flat(ctx);
  return config;
}

int tuning_indicator(const PhaseFunction& g) { return is_identically_zero(g) ? 0 : 1; }

namespace {

int momentum_degree(const Exponents& e, const PhaseContext& ctx) {
  int d = 0;
  for (std::size_t v = ctx.n(); v < ctx.phase_vars(); ++v) d += static_cast<int>(e[v]);
  return d;
}

}  // namespace

TuningReport analyze_tuning(const PhaseFunction& f) {
  const auto& ctx = *f.context();
  const VectorField euler = tautological_vf(f.context());
  const PhaseFunction x1 = euler(f);
  const PhaseFunction x2 = euler(x1);
  TuningReport report;
  report.first_order = tuning_indicator(x1);
  report.tt2_linear = tuning_indicator(x1.scaled(2) - x2);
  report.tt2_quadratic = tuning_indicator(x2 - x1);

  std::set<int> den_degrees;
  for (const auto& [e, c] : f.denominator().terms()) den_degrees.insert(momentum_degree(e, ctx));
  std::set<int> degrees;
  for (const auto& [e, c] : f.numerator().terms()) {
    degrees.insert(momentum_degree(e, ctx) - *den_degrees.begin());
  }
  report.momentum_degrees.assign(degrees.begin(), degrees.end());
  // The momentum-free part passes through every map untouched, so only
  // positive degrees can collide.
  const auto positive = std::count_if(degrees.begin(), degrees.end(), [](int d) { return d != 0; });
  report.mixed = positive > 1 || den_degrees.size() > 1;
  return report;
}

namespace {

PhaseFunction i_hbar(const ContextPtr& ctx, const std::string& hbar_symbol) {
  return PhaseFunction::param(ctx, hbar_symbol).scaled(GaussRational::imaginary_unit());
}

/// i hbar X_f - X_theta f, the operator both tuned maps switch on and off.
DiffOperator prequantum_correction(const PhaseFunction& f, const PhaseFunction& euler_f,
                                   const std::string& hbar_symbol) {
  const auto& ctx = f.context();
  return i_hbar(ctx, hbar_symbol) * hamiltonian_vf(f).as_operator() - DiffOperator::from_function(euler_f);
}

}  // namespace

DiffOperator q_ks(const PhaseFunction& f, const std::string& hbar_symbol) {
  const PhaseFunction euler_f = tautological_vf(f.context())(f);
  return DiffOperator::from_function(f) + prequantum_correction(f, euler_f, hbar_symbol);
}

DiffOperator q_tt1(const PhaseFunction& f, const std::string& hbar_symbol) {
  const PhaseFunction euler_f = tautological_vf(f.context())(f);
  DiffOperator out = DiffOperator::from_function(f);
  if (tuning_indicator(euler_f) == 1) out += prequantum_correction(f, euler_f, hbar_symbol);
  return out;
}

DiffOperator q_tt2(const PhaseFunction& f, const QuantizationConfig& config) {
  const auto& ctx = f.context();
  const VectorField euler = tautological_vf(ctx);
  const PhaseFunction x1 = euler(f);
  const PhaseFunction x2 = euler(x1);
  DiffOperator out = DiffOperator::from_function(f);
  if (tuning_indicator(x1.scaled(2) - x2) == 1) out += prequantum_correction(f, x1, config.hbar_symbol);
  if (tuning_indicator(x2 - x1) == 1) {
    if (!config.metric) throw DomainError("the second tuned map needs a metric");
    const PhaseFunction hbar = PhaseFunction::param(ctx, config.hbar_symbol);
    const PhaseFunction mass = PhaseFunction::param(ctx, config.mass_symbol);
    const PhaseFunction kinetic = -(hbar * hbar) / mass;
    DiffOperator tuned = kinetic * laplace_beltrami(*config.metric) - DiffOperator::from_function(x2 - x1);
    out += PhaseFunction::constant(ctx, GaussRational(mpq_class(1, 2))) * tuned;
  }
  return out;
}

DiffOperator q_c(const PhaseFunction& f, const std::string& hbar_symbol) {
  const auto& ctx = f.context();
  for (int i = 0; i < ctx->n(); ++i) {
    if (f.denominator().depends_on(ctx->p(i))) {
      throw DomainError("canonical quantization needs a polynomial in the momenta");
    }
  }
  const GaussRational minus_i_hbar_scalar(0, -1);
  const PhaseFunction hbar = PhaseFunction::param(ctx, hbar_symbol);
  DiffOperator out(ctx);
  for (const auto& [e, c] : f.numerator().terms()) {
    Exponents rest = e;
    MultiIndex index(ctx->phase_vars(), 0);
    unsigned k = 0;
    for (int i = 0; i < ctx->n(); ++i) {
      index[ctx->q(i)] = e[ctx->p(i)];
      k += e[ctx->p(i)];
      rest[ctx->p(i)] = 0;
    }
    GaussRational scalar = c;
    for (unsigned j = 0; j < k; ++j) scalar *= minus_i_hbar_scalar;
    PhaseFunction coeff = PhaseFunction::ratio(ctx, Polynomial::monomial(rest, scalar), f.denominator());
    out.add_term(index, coeff * hbar.pow(k));
  }
  return out;
}

DiffOperator quantize(const PhaseFunction& f, const QuantizationConfig& config) {
  switch (config.map) {
    case MapKind::Canonical:
      return q_c(f, config.hbar_symbol);
    case MapKind::KostantSouriau:
      return q_ks(f, config.hbar_symbol);
    case MapKind::Tuned1:
      return q_tt1(f, config.hbar_symbol);
    case MapKind::Tuned2:
      return q_tt2(f, config);
  }
  throw Error("unknown quantization map");
}

std::optional<PhaseFunction> builtin_function(std::string_view name, const ContextPtr& ctx) {
  auto q = [&](int i) { return PhaseFunction::q(ctx, i); };
  auto p = [&](int i) { return PhaseFunction::p(ctx, i); };
  auto angular = [&](int a, int b) -> std::optional<PhaseFunction> {
    if (ctx->n() < 3) throw DomainError("angular momentum " + std::string(name) + " needs n >= 3");
    return q(a) * p(b) - q(b) * p(a);
  };
  if (name == "L1") return angular(1, 2);
  if (name == "L2") return angular(2, 0);
  if (name == "L3") return angular(0, 1);
  if (name == "H_FP" || name == "H_SHO") {
    const PhaseFunction m = PhaseFunction::param(ctx, "m");
    PhaseFunction kinetic(ctx), potential(ctx);
    for (int i = 0; i < ctx->n(); ++i) {
      kinetic += p(i) * p(i);
      potential += q(i) * q(i);
    }
    PhaseFunction h = kinetic / m.scaled(2);
    if (name == "H_SHO") {
      const PhaseFunction omega = PhaseFunction::param(ctx, "omega");
      h += (m * omega * omega * potential).scaled(GaussRational(mpq_class(1, 2)));
    }
    return h;
  }
  return std::nullopt;
}

Resolver builtin_resolver(const ContextPtr& ctx) {
  return [ctx](std::string_view name) { return builtin_function(name, ctx); };
}

}  // namespace ttq
