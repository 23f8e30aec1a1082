#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttquant/parser.hpp"
#include "ttquant/symplectic.hpp"

namespace ttq {

enum class MapKind { Canonical, KostantSouriau, Tuned1, Tuned2 };

/// "c", "ks", "tt1", "tt2" (case-insensitive); throws Error otherwise.
MapKind map_kind_from_string(std::string_view name);
std::string to_string(MapKind kind);

struct QuantizationConfig {
  MapKind map = MapKind::KostantSouriau;
  /// Required by the second tuned map.
  std::optional<Metric> metric;
  std::string mass_symbol = "m";
  std::string hbar_symbol = "hbar";

  /// Config for `kind`, with the flat phase-space metric for Tuned2.
  static QuantizationConfig for_map(MapKind kind, const ContextPtr& ctx);
};

/// Global reading of lim_{eps->0} g / (g + eps): 0 if g vanishes
/// identically, 1 otherwise.
int tuning_indicator(const PhaseFunction& g);

/// Indicator values the tuned maps will use for f, plus a flag for inputs
/// mixing two or more positive momentum degrees (p^2 + p, say). Those switch
/// on several tuned terms at once, each acting on the whole of f.
struct TuningReport {
  int first_order = 0;   // I[X_theta f] in the first tuned map
  int tt2_linear = 0;    // I[(2 X_theta - X_theta^2) f]
  int tt2_quadratic = 0; // I[(X_theta^2 - X_theta) f]
  std::vector<int> momentum_degrees;
  bool mixed = false;
};
TuningReport analyze_tuning(const PhaseFunction& f);

/// f - p_i df/dp_i + i hbar (df/dq^i) d/dp_i - i hbar (df/dp_i) d/dq^i.
DiffOperator q_ks(const PhaseFunction& f, const std::string& hbar_symbol = "hbar");

/// f + I[X_theta f] (i hbar X_f - X_theta f).
DiffOperator q_tt1(const PhaseFunction& f, const std::string& hbar_symbol = "hbar");

/// f + I[(2X - X^2) f] (i hbar X_f - X f)
///   + 1/2 I[(X^2 - X) f] (-(hbar^2/m) Laplacian - X^2 f + X f),  X = X_theta.
DiffOperator q_tt2(const PhaseFunction& f, const QuantizationConfig& config);

/// Canonical quantization in the coordinates f is written in: each
/// c(q) p_i1...p_ik becomes c(q) (-i hbar d/dq^i1)...(-i hbar d/dq^ik), with
/// coefficients to the left. Throws DomainError if f is not polynomial in p.
DiffOperator q_c(const PhaseFunction& f, const std::string& hbar_symbol = "hbar");

DiffOperator quantize(const PhaseFunction& f, const QuantizationConfig& config);

/// Named observables: L1, L2, L3 (n >= 3), H_SHO and H_FP (any n).
std::optional<PhaseFunction> builtin_function(std::string_view name, const ContextPtr& ctx);
/// Resolver exposing the built-in names to the parser.
Resolver builtin_resolver(const ContextPtr& ctx);

}  // namespace ttq
