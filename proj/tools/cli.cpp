#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "operator_expr.hpp"
#include "ttquant/coords.hpp"
#include "ttquant/errors.hpp"
#include "ttquant/spectral.hpp"

namespace ttq::cli {

namespace {

struct Options {
  std::string map = "ks";
  int n = 1;
  std::string expr;
  std::string a;
  std::string b;
  std::string expect;
  std::string transform = "shear";
  int grid = 2000;
  double domain = 10;
  std::string params = "hbar=1,m=1,omega=1";
  bool json = false;
  bool strict = false;
  std::uint64_t seed = 1;
  int levels = 6;
};

QuantizationConfig config_for(const Options& o, const ContextPtr& ctx) {
  return QuantizationConfig::for_map(map_kind_from_string(o.map), ctx);
}

PhaseFunction observable(const std::string& text, const ContextPtr& ctx) {
  return parse(text, ctx, builtin_resolver(ctx));
}

nlohmann::json tuning_json(const TuningReport& r) {
  return {{"first_order", r.first_order},
          {"tt2_linear", r.tt2_linear},
          {"tt2_quadratic", r.tt2_quadratic},
          {"momentum_degrees", r.momentum_degrees},
          {"mixed", r.mixed}};
}

int cmd_quantize(const Options& o, std::ostream& out) {
  auto ctx = make_context(o.n);
  const auto cfg = config_for(o, ctx);
  const auto f = observable(o.expr, ctx);
  const auto op = quantize(f, cfg);
  const auto tuning = analyze_tuning(f);
  if (o.json) {
    nlohmann::json j = {{"map", to_string(cfg.map)},
                        {"n", o.n},
                        {"input", format(f)},
                        {"operator", format(op)},
                        {"terms", to_json(op)},
                        {"polarized", format(restrict_to_polarized(op))},
                        {"preserves_polarization", preserves_polarization(op)}};
    if (o.strict) j["tuning"] = tuning_json(tuning);
    out << j.dump(2) << "\n";
    return Success;
  }
  out << format(op) << "\n";
  if (o.strict) {
    out << "tuning: I1=" << tuning.first_order << " I2a=" << tuning.tt2_linear << " I2b=" << tuning.tt2_quadratic
        << (tuning.mixed ? " mixed momentum degrees" : " homogeneous") << "\n";
  }
  return Success;
}

int cmd_commute(const Options& o, std::ostream& out) {
  auto ctx = make_context(o.n);
  const auto cfg = config_for(o, ctx);
  const auto a = as_operator(evaluate_operator_expression(o.a, ctx, cfg), cfg);
  const auto b = as_operator(evaluate_operator_expression(o.b, ctx, cfg), cfg);
  const auto c = commutator(a, b);
  bool has_expect = !o.expect.empty();
  bool pass = true;
  DiffOperator expected(ctx);
  if (has_expect) {
    const auto value = evaluate_operator_expression(o.expect, ctx, cfg);
    // An observable on the right-hand side is read as a multiplication
    // operator, so "0" and "i*hbar" mean what they say.
    if (const auto* f = std::get_if<PhaseFunction>(&value)) {
      expected = DiffOperator::from_function(*f);
    } else {
      expected = std::get<DiffOperator>(value);
    }
    pass = c == expected;
  }
  if (o.json) {
    nlohmann::json j = {{"map", to_string(cfg.map)}, {"commutator", format(c)}, {"terms", to_json(c)}};
    if (has_expect) {
      j["expected"] = format(expected);
      j["pass"] = pass;
    }
    out << j.dump(2) << "\n";
  } else if (has_expect) {
    out << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) out << "commutator: " << format(c) << "\nexpected:   " << format(expected) << "\n";
  } else {
    out << format(c) << "\n";
  }
  return pass ? Success : Mismatch;
}

int cmd_transform(const Options& o, std::ostream& out) {
  auto ctx = make_context(o.n);
  const auto cfg = config_for(o, ctx);
  const auto lift = cotangent_lift(transformation_by_name(o.transform, ctx));
  const FormatOptions upper{true};
  const OperatorFormat upper_op{upper, true};

  const auto x = tautological_vf(ctx).as_operator();
  const bool euler = pushforward_operator(x, lift) == x && pushforward_operator(compose(x, x), lift) == compose(x, x);

  nlohmann::json j = {{"transform", lift.base().name()}, {"map", to_string(cfg.map)}, {"tautological_invariant", euler}};
  std::vector<std::string> momenta;
  for (const auto& p : lift.new_momenta()) momenta.push_back(format(p));
  j["new_momenta"] = momenta;

  int code = Success;
  std::string verdict;
  if (!o.expr.empty()) {
    const auto f = observable(o.expr, ctx);
    const auto g = pushforward_function(f, lift);
    const auto moved = pushforward_operator(quantize(f, cfg), lift);
    const auto direct = quantize(g, cfg);
    const bool commutes = moved == direct;
    verdict = commutes ? "commutes" : "differs";
    j["function"] = format(g, upper);
    j["pushforward_of_quantized"] = format(moved, upper_op);
    j["quantized_in_new_chart"] = format(direct, upper_op);
    j["diagram"] = verdict;
    if (!o.expect.empty()) {
      if (o.expect != "commutes" && o.expect != "differs") throw Error("--expect must be 'commutes' or 'differs'");
      j["pass"] = o.expect == verdict;
      if (o.expect != verdict) code = Mismatch;
    }
  }
  if (o.json) {
    out << j.dump(2) << "\n";
    return code;
  }
  out << "transform: " << lift.base().name() << "\n";
  for (std::size_t i = 0; i < momenta.size(); ++i) out << "P" << i + 1 << " = " << momenta[i] << "\n";
  out << "tautological field invariant: " << (euler ? "yes" : "no") << "\n";
  if (!o.expr.empty()) {
    out << "f in new chart: " << j["function"].get<std::string>() << "\n";
    out << "pushforward of " << to_string(cfg.map) << "(f): " << j["pushforward_of_quantized"].get<std::string>() << "\n";
    out << to_string(cfg.map) << "(f) in new chart: " << j["quantized_in_new_chart"].get<std::string>() << "\n";
    out << "diagram: " << verdict << "\n";
    if (!o.expect.empty()) out << (code == Success ? "PASS" : "FAIL") << "\n";
  }
  return code;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const ParameterValues params = parse_parameter_values(o.params);
  const Grid1D grid(o.domain, o.grid);
  if (o.levels < 1) throw DomainError("--levels must be positive");
  const auto k = static_cast<std::size_t>(o.levels);
  SpectrumReport report;
  bool check = false;
  if (o.expr.empty() || o.expr == "H_SHO") {
    if (map_kind_from_string(o.map) != MapKind::Tuned2) {
      throw DomainError("the oscillator spectrum uses the second tuned map");
    }
    report = oscillator_spectrum(grid, params, k);
    check = true;
  } else {
    auto ctx = make_context(1);
    auto cfg = config_for(o, ctx);
    const auto op = quantize(observable(o.expr, ctx), cfg);
    report.points = grid.points();
    report.half_width = grid.half_width();
    report.eigenvalues = eigen_spectrum(discretize(polarized_coefficients(op), grid, params), k);
  }
  const bool pass = !check || std::all_of(report.rel_errors.begin(), report.rel_errors.end(), [](double e) { return e < 1e-3; });
  if (o.json) {
    out << to_json(report).dump(2) << "\n";
    return pass ? Success : Mismatch;
  }
  out << "grid: N=" << report.points << " L=" << report.half_width << "\n";
  out << std::setprecision(10);
  for (std::size_t n = 0; n < report.eigenvalues.size(); ++n) {
    out << n << "  " << report.eigenvalues[n];
    if (check) out << "  analytic " << report.analytic[n] << "  rel_error " << std::setprecision(3) << report.rel_errors[n] << std::setprecision(10);
    out << "\n";
  }
  if (check) out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? Success : Mismatch;
}

int cmd_check_suite(const Options& o, std::ostream& out) {
  const auto rows = check_suite(o.seed);
  const bool all = std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.passed; });
  if (o.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) j.push_back({{"group", r.group}, {"check", r.label}, {"pass", r.passed}, {"detail", r.detail}});
    out << j.dump(2) << "\n";
    return all ? Success : Mismatch;
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.group.size() + r.label.size() + 3);
  for (const auto& r : rows) {
    const std::string name = r.group + " | " + r.label;
    out << (r.passed ? "PASS  " : "FAIL  ") << name << std::string(width - name.size() + 2, ' ') << r.detail << "\n";
  }
  const auto passed = std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.passed; });
  out << passed << "/" << rows.size() << " checks passed\n";
  return all ? Success : Mismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact quantization maps on cotangent bundles", "ttquant"};
  app.require_subcommand(1);
  Options o;

  auto* quantize = app.add_subcommand("quantize", "Quantize an observable and print the normal-ordered operator");
  quantize->add_option("--map", o.map, "c, ks, tt1 or tt2")->capture_default_str();
  quantize->add_option("--n", o.n, "Configuration-space dimension")->capture_default_str();
  quantize->add_option("--expr", o.expr, "Observable, e.g. \"q1*p2 - q2*p1\" or L3")->required();
  quantize->add_flag("--strict", o.strict, "Report the tuning indicators and mixed momentum degrees");
  quantize->add_flag("--json", o.json, "JSON output");

  auto* commute = app.add_subcommand("commute", "Commutator of two quantized observables or operator expressions");
  commute->add_option("--map", o.map, "c, ks, tt1 or tt2")->capture_default_str();
  commute->add_option("--n", o.n, "Configuration-space dimension")->capture_default_str();
  commute->add_option("--a", o.a, "First argument")->required();
  commute->add_option("--b", o.b, "Second argument")->required();
  commute->add_option("--expect", o.expect, "Expected commutator, e.g. \"i*hbar*TT2(L3)\"");
  commute->add_flag("--json", o.json, "JSON output");

  auto* transform = app.add_subcommand("transform", "Push a quantized observable through a cotangent lift");
  transform->add_option("--map", o.map, "c, ks, tt1 or tt2")->capture_default_str();
  transform->add_option("--n", o.n, "Configuration-space dimension (default 2)");
  transform->add_option("--transform", o.transform, "identity, scale(c), shear or rotate2d(t)")->capture_default_str();
  transform->add_option("--expr", o.expr, "Observable to push through the diagram");
  transform->add_option("--expect", o.expect, "commutes or differs");
  transform->add_flag("--json", o.json, "JSON output");

  auto* spectrum = app.add_subcommand("spectrum", "Finite-difference spectrum of a polarized one-dimensional operator");
  spectrum->add_option("--map", o.map, "Map used to quantize --expr (default tt2)");
  spectrum->add_option("--expr", o.expr, "Observable (default H_SHO)");
  spectrum->add_option("--grid", o.grid, "Grid points N")->capture_default_str();
  spectrum->add_option("--domain", o.domain, "Half-width L of [-L, L]")->capture_default_str();
  spectrum->add_option("--params", o.params, "Numeric parameter values")->capture_default_str();
  spectrum->add_option("--levels", o.levels, "Number of eigenvalues")->capture_default_str();
  spectrum->add_flag("--json", o.json, "JSON output");

  auto* suite = app.add_subcommand("check-suite", "Replay the reference identities and print a pass/fail table");
  suite->add_option("--seed", o.seed, "Seed for the randomized checks")->capture_default_str();
  suite->add_flag("--json", o.json, "JSON output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Success;
  } catch (const CLI::ParseError& e) {
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        sub && e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << sub->help();
      return Success;
    }
    err << "error: " << e.what() << "\n";
    return Usage;
  }

  try {
    if (*quantize) return cmd_quantize(o, out);
    if (*commute) return cmd_commute(o, out);
    if (*transform) {
      if (transform->count("--n") == 0) o.n = 2;
      return cmd_transform(o, out);
    }
    if (*spectrum) {
      if (spectrum->count("--map") == 0) o.map = "tt2";
      return cmd_spectrum(o, out);
    }
    if (*suite) return cmd_check_suite(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}

}  // namespace ttq::cli
