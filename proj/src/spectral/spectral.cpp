#include "ttquant/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ttquant/errors.hpp"
#include "ttquant/quantize.hpp"

namespace ttq {

Grid1D::Grid1D(double half_width, int points, bool dirichlet)
    : half_width_(half_width), points_(points), dirichlet_(dirichlet) {
  if (points < 3) throw DomainError("grid needs at least 3 points");
  if (!(half_width > 0)) throw DomainError("grid half-width must be positive");
}

PolarizedCoefficients polarized_coefficients(const DiffOperator& a) {
  const auto& ctx = a.context();
  if (ctx->n() != 1) throw DomainError("polarized coefficients are defined for n = 1 only");
  if (!preserves_polarization(a)) throw DomainError("operator does not preserve the vertical polarization");
  const DiffOperator r = restrict_to_polarized(a);
  if (r.order() > 2) throw DomainError("operator order exceeds two");
  return {r.coefficient({0, 0}), r.coefficient({1, 0}), r.coefficient({2, 0})};
}

ParameterValues parse_parameter_values(const std::string& text) {
  ParameterValues values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("malformed parameter assignment '" + item + "'");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    values[trim(item.substr(0, eq))] = std::stod(trim(item.substr(eq + 1)));
  }
  return values;
}

namespace {

Bindings parameter_bindings(const ContextPtr& ctx, const ParameterValues& params) {
  Bindings b;
  for (const auto& [name, value] : params) {
    if (!std::isfinite(value)) throw DomainError("parameter '" + name + "' is not finite");
    b.emplace(ctx->param(name), PhaseFunction::constant(ctx, GaussRational(mpq_class(value))));
  }
  return b;
}

bool has_real_coefficients(const PhaseFunction& f) {
  for (const Polynomial* p : {&f.numerator(), &f.denominator()}) {
    for (const auto& [e, c] : p->terms()) {
      if (!c.is_real()) return false;
    }
  }
  return true;
}

std::complex<double> evaluate_numeric(const Polynomial& p, const std::map<std::size_t, std::complex<double>>& point,
                                      const PhaseContext& ctx) {
  std::complex<double> sum = 0;
  for (const auto& [e, c] : p.terms()) {
    std::complex<double> t = c.to_complex();
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      auto it = point.find(v);
      if (it == point.end()) throw VariableError("no value given for '" + ctx.name(v) + "'");
      t *= std::pow(it->second, static_cast<int>(e[v]));
    }
    sum += t;
  }
  return sum;
}

}  // namespace

std::complex<double> evaluate_numeric(const PhaseFunction& f, const std::map<std::size_t, std::complex<double>>& point) {
  const auto& ctx = *f.context();
  const auto den = evaluate_numeric(f.denominator(), point, ctx);
  if (den == std::complex<double>(0)) throw PoleError("pole at the evaluation point");
  return evaluate_numeric(f.numerator(), point, ctx) / den;
}

SymmetricTridiagonal discretize(const PolarizedCoefficients& coeffs, const Grid1D& grid,
                                const ParameterValues& params) {
  const auto& ctx = coeffs.potential.context();
  for (const auto& [name, value] : params) {
    if (!(value > 0)) throw DomainError("parameter '" + name + "' must be positive");
  }
  if (!grid.dirichlet()) throw DomainError("only Dirichlet grids are supported");
  const Bindings bind = parameter_bindings(ctx, params);
  const PhaseFunction drift = substitute(coeffs.drift, bind);
  const PhaseFunction kinetic = substitute(coeffs.kinetic, bind);
  const PhaseFunction potential = substitute(coeffs.potential, bind);
  if (!drift.is_zero()) throw DomainError("first-derivative term makes the discretization non-symmetric");
  if (!kinetic.is_constant() || !has_real_coefficients(kinetic) || !(kinetic.numerator().constant_term().real() < 0)) {
    throw DomainError("second-derivative coefficient must be a negative real constant");
  }
  if (!has_real_coefficients(potential)) throw DomainError("potential must be real");
  for (std::size_t v = 0; v < ctx->nvars(); ++v) {
    if (v != ctx->q(0) && potential.depends_on(v)) {
      throw DomainError("potential depends on '" + ctx->name(v) + "'; bind it with a parameter value");
    }
  }

  const double c2 = kinetic.numerator().constant_term().real().get_d();
  const double h = grid.spacing();
  SymmetricTridiagonal m;
  m.diagonal.resize(grid.points());
  m.off_diagonal.assign(grid.points() - 1, c2 / (h * h));
  for (int k = 0; k < grid.points(); ++k) {
    const double v = evaluate_numeric(potential, {{ctx->q(0), grid.node(k)}}).real();
    m.diagonal[k] = v - 2 * c2 / (h * h);
  }
  return m;
}

namespace {

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const SymmetricTridiagonal& m, double x) {
  std::size_t count = 0;
  double d = 1;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double b2 = k == 0 ? 0 : m.off_diagonal[k - 1] * m.off_diagonal[k - 1];
    d = (m.diagonal[k] - x) - (k == 0 ? 0 : b2 / d);
    if (d == 0) d = -1e-300;
    if (d < 0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> eigen_spectrum(const SymmetricTridiagonal& m, std::size_t k, int max_iterations) {
  const std::size_t n = m.size();
  if (k > n) throw DomainError("requested more eigenvalues than the matrix dimension");
  if (m.off_diagonal.size() + 1 != n && n > 0) throw DomainError("malformed tridiagonal matrix");
  double lower = 0, upper = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(m.off_diagonal[i - 1]) : 0) + (i + 1 < n ? std::abs(m.off_diagonal[i]) : 0);
    if (i == 0 || m.diagonal[i] - radius < lower) lower = m.diagonal[i] - radius;
    if (i == 0 || m.diagonal[i] + radius > upper) upper = m.diagonal[i] + radius;
  }
  std::vector<double> values;
  values.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    double lo = j == 0 ? lower : values.back();
    double hi = upper;
    int iterations = 0;
    while (hi - lo > 1e-12 + 1e-15 * std::max(std::abs(lo), std::abs(hi))) {
      if (++iterations > max_iterations) throw ConvergenceError("eigenvalue bisection did not converge");
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (sturm_count(m, mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    values.push_back(0.5 * (lo + hi));
  }
  return values;
}

std::vector<double> eigenvector(const SymmetricTridiagonal& m, double eigenvalue) {
  const std::size_t n = m.size();
  const double shift = eigenvalue + 1e-10 * std::max(1.0, std::abs(eigenvalue));
  std::vector<double> x(n);
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (auto& v : x) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    v = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  }
  std::vector<double> c(n), d(n);
  for (int iteration = 0; iteration < 4; ++iteration) {
    // Thomas algorithm on (M - shift) y = x.
    for (std::size_t i = 0; i < n; ++i) {
      const double a = i > 0 ? m.off_diagonal[i - 1] : 0;
      double pivot = (m.diagonal[i] - shift) - (i > 0 ? a * c[i - 1] : 0);
      if (std::abs(pivot) < 1e-300) pivot = 1e-300;
      c[i] = i + 1 < n ? m.off_diagonal[i] / pivot : 0;
      d[i] = (x[i] - (i > 0 ? a * d[i - 1] : 0)) / pivot;
    }
    for (std::size_t i = n; i-- > 0;) x[i] = d[i] - (i + 1 < n ? c[i] * x[i + 1] : 0);
    double norm = 0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
  }
  // Fix the sign so the largest component is positive.
  const auto peak = std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*peak < 0) {
    for (auto& v : x) v = -v;
  }
  return x;
}

std::vector<std::complex<double>> sample(const PhaseFunction& psi, const Grid1D& grid, const ParameterValues& params) {
  const auto& ctx = psi.context();
  std::map<std::size_t, std::complex<double>> point;
  for (const auto& [name, value] : params) point[ctx->param(name)] = value;
  std::vector<std::complex<double>> out(grid.points());
  for (int k = 0; k < grid.points(); ++k) {
    point[ctx->q(0)] = grid.node(k);
    out[k] = evaluate_numeric(psi, point);
  }
  return out;
}

double q_norm(std::span<const std::complex<double>> samples, const Grid1D& grid) {
  if (static_cast<int>(samples.size()) != grid.points()) throw DomainError("sample count does not match the grid");
  double sum = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double w = (k == 0 || k + 1 == samples.size()) ? 0.5 : 1.0;
    sum += w * std::norm(samples[k]);
  }
  return sum * grid.spacing();
}

VolumeProbe vol_p_probe(std::span<const std::complex<double>> samples, const Grid1D& grid,
                        const std::vector<double>& momentum_half_widths, int momentum_points) {
  VolumeProbe probe;
  probe.momentum_half_widths = momentum_half_widths;
  const double base = q_norm(samples, grid);
  for (double lp : momentum_half_widths) {
    const Grid1D pgrid(lp, momentum_points);
    // |psi|^2 does not depend on p, so each momentum slice contributes the
    // same base integral.
    double sum = 0;
    for (int j = 0; j < momentum_points; ++j) {
      const double w = (j == 0 || j + 1 == momentum_points) ? 0.5 : 1.0;
      sum += w * base;
    }
    probe.norms.push_back(sum * pgrid.spacing());
  }
  for (std::size_t k = 1; k < probe.norms.size(); ++k) probe.growth_ratios.push_back(probe.norms[k] / probe.norms[k - 1]);
  return probe;
}

SpectrumReport oscillator_spectrum(const Grid1D& grid, const ParameterValues& params, std::size_t k) {
  auto ctx = make_context(1);
  const PhaseFunction h = *builtin_function("H_SHO", ctx);
  const DiffOperator op = q_tt2(h, QuantizationConfig::for_map(MapKind::Tuned2, ctx));
  const auto matrix = discretize(polarized_coefficients(op), grid, params);
  SpectrumReport report;
  report.points = grid.points();
  report.half_width = grid.half_width();
  report.eigenvalues = eigen_spectrum(matrix, k);
  const double hbar = params.count("hbar") ? params.at("hbar") : 1.0;
  const double omega = params.count("omega") ? params.at("omega") : 1.0;
  for (std::size_t n = 0; n < k; ++n) {
    const double exact = (static_cast<double>(n) + 0.5) * hbar * omega;
    report.analytic.push_back(exact);
    report.rel_errors.push_back(std::abs(report.eigenvalues[n] - exact) / exact);
  }
  return report;
}

nlohmann::json to_json(const SpectrumReport& report) {
  return {{"eigenvalues", report.eigenvalues},
          {"analytic", report.analytic},
          {"rel_errors", report.rel_errors},
          {"grid", {{"N", report.points}, {"L", report.half_width}}}};
}

}  // namespace ttq
