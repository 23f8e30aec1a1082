#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttquant/diffop.hpp"

namespace ttq {

/// Uniform grid q_k = -L + k h on [-L, L], h = 2L / (N - 1). With the
/// Dirichlet flag the wave function is pinned to zero just outside the grid.
class Grid1D {
 public:
  /// Throws DomainError unless N >= 3 and L > 0.
  Grid1D(double half_width, int points, bool dirichlet = true);

  double half_width() const noexcept { return half_width_; }
  int points() const noexcept { return points_; }
  bool dirichlet() const noexcept { return dirichlet_; }
  double spacing() const noexcept { return 2 * half_width_ / (points_ - 1); }
  double node(int k) const noexcept { return -half_width_ + k * spacing(); }

 private:
  double half_width_;
  int points_;
  bool dirichlet_;
};

/// c0(q) + c1(q) d/dq + c2(q) d2/dq2 for a one-dimensional polarized operator.
struct PolarizedCoefficients {
  PhaseFunction potential;
  PhaseFunction drift;
  PhaseFunction kinetic;
};

/// Requires n = 1, preserves_polarization, and q-order at most two.
PolarizedCoefficients polarized_coefficients(const DiffOperator& a);

using ParameterValues = std::map<std::string, double>;
/// "hbar=1,m=1,omega=1".
ParameterValues parse_parameter_values(const std::string& text);

struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size N - 1
  std::size_t size() const noexcept { return diagonal.size(); }
};

/// Central second differences: diagonal c0(q_k) - 2 c2 / h^2, off-diagonal
/// c2 / h^2. Needs c1 = 0, c2 a negative real constant and c0 real.
SymmetricTridiagonal discretize(const PolarizedCoefficients& coeffs, const Grid1D& grid,
                                const ParameterValues& params);

/// The k smallest eigenvalues in ascending order, by Sturm-sequence
/// bisection to 1e-12 absolute accuracy.
std::vector<double> eigen_spectrum(const SymmetricTridiagonal& m, std::size_t k, int max_iterations = 200);

/// Unit-norm eigenvector for a computed eigenvalue, by inverse iteration.
std::vector<double> eigenvector(const SymmetricTridiagonal& m, double eigenvalue);

std::complex<double> evaluate_numeric(const PhaseFunction& f, const std::map<std::size_t, std::complex<double>>& point);

/// psi sampled at the grid nodes; psi may depend on q1 and bound parameters.
std::vector<std::complex<double>> sample(const PhaseFunction& psi, const Grid1D& grid, const ParameterValues& params);

/// Trapezoid estimate of the integral of |psi|^2 over the base.
double q_norm(std::span<const std::complex<double>> samples, const Grid1D& grid);

/// Phase-space integral of |psi(q)|^2 over the grid times [-Lp, Lp] in a
/// momentum direction, for each box size, with growth ratios between
/// consecutive boxes.
struct VolumeProbe {
  std::vector<double> momentum_half_widths;
  std::vector<double> norms;
  std::vector<double> growth_ratios;
};
VolumeProbe vol_p_probe(std::span<const std::complex<double>> samples, const Grid1D& grid,
                        const std::vector<double>& momentum_half_widths, int momentum_points = 101);

struct SpectrumReport {
  std::vector<double> eigenvalues;
  std::vector<double> analytic;
  std::vector<double> rel_errors;
  int points = 0;
  double half_width = 0;
};

/// Lowest k levels of the polarized second tuned quantization of the
/// one-dimensional oscillator, against (n + 1/2) hbar omega.
SpectrumReport oscillator_spectrum(const Grid1D& grid, const ParameterValues& params, std::size_t k = 6);

/// {"eigenvalues": [...], "analytic": [...], "rel_errors": [...], "grid": {"N": .., "L": ..}}
nlohmann::json to_json(const SpectrumReport& report);

}  // namespace ttq
