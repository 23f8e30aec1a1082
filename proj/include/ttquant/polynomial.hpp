#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ttquant/gauss_rational.hpp"

namespace ttq {

using Exponents = std::vector<unsigned>;

/// Graded lexicographic comparison. Ties on total degree are broken by the
/// exponent of the highest-indexed variable first, so the variable with the
/// largest index is the most significant.
int compare_monomials(const Exponents& a, const Exponents& b);

/// Sparse multivariate polynomial over Q(i) in a fixed number of variables.
/// Terms are kept sorted in strictly decreasing monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
class Polynomial {
 public:
  using Term = std::pair<Exponents, GaussRational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const GaussRational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(Exponents exps, const GaussRational& c);
  /// Builds from unsorted, possibly repeated terms.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  const Term& leading_term() const { return terms_.front(); }
  const GaussRational& leading_coefficient() const { return terms_.front().second; }
  /// Coefficient of the constant monomial (zero if absent).
  GaussRational constant_term() const;

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  /// Coefficient of var^k, as a polynomial with var eliminated.
  Polynomial coefficient_in(std::size_t var, unsigned k) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  Polynomial scaled(const GaussRational& c) const;
  Polynomial times_monomial(const Exponents& exps, const GaussRational& c) const;
  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t var) const;
  /// Leading coefficient scaled to one; zero stays zero.
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Exact quotient a / b; throws Error if b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor, normalized to leading coefficient one (zero only
/// when both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Componentwise minimum of the exponents over all terms.
Exponents monomial_content(const Polynomial& p);

/// Exact square root when p is a perfect square with a square rational leading
/// coefficient; the root has positive leading coefficient.
std::optional<Polynomial> exact_sqrt(const Polynomial& p);

}  // namespace ttq
