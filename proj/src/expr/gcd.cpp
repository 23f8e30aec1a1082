#include <algorithm>
#include <optional>

#include "ttquant/errors.hpp"
#include "ttquant/polynomial.hpp"

// Multivariate GCD over Q(i).
//
// Most calls come from normalizing rational functions and return 1, so each
// variable is first probed with univariate images: if the images of a and b
// in x (other variables set to integers, leading coefficients kept) are
// coprime, the gcd cannot depend on x. Variables the gcd is free of are
// split off by taking gcds of coefficients; the rest go through a
// subresultant remainder sequence.

namespace ttq {

namespace {

Polynomial one(std::size_t nvars) { return Polynomial::constant(nvars, 1); }

Polynomial divide_by_monomial(const Polynomial& p, const Exponents& m) {
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    for (std::size_t k = 0; k < f.size(); ++k) f[k] -= m[k];
    terms.emplace_back(std::move(f), c);
  }
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

// ---- univariate images -------------------------------------------------

using Univariate = std::vector<GaussRational>;  // coefficient of x^k at k

void trim(Univariate& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Univariate image(const Polynomial& p, std::size_t var, const std::vector<long>& point) {
  Univariate u(p.degree_in(var) + 1, GaussRational(0));
  for (const auto& [e, c] : p.terms()) {
    mpq_class factor = 1;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k == var || e[k] == 0) continue;
      mpz_class power;
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(point[k]), e[k]);
      factor *= power;
    }
    u[e[var]] = u[e[var]] + c * GaussRational(factor);
  }
  trim(u);
  return u;
}

/// Degree of the monic gcd of two univariate polynomials over Q(i).
std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // a <- a mod b
    const GaussRational inv = GaussRational(1) / b.back();
    while (a.size() >= b.size()) {
      const GaussRational factor = a.back() * inv;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = a[k + shift] - factor * b[k];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

/// True when the gcd of a and b provably does not depend on var.
bool gcd_free_of(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const unsigned da = a.degree_in(var);
  const unsigned db = b.degree_in(var);
  if (da == 0 || db == 0) return true;
  std::vector<long> point(a.nvars());
  for (int attempt = 0; attempt < 3; ++attempt) {
    for (std::size_t k = 0; k < point.size(); ++k) point[k] = 2 + static_cast<long>((k * 7 + attempt * 11 + 3) % 31);
    const Univariate ia = image(a, var, point);
    const Univariate ib = image(b, var, point);
    // A vanishing leading coefficient loses degree; try another point.
    if (ia.size() != da + 1u || ib.size() != db + 1u) continue;
    return univariate_gcd_degree(ia, ib) == 0;
  }
  return false;
}

// ---- recursive structure -----------------------------------------------

/// Gcd of all coefficients of a and b in var, folded left to right.
Polynomial gcd_of_coefficients(const Polynomial& a, const Polynomial& b, std::size_t var) {
  Polynomial g(a.nvars());
  for (const Polynomial* p : {&a, &b}) {
    const unsigned d = p->degree_in(var);
    for (unsigned k = 0; k <= d; ++k) {
      const Polynomial c = p->coefficient_in(var, k);
      if (c.is_zero()) continue;
      g = gcd(g, c);
      if (g.is_constant()) return one(a.nvars());
    }
  }
  return g;
}

Polynomial content_in(const Polynomial& p, std::size_t var) {
  if (p.degree_in(var) == 0) return p.monic();
  return gcd_of_coefficients(p, Polynomial(p.nvars()), var);
}

/// lc(b)^(deg a - deg b + 1) * a reduced modulo b, all in var.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t var) {
  const unsigned d = b.degree_in(var);
  const unsigned da = a.degree_in(var);
  if (da < d) return a;
  const Polynomial lead_b = b.coefficient_in(var, d);
  unsigned steps = 0;
  while (!a.is_zero()) {
    const unsigned k = a.degree_in(var);
    if (k < d) break;
    const Polynomial lead_a = a.coefficient_in(var, k);
    Exponents shift(a.nvars(), 0);
    shift[var] = k - d;
    a = lead_b * a - (lead_a * b).times_monomial(shift, 1);
    ++steps;
  }
  for (unsigned s = steps; s < da - d + 1; ++s) a = lead_b * a;
  return a;
}

/// Subresultant remainder sequence in var for inputs primitive in var.
Polynomial subresultant_gcd(Polynomial x, Polynomial y, std::size_t var) {
  const std::size_t nv = x.nvars();
  if (x.degree_in(var) < y.degree_in(var)) std::swap(x, y);
  Polynomial g = one(nv);
  Polynomial h = one(nv);
  for (;;) {
    const unsigned delta = x.degree_in(var) - y.degree_in(var);
    Polynomial r = pseudo_remainder(x, y, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return one(nv);
    x = std::move(y);
    y = exact_divide(r, g * h.pow(delta));
    g = x.coefficient_in(var, x.degree_in(var));
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact_divide(g.pow(delta), h.pow(delta - 1));
    }
  }
  return exact_divide(y, content_in(y, var)).monic();
}

Polynomial gcd_without_monomial_content(const Polynomial& a, const Polynomial& b) {
  const std::size_t nv = a.nvars();
  if (a.is_constant() || b.is_constant()) return one(nv);
  if (a.monic() == b.monic()) return a.monic();

  std::optional<std::size_t> free_var;
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < nv; ++k) {
    if (!a.depends_on(k) && !b.depends_on(k)) continue;
    if (gcd_free_of(a, b, k)) {
      if (!free_var) free_var = k;
    } else {
      candidates.push_back(k);
    }
  }
  if (candidates.empty()) return one(nv);
  if (free_var) return gcd_of_coefficients(a, b, *free_var);

  // Every variable may occur in the gcd; recurse on the one of least degree.
  const std::size_t var = *std::min_element(candidates.begin(), candidates.end(), [&](std::size_t u, std::size_t v) {
    return std::max(a.degree_in(u), b.degree_in(u)) < std::max(a.degree_in(v), b.degree_in(v));
  });
  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  const Polynomial c = gcd(ca, cb);
  const Polynomial g = subresultant_gcd(exact_divide(a, ca), exact_divide(b, cb), var);
  return (c * g).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const std::size_t nv = a.nvars();
  if (a.is_constant() || b.is_constant()) return one(nv);

  const Exponents ma = monomial_content(a);
  const Exponents mb = monomial_content(b);
  Exponents common(nv);
  for (std::size_t k = 0; k < nv; ++k) common[k] = std::min(ma[k], mb[k]);

  Polynomial core = one(nv);
  if (!a.is_monomial() && !b.is_monomial()) {
    core = gcd_without_monomial_content(divide_by_monomial(a, ma), divide_by_monomial(b, mb));
  }
  return core.times_monomial(common, 1).monic();
}

}  // namespace ttq
