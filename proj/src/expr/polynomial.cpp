#include "ttquant/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "ttquant/errors.hpp"

namespace ttq {

int compare_monomials(const Exponents& a, const Exponents& b) {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  }
  return 0;
}

namespace {

bool greater_monomial(const Polynomial::Term& x, const Polynomial::Term& y) {
  return compare_monomials(x.first, y.first) > 0;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const GaussRational& c) {
  Polynomial p(nvars);
  if (!c.is_zero()) p.terms_.emplace_back(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return monomial(std::move(e), 1);
}

Polynomial Polynomial::monomial(Exponents exps, const GaussRational& c) {
  Polynomial p(exps.size());
  if (!c.is_zero()) p.terms_.emplace_back(std::move(exps), c);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), greater_monomial);
  Polynomial p(nvars);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.front().first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

bool Polynomial::is_one() const { return is_constant() && !is_zero() && terms_.front().second.is_one(); }

GaussRational Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& back = terms_.back();
  if (std::all_of(back.first.begin(), back.first.end(), [](unsigned x) { return x == 0; })) {
    return back.second;
  }
  return 0;
}

unsigned Polynomial::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.front().first;
  return std::accumulate(e.begin(), e.end(), 0u);
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

Polynomial Polynomial::coefficient_in(std::size_t var, unsigned k) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponents f = e;
    f[var] = 0;
    out.terms_.emplace_back(std::move(f), c);
  }
  // Zeroing one exponent can break the order only among equal-degree ties.
  std::sort(out.terms_.begin(), out.terms_.end(), greater_monomial);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    *this = o;
    return *this;
  }
  if (nvars_ != o.nvars_) throw Error("polynomial variable count mismatch");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    const int c = compare_monomials(i->first, j->first);
    if (c > 0) {
      merged.push_back(std::move(*i++));
    } else if (c < 0) {
      merged.push_back(*j++);
    } else {
      GaussRational s = i->second + j->second;
      if (!s.is_zero()) merged.emplace_back(std::move(i->first), std::move(s));
      ++i;
      ++j;
    }
  }
  for (; i != terms_.end(); ++i) merged.push_back(std::move(*i));
  for (; j != o.terms_.end(); ++j) merged.push_back(*j);
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(std::max(a.nvars_, b.nvars_));
  if (a.nvars_ != b.nvars_) throw Error("polynomial variable count mismatch");
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].first, b.terms_[0].second);
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].first, a.terms_[0].second);
  std::vector<Polynomial::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      products.emplace_back(std::move(e), ca * cb);
    }
  }
  return Polynomial::from_terms(a.nvars_, std::move(products));
}

Polynomial Polynomial::scaled(const GaussRational& c) const {
  if (c.is_zero()) return Polynomial(nvars_);
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

Polynomial Polynomial::times_monomial(const Exponents& exps, const GaussRational& c) const {
  if (c.is_zero()) return Polynomial(nvars_);
  Polynomial out = *this;
  for (auto& [e, coeff] : out.terms_) {
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += exps[k];
    coeff *= c;
  }
  return out;  // multiplying by a monomial preserves the order
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    const long power = f[var]--;
    out.emplace_back(std::move(f), c * GaussRational(power));
  }
  return from_terms(nvars_, std::move(out));
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || leading_coefficient().is_one()) return *this;
  const GaussRational inv = GaussRational(1) / leading_coefficient();
  return scaled(inv);
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  if (b.is_constant()) return a.scaled(GaussRational(1) / b.leading_coefficient());
  Polynomial remainder = a;
  std::vector<Polynomial::Term> quotient;
  const auto& [lb, cb] = b.leading_term();
  while (!remainder.is_zero()) {
    const auto& [lr, cr] = remainder.leading_term();
    Exponents e(lr.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (lr[k] < lb[k]) throw Error("polynomial division is not exact");
      e[k] = lr[k] - lb[k];
    }
    GaussRational c = cr / cb;
    remainder -= b.times_monomial(e, c);
    quotient.emplace_back(std::move(e), std::move(c));
  }
  return Polynomial::from_terms(a.nvars(), std::move(quotient));
}

Exponents monomial_content(const Polynomial& p) {
  if (p.is_zero()) return Exponents(p.nvars(), 0);
  Exponents m = p.terms().front().first;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], e[k]);
  }
  return m;
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n = sqrt(q.get_num());
  mpz_class d = sqrt(q.get_den());
  return mpq_class(n, d);
}

}  // namespace

std::optional<Polynomial> exact_sqrt(const Polynomial& p) {
  if (p.is_zero()) return p;
  const auto& [lead_exp, lead_coeff] = p.leading_term();
  if (!lead_coeff.is_real()) return std::nullopt;
  const auto root_coeff = rational_sqrt(lead_coeff.real());
  if (!root_coeff) return std::nullopt;
  Exponents half(lead_exp.size());
  for (std::size_t k = 0; k < half.size(); ++k) {
    if (lead_exp[k] % 2 != 0) return std::nullopt;
    half[k] = lead_exp[k] / 2;
  }
  Polynomial root = Polynomial::monomial(half, GaussRational(*root_coeff));
  const GaussRational twice_lead = GaussRational(2) * GaussRational(*root_coeff);
  Exponents last = half;
  for (;;) {
    const Polynomial residual = p - root * root;
    if (residual.is_zero()) return root;
    const auto& [re, rc] = residual.leading_term();
    Exponents e(re.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (re[k] < half[k]) return std::nullopt;
      e[k] = re[k] - half[k];
    }
    if (compare_monomials(e, last) >= 0) return std::nullopt;
    last = e;
    root += Polynomial::monomial(std::move(e), rc / twice_lead);
  }
}

}  // namespace ttq
