#include <cctype>

#include "ttquant/phase_function.hpp"

namespace ttq {

namespace {

std::string variable_name(const PhaseContext& ctx, std::size_t var, const FormatOptions& options) {
  std::string name = ctx.name(var);
  if (options.upper_case_chart && ctx.is_phase(var)) {
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  }
  return name;
}

/// Parameters first, then positions, then momenta.
std::string monomial_text(const Exponents& e, const PhaseContext& ctx, const FormatOptions& options) {
  std::string out;
  auto emit = [&](std::size_t v) {
    if (e[v] == 0) return;
    if (!out.empty()) out += "*";
    out += variable_name(ctx, v, options);
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  };
  for (std::size_t v = ctx.phase_vars(); v < ctx.nvars(); ++v) emit(v);
  for (std::size_t v = 0; v < ctx.phase_vars(); ++v) emit(v);
  return out;
}

std::string magnitude_text(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_str();
  return "(" + q.get_str() + ")";
}

/// Sign and unsigned body of one term.
std::pair<bool, std::string> term_text(const GaussRational& c, const std::string& mono) {
  bool negative = false;
  std::string coeff;
  if (c.is_real()) {
    negative = sgn(c.real()) < 0;
    const mpq_class a = abs(c.real());
    if (!(a == 1 && !mono.empty())) coeff = magnitude_text(a);
  } else if (c.is_imaginary()) {
    negative = sgn(c.imag()) < 0;
    const mpq_class a = abs(c.imag());
    coeff = a == 1 ? "i" : magnitude_text(a) + "*i";
  } else {
    coeff = c.to_string();
  }
  if (coeff.empty()) return {negative, mono};
  if (mono.empty()) return {negative, coeff};
  return {negative, coeff + "*" + mono};
}

mpq_class rational_content(const Polynomial& p) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  auto fold = [&](const mpq_class& q) {
    if (sgn(q) == 0) return;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  };
  for (const auto& [e, c] : p.terms()) {
    fold(c.real());
    fold(c.imag());
  }
  if (num_gcd == 0) return 1;
  mpq_class out(num_gcd, den_lcm);
  out.canonicalize();
  return out;
}

bool is_single_factor(const Polynomial& p) {
  if (p.size() != 1) return false;
  const auto& [e, c] = p.leading_term();
  unsigned factors = 0;
  for (unsigned x : e) factors += x > 0 ? 1 : 0;
  if (factors == 0) return c.is_real() && sgn(c.real()) > 0 && c.real().get_den() == 1;
  return factors == 1 && c.is_one();
}

}  // namespace

std::string format(const Polynomial& p, const PhaseContext& ctx, const FormatOptions& options) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    auto [negative, body] = term_text(c, monomial_text(e, ctx, options));
    if (first) {
      out += negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

std::string format(const PhaseFunction& f, const FormatOptions& options) {
  const auto& ctx = *f.context();
  if (f.is_polynomial()) return format(f.numerator(), ctx, options);

  // Clear rational coefficients so both sides print with integer content.
  mpz_class den_scale = 1;
  for (const auto& [e, c] : f.denominator().terms()) {
    mpz_lcm(den_scale.get_mpz_t(), den_scale.get_mpz_t(), c.real().get_den_mpz_t());
    mpz_lcm(den_scale.get_mpz_t(), den_scale.get_mpz_t(), c.imag().get_den_mpz_t());
  }
  const GaussRational scale{mpq_class(den_scale)};
  const Polynomial num = f.numerator().scaled(scale);
  const mpq_class content = rational_content(num);
  const Polynomial num_primitive = num.scaled(GaussRational(1) / GaussRational(content));
  const Polynomial num_text_poly = num_primitive.scaled(GaussRational(mpq_class(content.get_num())));
  const Polynomial den_text_poly = f.denominator().scaled(scale * GaussRational(mpq_class(content.get_den())));

  std::string num_text;
  bool negative = false;
  if (num_text_poly.size() == 1) {
    const auto& [e, c] = num_text_poly.leading_term();
    auto [neg, body] = term_text(c, monomial_text(e, ctx, options));
    negative = neg;
    num_text = body;
  } else {
    num_text = "(" + format(num_text_poly, ctx, options) + ")";
  }
  std::string den_text = format(den_text_poly, ctx, options);
  if (!is_single_factor(den_text_poly)) den_text = "(" + den_text + ")";
  return (negative ? "-" : "") + num_text + "/" + den_text;
}

}  // namespace ttq
