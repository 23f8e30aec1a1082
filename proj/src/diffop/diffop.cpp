#include "ttquant/diffop.hpp"

#include <algorithm>
#include <numeric>

#include "ttquant/errors.hpp"
#include "ttquant/parser.hpp"

namespace ttq {

unsigned order_of(const MultiIndex& index) { return std::accumulate(index.begin(), index.end(), 0u); }

bool DerivativeOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const unsigned oa = order_of(a);
  const unsigned ob = order_of(b);
  if (oa != ob) return oa < ob;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

DiffOperator DiffOperator::from_function(const PhaseFunction& f) {
  DiffOperator op(f.context());
  op.add_term(MultiIndex(f.context()->phase_vars(), 0), f);
  return op;
}

DiffOperator DiffOperator::identity(const ContextPtr& ctx) {
  return from_function(PhaseFunction::constant(ctx, 1));
}

DiffOperator DiffOperator::derivative(const ContextPtr& ctx, std::size_t var) {
  if (!ctx->is_phase(var)) throw VariableError("derivatives are taken in phase variables only");
  MultiIndex index(ctx->phase_vars(), 0);
  index[var] = 1;
  DiffOperator op(ctx);
  op.add_term(index, PhaseFunction::constant(ctx, 1));
  return op;
}

unsigned DiffOperator::order() const { return terms_.empty() ? 0 : order_of(terms_.rbegin()->first); }

PhaseFunction DiffOperator::coefficient(const MultiIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? PhaseFunction(ctx_) : it->second;
}

void DiffOperator::add_term(const MultiIndex& index, const PhaseFunction& c) {
  require_same_context(ctx_, c.context());
  if (index.size() != ctx_->phase_vars()) throw Error("multi-index length does not match the context");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(index, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  require_same_context(ctx_, o.ctx_);
  for (const auto& [index, c] : o.terms_) add_term(index, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) { return *this += -o; }

DiffOperator DiffOperator::operator-() const {
  DiffOperator out = *this;
  for (auto& [index, c] : out.terms_) c = -c;
  return out;
}

DiffOperator operator*(const PhaseFunction& f, const DiffOperator& a) {
  require_same_context(f.context(), a.ctx_);
  DiffOperator out(a.ctx_);
  if (f.is_zero()) return out;
  for (const auto& [index, c] : a.terms_) out.add_term(index, f * c);
  return out;
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
  require_same_context(a.ctx_, b.ctx_);
  if (a.terms_.size() != b.terms_.size()) return false;
  return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

PhaseFunction partial(const PhaseFunction& f, const MultiIndex& index) {
  PhaseFunction out = f;
  for (std::size_t var = 0; var < index.size() && !out.is_zero(); ++var) {
    for (unsigned k = 0; k < index[var] && !out.is_zero(); ++k) out = differentiate(out, var);
  }
  return out;
}

namespace {

long binomial(unsigned n, unsigned k) {
  long r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

/// Partials of one coefficient, memoized by multi-index.
class PartialCache {
 public:
  explicit PartialCache(const PhaseFunction& f) : f_(f) {}
  const PhaseFunction& get(const MultiIndex& index) {
    auto it = cache_.find(index);
    if (it == cache_.end()) it = cache_.emplace(index, partial(f_, index)).first;
    return it->second;
  }

 private:
  const PhaseFunction& f_;
  std::map<MultiIndex, PhaseFunction> cache_;
};

}  // namespace

DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
  require_same_context(a.context(), b.context());
  const auto& ctx = a.context();
  DiffOperator result(ctx);
  std::vector<PartialCache> caches;
  caches.reserve(b.terms().size());
  for (const auto& [beta, cb] : b.terms()) caches.emplace_back(cb);

  for (const auto& [alpha, ca] : a.terms()) {
    std::size_t bk = 0;
    for (const auto& [beta, cb] : b.terms()) {
      PartialCache& cache = caches[bk++];
      // d^alpha o cb = sum_{gamma <= alpha} C(alpha, gamma) (d^(alpha-gamma) cb) d^gamma
      MultiIndex gamma(alpha.size(), 0);
      for (;;) {
        MultiIndex delta(alpha.size());
        MultiIndex target(alpha.size());
        long weight = 1;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
          delta[k] = alpha[k] - gamma[k];
          target[k] = gamma[k] + beta[k];
          weight *= binomial(alpha[k], gamma[k]);
        }
        const PhaseFunction& d = cache.get(delta);
        if (!d.is_zero()) result.add_term(target, (ca * d).scaled(GaussRational(weight)));
        std::size_t k = 0;
        while (k < alpha.size() && gamma[k] == alpha[k]) gamma[k++] = 0;
        if (k == alpha.size()) break;
        ++gamma[k];
      }
    }
  }
  return result;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return compose(a, b) - compose(b, a); }

PhaseFunction apply(const DiffOperator& a, const PhaseFunction& f) {
  require_same_context(a.context(), f.context());
  PhaseFunction out(a.context());
  for (const auto& [index, c] : a.terms()) out += c * partial(f, index);
  return out;
}

namespace {

bool has_momentum_derivative(const MultiIndex& index, const PhaseContext& ctx) {
  for (std::size_t k = ctx.n(); k < index.size(); ++k) {
    if (index[k] != 0) return true;
  }
  return false;
}

}  // namespace

DiffOperator restrict_to_polarized(const DiffOperator& a) {
  DiffOperator out(a.context());
  for (const auto& [index, c] : a.terms()) {
    if (!has_momentum_derivative(index, *a.context())) out.add_term(index, c);
  }
  return out;
}

bool preserves_polarization(const DiffOperator& a) {
  const DiffOperator r = restrict_to_polarized(a);
  return std::all_of(r.terms().begin(), r.terms().end(), [](const auto& t) { return t.second.is_momentum_free(); });
}

std::string derivative_symbol(const MultiIndex& index, const PhaseContext& ctx, const FormatOptions& options) {
  const unsigned total = order_of(index);
  std::string out = total == 1 ? "d/" : "d" + std::to_string(total) + "/";
  for (std::size_t var = 0; var < index.size(); ++var) {
    if (index[var] == 0) continue;
    std::string name = ctx.name(var);
    if (options.upper_case_chart) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out += "d" + name;
    if (index[var] > 1) out += "^" + std::to_string(index[var]);
  }
  return out;
}

namespace {

struct Piece {
  bool negative = false;
  std::string body;  // empty means the factor 1
};

/// Splits a coefficient into sign and a body safe to juxtapose with "*".
Piece coefficient_piece(const PhaseFunction& c, const FormatOptions& options) {
  const bool single_term = c.numerator().size() == 1;
  std::string text = format(c, options);
  Piece piece;
  if (single_term && text.front() == '-') {
    piece.negative = true;
    text.erase(0, 1);
  }
  if (text == "1") return piece;
  if (!single_term || !c.is_polynomial()) text = "(" + text + ")";
  piece.body = text;
  return piece;
}

std::string join(const std::vector<Piece>& pieces) {
  std::string out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (k == 0) {
      out += pieces[k].negative ? "-" : "";
    } else {
      out += pieces[k].negative ? " - " : " + ";
    }
    out += pieces[k].body;
  }
  return out;
}

std::string product(const std::string& factor, const std::string& rest) {
  if (factor.empty()) return rest;
  return factor + "*" + rest;
}

/// Common factor of the derivative coefficients: i (when all are purely
/// imaginary), the rational content, shared monomials, and the gcd of the
/// denominators. Sign is negative when every term would otherwise be.
PhaseFunction common_factor(const std::vector<PhaseFunction>& coeffs) {
  const auto& ctx = coeffs.front().context();
  const std::size_t nv = ctx->nvars();
  bool all_imaginary = true;
  bool all_negative = true;
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  Exponents mono;
  Polynomial den_gcd(nv);
  for (const auto& c : coeffs) {
    const Exponents m = monomial_content(c.numerator());
    if (mono.empty()) {
      mono = m;
    } else {
      for (std::size_t k = 0; k < nv; ++k) mono[k] = std::min(mono[k], m[k]);
    }
    den_gcd = gcd(den_gcd, c.denominator());
    for (const auto& [e, g] : c.numerator().terms()) {
      if (!g.is_imaginary()) all_imaginary = false;
      for (const mpq_class* part : {&g.real(), &g.imag()}) {
        if (sgn(*part) == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), part->get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), part->get_den_mpz_t());
      }
    }
    const auto& lead = c.numerator().leading_coefficient();
    const mpq_class& s = lead.is_real() ? lead.real() : lead.imag();
    if (!(lead.is_real() || lead.is_imaginary()) || sgn(s) > 0) all_negative = false;
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  if (all_negative) content = -content;
  const GaussRational scalar = all_imaginary ? GaussRational(0, content) : GaussRational(content);
  return PhaseFunction::ratio(ctx, Polynomial::monomial(mono, scalar), den_gcd);
}

}  // namespace

std::string format(const DiffOperator& a, const OperatorFormat& options) {
  if (a.is_zero()) return "0";
  const auto& ctx = *a.context();
  std::vector<Piece> pieces;
  std::vector<std::pair<MultiIndex, PhaseFunction>> derivative_terms;
  for (const auto& [index, c] : a.terms()) {
    if (order_of(index) == 0) {
      const std::string text = format(c, options.function);
      Piece piece;
      // Keep the order-0 part whole; the leading sign is split off for joining.
      if (c.numerator().size() == 1 && text.front() == '-') {
        piece.negative = true;
        piece.body = text.substr(1);
      } else {
        piece.body = text;
      }
      pieces.push_back(piece);
    } else {
      derivative_terms.emplace_back(index, c);
    }
  }

  auto term_pieces = [&](const PhaseFunction& scale) {
    std::vector<Piece> inner;
    for (const auto& [index, c] : derivative_terms) {
      Piece piece = coefficient_piece(c / scale, options.function);
      piece.body = product(piece.body, derivative_symbol(index, ctx, options.function));
      inner.push_back(piece);
    }
    return inner;
  };

  if (!derivative_terms.empty()) {
    std::vector<PhaseFunction> coeffs;
    for (const auto& t : derivative_terms) coeffs.push_back(t.second);
    const PhaseFunction one = PhaseFunction::constant(a.context(), 1);
    const PhaseFunction factor = options.factor_common && coeffs.size() > 1 ? common_factor(coeffs) : one;
    if (factor == one) {
      for (auto& piece : term_pieces(one)) pieces.push_back(piece);
    } else {
      Piece outer = coefficient_piece(factor, options.function);
      outer.body = product(outer.body, "(" + join(term_pieces(factor)) + ")");
      pieces.push_back(outer);
    }
  }
  return join(pieces);
}

nlohmann::json to_json(const DiffOperator& a) {
  const auto& ctx = *a.context();
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [index, c] : a.terms()) {
    std::vector<unsigned> dq(index.begin(), index.begin() + ctx.n());
    std::vector<unsigned> dp(index.begin() + ctx.n(), index.end());
    out.push_back({{"coeff", format(c)}, {"dq", dq}, {"dp", dp}});
  }
  return out;
}

DiffOperator operator_from_json(const nlohmann::json& j, const ContextPtr& ctx) {
  DiffOperator op(ctx);
  for (const auto& term : j) {
    const auto dq = term.at("dq").get<std::vector<unsigned>>();
    const auto dp = term.at("dp").get<std::vector<unsigned>>();
    if (dq.size() != static_cast<std::size_t>(ctx->n()) || dp.size() != static_cast<std::size_t>(ctx->n())) {
      throw Error("operator JSON multi-index does not match the context dimension");
    }
    MultiIndex index(dq);
    index.insert(index.end(), dp.begin(), dp.end());
    op.add_term(index, parse(term.at("coeff").get<std::string>(), ctx));
  }
  return op;
}

}  // namespace ttq
