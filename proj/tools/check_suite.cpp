#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "ttquant/coords.hpp"
#include "ttquant/errors.hpp"
#include "ttquant/quantize.hpp"
#include "ttquant/spectral.hpp"

namespace ttq::cli {

namespace {

class Suite {
 public:
  void add(std::string group, std::string label, const std::function<std::pair<bool, std::string>()>& check) {
    SuiteRow row{std::move(group), std::move(label), false, ""};
    try {
      std::tie(row.passed, row.detail) = check();
    } catch (const std::exception& e) {
      row.detail = std::string("error: ") + e.what();
    }
    rows_.push_back(std::move(row));
  }

  std::vector<SuiteRow> take() { return std::move(rows_); }

 private:
  std::vector<SuiteRow> rows_;
};

PhaseFunction f(const ContextPtr& ctx, const std::string& text) { return parse(text, ctx, builtin_resolver(ctx)); }

DiffOperator op(const ContextPtr& ctx, const std::string& coeff, std::size_t var, unsigned order = 1) {
  MultiIndex index(ctx->phase_vars(), 0);
  index[var] = order;
  DiffOperator out(ctx);
  out.add_term(index, f(ctx, coeff));
  return out;
}

std::pair<bool, std::string> same(const DiffOperator& got, const DiffOperator& want) {
  return {got == want, format(got)};
}

PhaseFunction random_polynomial(const ContextPtr& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-9, 9), den(1, 5), degree(0, 3), terms(1, 4);
  std::uniform_int_distribution<std::size_t> var(0, ctx->nvars() - 1);
  PhaseFunction out(ctx);
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    PhaseFunction mono = PhaseFunction::constant(ctx, GaussRational(mpq_class(coeff(rng), den(rng))));
    const int d = degree(rng);
    for (int k = 0; k < d; ++k) mono = mono * PhaseFunction::variable(ctx, var(rng));
    out = out + mono;
  }
  return out;
}

}  // namespace

std::vector<SuiteRow> check_suite(std::uint64_t seed) {
  Suite suite;
  auto c1 = make_context(1);
  auto c3 = make_context(3);
  const auto tt2_1 = QuantizationConfig::for_map(MapKind::Tuned2, c1);
  const auto tt2_3 = QuantizationConfig::for_map(MapKind::Tuned2, c3);
  const auto l3 = f(c3, "L3");
  const auto sho = f(c1, "H_SHO");
  const auto ihbar = f(c3, "i*hbar");

  const auto ks_q = DiffOperator::from_function(f(c1, "q1")) + op(c1, "i*hbar", c1->p(0));
  const auto mom = op(c1, "-i*hbar", c1->q(0));
  const auto ks_l3 = ihbar * (op(c3, "q2", c3->q(0)) - op(c3, "q1", c3->q(1)) + op(c3, "p2", c3->p(0)) - op(c3, "p1", c3->p(1)));
  const auto ks_sho = DiffOperator::from_function(f(c1, "m*omega^2*q1^2/2 - p1^2/(2*m)")) +
                      op(c1, "-i*hbar*p1/m", c1->q(0)) + op(c1, "i*hbar*m*omega^2*q1", c1->p(0));
  const auto canonical_sho = DiffOperator::from_function(f(c1, "m*omega^2*q1^2/2")) +
                             op(c1, "-hbar^2/(2*m)", c1->q(0), 2) + op(c1, "-hbar^2/(2*m)", c1->p(0), 2);

  const std::string ks = "prequantization", t1 = "first tuned map", t2 = "second tuned map";
  suite.add(ks, "Q(q1) = q1 + i hbar d/dp1", [&] { return same(q_ks(f(c1, "q1")), ks_q); });
  suite.add(ks, "Q(p1) = -i hbar d/dq1", [&] { return same(q_ks(f(c1, "p1")), mom); });
  suite.add(ks, "Q(L3) = i hbar X_L3", [&] { return same(q_ks(l3), ks_l3); });
  suite.add(ks, "Q(H_SHO) keeps -p^2/2m and momentum derivatives", [&] { return same(q_ks(sho), ks_sho); });
  suite.add(t1, "Q(q1) = q1", [&] { return same(q_tt1(f(c1, "q1")), DiffOperator::from_function(f(c1, "q1"))); });
  suite.add(t1, "Q(p1) = -i hbar d/dq1", [&] { return same(q_tt1(f(c1, "p1")), mom); });
  suite.add(t1, "Q(L3) unchanged by tuning", [&] { return same(q_tt1(l3), ks_l3); });
  suite.add(t1, "Q(H_SHO) unchanged by tuning", [&] { return same(q_tt1(sho), ks_sho); });
  suite.add(t2, "Q(q1) = q1", [&] { return same(q_tt2(f(c1, "q1"), tt2_1), DiffOperator::from_function(f(c1, "q1"))); });
  suite.add(t2, "Q(p1) = -i hbar d/dq1", [&] { return same(q_tt2(f(c1, "p1"), tt2_1), mom); });
  suite.add(t2, "Q(L3) unchanged by tuning", [&] { return same(q_tt2(l3, tt2_3), ks_l3); });
  suite.add(t2, "Q(H_SHO) = m omega^2 q^2/2 - (hbar^2/2m) Laplacian", [&] { return same(q_tt2(sho, tt2_1), canonical_sho); });

  const std::string alg = "commutators";
  const char* ls[] = {"L1", "L2", "L3"};
  for (int a = 0; a < 3; ++a) {
    const std::string la = ls[a], lb = ls[(a + 1) % 3], lc = ls[(a + 2) % 3];
    suite.add(alg, "[Q(" + la + "), Q(" + lb + ")] = i hbar Q(" + lc + ")", [&, la, lb, lc] {
      const auto c = commutator(q_tt2(f(c3, la), tt2_3), q_tt2(f(c3, lb), tt2_3));
      return same(c, ihbar * q_tt2(f(c3, lc), tt2_3));
    });
  }
  suite.add(alg, "[Q(L3), Q(H_FP)] = 0", [&] {
    return same(commutator(q_tt2(l3, tt2_3), q_tt2(f(c3, "H_FP"), tt2_3)), DiffOperator(c3));
  });

  const std::string diag = "chart changes";
  auto c2 = make_context(2);
  suite.add(diag, "X_theta and X_theta^2 invariant under the shear", [&] {
    const auto lift = cotangent_lift(PointTransformation::shear(c2));
    const auto x = tautological_vf(c2).as_operator();
    const auto xx = compose(x, x);
    const bool ok = pushforward_operator(x, lift) == x && pushforward_operator(xx, lift) == xx;
    return std::pair{ok, format(pushforward_operator(xx, lift))};
  });
  suite.add(diag, "canonical quantization of p1*p2 depends on the chart (shear)", [&] {
    const auto lift = cotangent_lift(PointTransformation::shear(c2));
    const auto g = f(c2, "p1*p2");
    const auto moved = pushforward_operator(q_c(g), lift);
    const auto direct = q_c(pushforward_function(g, lift));
    return std::pair{!(moved == direct), "difference " + format(moved - direct)};
  });

  suite.add("spectrum", "polarized Q(H_SHO), N=2000, L=10: six levels within 1e-3 of n + 1/2", [&] {
    const auto start = std::chrono::steady_clock::now();
    const auto report = oscillator_spectrum(Grid1D(10, 2000), {{"hbar", 1}, {"m", 1}, {"omega", 1}}, 6);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double worst = 0;
    for (double e : report.rel_errors) worst = std::max(worst, e);
    std::ostringstream detail;
    detail << "max rel error " << worst << ", " << seconds << " s";
    return std::pair{worst < 1e-3, detail.str()};
  });

  suite.add("randomized", "prequantization bracket homomorphism, 20 pairs", [&] {
    std::mt19937_64 rng(seed);
    const auto ih = f(c2, "i*hbar");
    for (int k = 0; k < 20; ++k) {
      const auto a = random_polynomial(c2, rng);
      const auto b = random_polynomial(c2, rng);
      if (!(commutator(q_ks(a), q_ks(b)) == ih * q_ks(poisson_bracket(a, b)))) {
        return std::pair{false, "counterexample f=" + format(a) + ", g=" + format(b)};
      }
    }
    return std::pair{true, "seed " + std::to_string(seed)};
  });
  return suite.take();
}

}  // namespace ttq::cli
