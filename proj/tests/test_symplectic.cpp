#include <catch2/catch_amalgamated.hpp>

#include "support/operators.hpp"
#include "ttquant/errors.hpp"
#include "ttquant/quantize.hpp"
#include "ttquant/symplectic.hpp"

using namespace ttq;
using namespace ttq::testing;

namespace {

/// p-homogeneous polynomial of degree d with random q/parameter dependence.
PhaseFunction random_homogeneous(const ContextPtr& ctx, std::mt19937_64& rng, unsigned d) {
  PhaseFunction out(ctx);
  auto base_vars = position_variables(ctx);
  base_vars.push_back(*ctx->lookup("m"));
  std::uniform_int_distribution<int> pick(0, ctx->n() - 1);
  for (int t = 0; t < 3; ++t) {
    PhaseFunction mono = random_polynomial(ctx, rng, 2, base_vars, 2);
    for (unsigned k = 0; k < d; ++k) mono = mono * PhaseFunction::p(ctx, pick(rng));
    out = out + mono;
  }
  return out;
}

}  // namespace

TEST_CASE("Hamiltonian vector field examples") {
  auto ctx = make_context(3);
  const auto x = hamiltonian_vf(*builtin_function("L3", ctx));
  const auto expected = term(ctx, "q2", {1, 0, 0, 0, 0, 0}) + term(ctx, "-q1", {0, 1, 0, 0, 0, 0}) +
                        term(ctx, "p2", {0, 0, 0, 1, 0, 0}) + term(ctx, "-p1", {0, 0, 0, 0, 1, 0});
  CHECK(x.as_operator() == expected);
  CHECK(hamiltonian_vf(fn(ctx, "hbar*m + 3")).as_operator().is_zero());

  auto one = make_context(1);
  const auto sho = hamiltonian_vf(*builtin_function("H_SHO", one));
  CHECK(sho.as_operator() == term(one, "-p1/m", {1, 0}) + term(one, "m*omega^2*q1", {0, 1}));
  CHECK(sho.q_component(0) == fn(one, "-p1/m"));
  CHECK(sho.p_component(0) == fn(one, "m*omega^2*q1"));
}

TEST_CASE("vector fields reject non-derivations") {
  auto ctx = make_context(1);
  CHECK_THROWS_AS(VectorField(mul(ctx, "q1")), DomainError);
  CHECK_THROWS_AS(VectorField(term(ctx, "1", {2, 0})), DomainError);
  CHECK_NOTHROW(VectorField(d(ctx, "p1")));
}

TEST_CASE("Poisson bracket examples") {
  auto ctx = make_context(3);
  CHECK(poisson_bracket(fn(ctx, "q1"), fn(ctx, "p1")) == fn(ctx, "1"));
  CHECK(poisson_bracket(fn(ctx, "q1"), fn(ctx, "p2")).is_zero());
  const auto l1 = *builtin_function("L1", ctx);
  const auto l2 = *builtin_function("L2", ctx);
  const auto l3 = *builtin_function("L3", ctx);
  CHECK(l1 == fn(ctx, "q2*p3 - q3*p2"));
  CHECK(l2 == fn(ctx, "q3*p1 - q1*p3"));
  CHECK(l3 == fn(ctx, "q1*p2 - q2*p1"));
  CHECK(poisson_bracket(l1, l2) == l3);
  CHECK(poisson_bracket(l2, l3) == l1);
  CHECK(poisson_bracket(l3, l1) == l2);
  CHECK(poisson_bracket(l3, l3).is_zero());
}

TEST_CASE("tautological field examples") {
  auto ctx = make_context(1);
  const auto x = tautological_vf(ctx);
  CHECK(x(fn(ctx, "q1")).is_zero());
  CHECK(x(fn(ctx, "p1")) == fn(ctx, "p1"));
  CHECK(x(*builtin_function("H_SHO", ctx)) == fn(ctx, "p1^2/m"));
}

TEST_CASE("theta contraction examples") {
  auto ctx = make_context(3);
  CHECK(theta_contract(VectorField(d(ctx, "q1"))) == fn(ctx, "p1"));
  CHECK(theta_contract(VectorField(d(ctx, "p1"))).is_zero());
  const auto l3 = *builtin_function("L3", ctx);
  CHECK(theta_contract(hamiltonian_vf(l3)) == fn(ctx, "p1*q2 - p2*q1"));
  CHECK(theta_contract(hamiltonian_vf(l3)) == PhaseFunction::constant(ctx, -1) * l3);
}

TEST_CASE("flat Laplacian") {
  auto ctx = make_context(1);
  const auto lap = laplace_beltrami(Metric::flat(ctx));
  CHECK(lap == term(ctx, "1", {2, 0}) + term(ctx, "1", {0, 2}));
  CHECK(apply(lap, fn(ctx, "q1^2")) == fn(ctx, "2"));
  const auto base = laplace_beltrami(Metric::flat(ctx, Metric::Space::Base));
  CHECK(base == term(ctx, "1", {2, 0}));
}

TEST_CASE("Laplacian of a diagonal metric matches the divergence form") {
  auto ctx = make_context(1);
  const auto u = fn(ctx, "(1 + q1^2)^2");
  const auto one = fn(ctx, "1");
  const auto zero = PhaseFunction(ctx);
  const auto g = Metric::from_components(ctx, Metric::Space::Phase, {{u, zero}, {zero, one}});
  const auto lap = laplace_beltrami(g);
  // sqrt|g| = 1 + q1^2, g^{11} = 1/(1 + q1^2)^2.
  const auto root = fn(ctx, "1 + q1^2");
  std::mt19937_64 rng(9);
  for (int k = 0; k < 30; ++k) {
    const auto f = random_polynomial(ctx, rng, 4, phase_variables(ctx), 4);
    const auto fq = differentiate(f, ctx->q(0));
    const auto fp = differentiate(f, ctx->p(0));
    const auto oracle = (differentiate(root * (one / u) * fq, ctx->q(0)) + differentiate(root * fp, ctx->p(0))) / root;
    REQUIRE(apply(lap, f) == oracle);
  }
  // The first-derivative correction is present.
  CHECK_FALSE(lap.coefficient({1, 0}).is_zero());
}

TEST_CASE("metric validation") {
  auto ctx = make_context(1);
  const auto z = PhaseFunction(ctx);
  CHECK_THROWS_AS(Metric::from_components(ctx, Metric::Space::Phase, {{fn(ctx, "1"), z}, {z, z}}), SingularError);
  CHECK_THROWS_AS(Metric::from_components(ctx, Metric::Space::Phase, {{fn(ctx, "1"), fn(ctx, "q1")}, {z, fn(ctx, "1")}}),
                  DomainError);
  CHECK_THROWS_AS(Metric::from_components(ctx, Metric::Space::Phase, {{fn(ctx, "1")}}), DomainError);
  const auto irrational = Metric::from_components(ctx, Metric::Space::Phase, {{fn(ctx, "2"), z}, {z, fn(ctx, "1")}});
  CHECK_THROWS_AS(laplace_beltrami(irrational), DomainError);
  const auto j = nlohmann::json::parse(R"([["4", "0"], ["0", "1"]])");
  const auto g = metric_from_json(j, ctx);
  CHECK(laplace_beltrami(g) == term(ctx, "1/4", {2, 0}) + term(ctx, "1", {0, 2}));
}

TEST_CASE("determinant and inverse") {
  auto ctx = make_context(1);
  const Metric::Matrix m = {{fn(ctx, "q1"), fn(ctx, "1")}, {fn(ctx, "1"), fn(ctx, "p1")}};
  CHECK(determinant(m) == fn(ctx, "q1*p1 - 1"));
  const auto inv = inverse(m);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto entry = m[i][0] * inv[0][j] + m[i][1] * inv[1][j];
      CHECK(entry == fn(ctx, i == j ? "1" : "0"));
    }
  }
}

TEST_CASE("Hamiltonian fields are derivations") {
  auto ctx = make_context(2);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_polynomial(ctx, rng, 3, all_variables(ctx));
    const auto g = random_polynomial(ctx, rng, 3, all_variables(ctx));
    const auto h = random_polynomial(ctx, rng, 3, all_variables(ctx));
    const auto x = hamiltonian_vf(f);
    REQUIRE(x(g * h) == g * x(h) + h * x(g));
  }
}

TEST_CASE("bracket of fields has one fixed sign") {
  auto ctx = make_context(2);
  // Fix the sign from one non-trivial pair.
  const auto f0 = fn(ctx, "q1*p2");
  const auto g0 = fn(ctx, "q2^2*p1");
  const auto lhs0 = hamiltonian_vf(poisson_bracket(f0, g0)).as_operator();
  const auto rhs0 = commutator(hamiltonian_vf(f0).as_operator(), hamiltonian_vf(g0).as_operator());
  REQUIRE_FALSE(rhs0.is_zero());
  int s = 0;
  if (lhs0 == rhs0) s = 1;
  if (lhs0 == -rhs0) s = -1;
  REQUIRE(s != 0);
  // X_f acts as {f, -}, so Jacobi gives s = +1.
  CHECK(s == 1);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_polynomial(ctx, rng, 3, all_variables(ctx));
    const auto g = random_polynomial(ctx, rng, 3, all_variables(ctx));
    const auto lhs = hamiltonian_vf(poisson_bracket(f, g)).as_operator();
    const auto rhs = commutator(hamiltonian_vf(f).as_operator(), hamiltonian_vf(g).as_operator());
    REQUIRE(lhs == (s == 1 ? rhs : -rhs));
  }
}

TEST_CASE("Poisson bracket is antisymmetric and satisfies Jacobi") {
  auto ctx = make_context(2);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_polynomial(ctx, rng, 3, all_variables(ctx));
    const auto g = random_polynomial(ctx, rng, 3, all_variables(ctx));
    const auto h = random_polynomial(ctx, rng, 3, all_variables(ctx));
    REQUIRE(poisson_bracket(f, g) == PhaseFunction::constant(ctx, -1) * poisson_bracket(g, f));
    const auto jac = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                     poisson_bracket(h, poisson_bracket(f, g));
    REQUIRE(jac.is_zero());
  }
}

TEST_CASE("tautological field is the Euler field in momenta") {
  auto ctx = make_context(2);
  const auto x = tautological_vf(ctx);
  std::mt19937_64 rng(4);
  for (unsigned d = 0; d <= 3; ++d) {
    for (int k = 0; k < 25; ++k) {
      const auto f = random_homogeneous(ctx, rng, d);
      REQUIRE(x(f) == PhaseFunction::constant(ctx, static_cast<long>(d)) * f);
    }
  }
}

TEST_CASE("flat Laplacian commutes with rotation generators") {
  auto ctx = make_context(3);
  const auto lap = laplace_beltrami(Metric::flat(ctx));
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const std::string qa = "q" + std::to_string(a + 1), qb = "q" + std::to_string(b + 1);
      const std::string pa = "p" + std::to_string(a + 1), pb = "p" + std::to_string(b + 1);
      CHECK(commutator(lap, compose(mul(ctx, qa), d(ctx, qb)) - compose(mul(ctx, qb), d(ctx, qa))).is_zero());
      CHECK(commutator(lap, compose(mul(ctx, pa), d(ctx, pb)) - compose(mul(ctx, pb), d(ctx, pa))).is_zero());
    }
  }
}
