#include <catch2/catch_amalgamated.hpp>

#include "support/random.hpp"
#include "ttquant/errors.hpp"
#include "ttquant/parser.hpp"

using namespace ttq;
using ttq::testing::random_point;
using ttq::testing::random_polynomial;

namespace {

PhaseFunction random_rational_function(const ContextPtr& ctx, std::mt19937_64& rng,
                                       const std::vector<std::size_t>& vars) {
  PhaseFunction num = random_polynomial(ctx, rng, 2, vars, 3);
  PhaseFunction den = random_polynomial(ctx, rng, 2, vars, 2);
  while (den.is_zero()) den = random_polynomial(ctx, rng, 2, vars, 2);
  return num / den;
}

/// Evaluates both sides at random points, skipping poles of either side.
bool agree_at_random_points(const PhaseFunction& a, const PhaseFunction& b, std::mt19937_64& rng, int count = 20) {
  int checked = 0;
  for (int attempt = 0; checked < count && attempt < 10 * count; ++attempt) {
    const Point pt = random_point(a.context(), rng, 50);
    try {
      if (!(evaluate(a, pt) == evaluate(b, pt))) return false;
      ++checked;
    } catch (const PoleError&) {
    }
  }
  return checked == count;
}

}  // namespace

TEST_CASE("parse angular momentum has two monomials") {
  auto ctx = make_context(3);
  const auto l3 = parse("q1*p2 - q2*p1", ctx);
  CHECK(l3.is_polynomial());
  CHECK(l3.numerator().size() == 2);
  CHECK(l3 == PhaseFunction::q(ctx, 0) * PhaseFunction::p(ctx, 1) - PhaseFunction::q(ctx, 1) * PhaseFunction::p(ctx, 0));
}

TEST_CASE("parse zero is canonical zero") {
  auto ctx = make_context(1);
  const auto z = parse("0", ctx);
  CHECK(z.is_zero());
  CHECK(z.denominator().is_one());
  CHECK(parse("q1 - q1", ctx) == z);
}

TEST_CASE("parse harmonic oscillator clears denominators") {
  auto ctx = make_context(1);
  const auto h = parse("p1^2/(2*m) + (m*omega^2*q1^2)/2", ctx);
  CHECK(h.denominator() == PhaseFunction::param(ctx, "m").numerator());
  const auto expected_num = parse("p1^2/2 + m^2*omega^2*q1^2/2", ctx);
  CHECK(h.numerator() == expected_num.numerator());
  CHECK(format(h) == "(m^2*omega^2*q1^2 + p1^2)/(2*m)");
}

TEST_CASE("parse reports syntax errors with position") {
  auto ctx = make_context(1);
  try {
    parse("q1 + * p1", ctx);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse("(q1 + p1", ctx), ParseError);
  CHECK_THROWS_AS(parse("q1^p1", ctx), ParseError);
  CHECK_THROWS_AS(parse("q1 $ p1", ctx), ParseError);
  CHECK_THROWS_AS(parse("", ctx), ParseError);
}

TEST_CASE("parse reports unknown identifiers by name") {
  auto ctx = make_context(1);
  try {
    parse("q1 + q2", ctx);
    FAIL("expected an unknown identifier");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.token() == "q2");
    CHECK(e.position() == 5);
  }
}

TEST_CASE("parse accepts imaginary unit and decimals") {
  auto ctx = make_context(1);
  const auto f = parse("i*hbar*1.5", ctx);
  CHECK(f == PhaseFunction::param(ctx, "hbar").scaled(GaussRational(0, mpq_class(3, 2))));
  CHECK(parse("i^2", ctx) == PhaseFunction::constant(ctx, -1));
}

TEST_CASE("arithmetic examples") {
  auto ctx = make_context(1);
  const auto q1 = PhaseFunction::q(ctx, 0);
  const auto p1 = PhaseFunction::p(ctx, 0);
  CHECK((q1 + (-q1)).is_zero());
  CHECK((p1 / q1) * q1 == p1);
  CHECK_THROWS_AS(q1 / PhaseFunction(ctx), DivisionByZeroError);
}

TEST_CASE("difference of squares divides exactly") {
  auto ctx = make_context(1);
  const auto lhs = parse("(q1^2 - p1^2)/(q1 - p1)", ctx);
  const auto rhs = parse("q1 + p1", ctx);
  std::mt19937_64 rng(11);
  // Oracle: pointwise agreement of the unreduced quotient at 20 rational points.
  int checked = 0;
  while (checked < 20) {
    const Point pt = random_point(ctx, rng);
    const GaussRational q = pt.at(ctx->q(0)), p = pt.at(ctx->p(0));
    if ((q - p).is_zero()) continue;
    CHECK(evaluate(rhs, pt) == (q * q - p * p) / (q - p));
    ++checked;
  }
  CHECK(lhs == rhs);
  CHECK(lhs.is_polynomial());
}

TEST_CASE("cross-context operations are rejected") {
  auto a = make_context(1);
  auto b = make_context(2);
  CHECK_THROWS_AS(PhaseFunction::q(a, 0) + PhaseFunction::q(b, 0), ContextMismatchError);
  // Structurally identical contexts interoperate.
  auto c = make_context(1);
  CHECK(PhaseFunction::q(a, 0) == PhaseFunction::q(c, 0));
}

TEST_CASE("differentiate examples") {
  auto ctx = make_context(3);
  const auto l3 = parse("q1*p2 - q2*p1", ctx);
  CHECK(differentiate(l3, ctx->p(1)) == PhaseFunction::q(ctx, 0));
  CHECK(differentiate(parse("hbar^2*m/omega", ctx), ctx->q(0)).is_zero());
  CHECK_THROWS_AS(differentiate(l3, ctx->param("hbar")), VariableError);
  CHECK_THROWS_AS(differentiate(l3, 99), VariableError);
}

TEST_CASE("quotient-rule derivative matches central differences") {
  auto ctx = make_context(1);
  const auto f = parse("p1^2/q1", ctx);
  const auto df = differentiate(f, ctx->q(0));
  CHECK(df == parse("-p1^2/q1^2", ctx));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Point pt = random_point(ctx, rng);
    if (pt[ctx->q(0)].is_zero() || pt[ctx->p(0)].is_zero()) continue;
    const GaussRational exact = evaluate(df, pt);
    // Exact central differences: error is O(h^2) with no rounding.
    mpq_class previous_error = -1;
    for (int k = 4; k <= 12; k += 4) {
      const GaussRational h{mpq_class(1, 1L << k)};
      Point plus = pt, minus = pt;
      plus[ctx->q(0)] += h;
      minus[ctx->q(0)] -= h;
      const GaussRational fd = (evaluate(f, plus) - evaluate(f, minus)) / (GaussRational(2) * h);
      const mpq_class err = (fd - exact).norm();
      if (previous_error >= 0) CHECK(err < previous_error);
      previous_error = err;
    }
    CHECK(previous_error < mpq_class(1, 1000000));
  }
}

TEST_CASE("substitute examples") {
  auto ctx = make_context(2);
  const auto q1 = PhaseFunction::q(ctx, 0);
  const auto q2 = PhaseFunction::q(ctx, 1);
  const auto p1 = PhaseFunction::p(ctx, 0);
  CHECK(substitute(p1 * q1, {{ctx->q(0), q1}, {ctx->p(0), p1}}) == p1 * q1);
  CHECK(substitute(q2, {{ctx->q(1), q2 - q1 * q1}}) == q2 - q1 * q1);
  CHECK(substitute(q1 * q2, {{ctx->q(0), q2}, {ctx->q(1), q1}}) == q1 * q2);
  CHECK(substitute(parse("1/(q1+1)", ctx), {{ctx->q(0), parse("1/q2", ctx)}}) == parse("q2/(1+q2)", ctx));
  try {
    substitute(parse("1/q1", ctx), {{ctx->q(0), PhaseFunction(ctx)}});
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(std::string(e.what()).find("q1 -> 0") != std::string::npos);
  }
}

TEST_CASE("zero test examples") {
  auto ctx = make_context(1);
  CHECK_FALSE(is_identically_zero(PhaseFunction::p(ctx, 0)));
  const auto expr = parse("(q1+p1)*(q1-p1) - q1^2 + p1^2", ctx);
  CHECK(is_identically_zero(expr));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const Point pt = random_point(ctx, rng);
    const auto q = pt.at(ctx->q(0)), p = pt.at(ctx->p(0));
    CHECK(((q + p) * (q - p) - q * q + p * p).is_zero());
  }
}

TEST_CASE("evaluate examples") {
  auto ctx = make_context(3);
  const auto l3 = parse("q1*p2 - q2*p1", ctx);
  Point pt{{ctx->q(0), 1}, {ctx->q(1), 2}, {ctx->q(2), 0}, {ctx->p(0), 3}, {ctx->p(1), 4}, {ctx->p(2), 0}};
  CHECK(evaluate(l3, pt) == GaussRational(-2));
  auto ctx1 = make_context(1);
  const auto h = parse("p1^2/(2*m) + (m*omega^2*q1^2)/2", ctx1);
  CHECK(evaluate(h, {{ctx1->q(0), 0}, {ctx1->p(0), 0}, {ctx1->param("m"), 1}, {ctx1->param("omega"), 3}}) ==
        GaussRational(0));
  CHECK_THROWS_AS(evaluate(parse("1/q1", ctx1), {{ctx1->q(0), 0}}), PoleError);
  CHECK_THROWS_AS(evaluate(parse("q1", ctx1), {}), VariableError);
}

TEST_CASE("polynomial gcd") {
  auto ctx = make_context(2);
  auto poly = [&](const char* s) { return parse(s, ctx).numerator(); };
  CHECK(gcd(poly("(q1+p1)*(q1-p1)"), poly("(q1+p1)^2")) == poly("q1+p1").monic());
  CHECK(gcd(poly("q1^2+1"), poly("q1-i")) == poly("q1-i"));
  CHECK(gcd(poly("q1^3*p1*(q2+hbar)"), poly("q1*p1^2*(q2+hbar)^2")) == poly("q1*p1*(q2+hbar)").monic());
  CHECK(gcd(poly("q1+1"), poly("q1+2")).is_one());
  CHECK(gcd(Polynomial(ctx->nvars()), poly("2*q1")) == poly("q1"));
}

TEST_CASE("exact square roots") {
  auto ctx = make_context(2);
  auto poly = [&](const char* s) { return parse(s, ctx).numerator(); };
  CHECK(exact_sqrt(poly("(q1^2 + 3*q2 - 1/2)^2")) == poly("q1^2 + 3*q2 - 1/2"));
  CHECK(exact_sqrt(poly("4*q1^2")) == poly("2*q1"));
  CHECK_FALSE(exact_sqrt(poly("2*q1^2")).has_value());
  CHECK_FALSE(exact_sqrt(poly("q1^2 + 1")).has_value());
}

TEST_CASE("field axioms on random rational functions") {
  auto ctx = make_context(1);
  const std::vector<std::size_t> vars{ctx->q(0), ctx->p(0), ctx->param("m")};
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_rational_function(ctx, rng, vars);
    const auto b = random_rational_function(ctx, rng, vars);
    const auto c = random_rational_function(ctx, rng, vars);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a * b) * c == a * (b * c));
  }
}

TEST_CASE("canonical forms agree exactly when evaluations agree") {
  auto ctx = make_context(1);
  const std::vector<std::size_t> vars{ctx->q(0), ctx->p(0), ctx->param("hbar")};
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_rational_function(ctx, rng, vars);
    PhaseFunction g(ctx);
    if (trial % 2 == 0) {
      // Same function built along a different route.
      const auto h = random_rational_function(ctx, rng, vars);
      g = h.is_zero() ? f : (f * h + h) / h - PhaseFunction::constant(ctx, 1);
    } else {
      g = f + random_polynomial(ctx, rng, 2, vars, 2);
    }
    const bool same_values = agree_at_random_points(f, g, rng);
    CHECK(same_values == (f == g));
    if (same_values) {
      CHECK(f.numerator() == g.numerator());
      CHECK(f.denominator() == g.denominator());
    }
  }
}

TEST_CASE("Leibniz rule for differentiation") {
  auto ctx = make_context(2);
  const auto vars = ttq::testing::phase_variables(ctx);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_rational_function(ctx, rng, vars);
    const auto g = random_polynomial(ctx, rng, 3, vars);
    const auto v = vars[pick(rng)];
    REQUIRE(differentiate(f * g, v) == f * differentiate(g, v) + g * differentiate(f, v));
  }
}

TEST_CASE("format then parse is the identity on the built-in corpus") {
  auto ctx = make_context(3);
  const std::vector<std::string> corpus{
      "q1", "q2", "q3", "p1", "p2", "p3",
      "q2*p3 - q3*p2", "q3*p1 - q1*p3", "q1*p2 - q2*p1",
      "(p1^2 + p2^2 + p3^2)/(2*m) + m*omega^2*(q1^2 + q2^2 + q3^2)/2",
      "(p1^2 + p2^2 + p3^2)/(2*m)",
      "-hbar^2/(2*m)", "i*hbar*(q1 + 2/3*p1)/(q2 - 1/2)", "(1 + 2*i)*q1/(3*q2^2 + 1)", "-7/3"};
  for (const auto& text : corpus) {
    const auto f = parse(text, ctx);
    const auto printed = format(f);
    INFO(text << " -> " << printed);
    CHECK(parse(printed, ctx) == f);
    CHECK(format(parse(printed, ctx)) == printed);
  }
  CHECK(format(parse("-hbar^2/(2*m)", ctx)) == "-hbar^2/(2*m)");
  CHECK(format(parse("q1*p2 - q2*p1", ctx)) == "q1*p2 - q2*p1");
}

TEST_CASE("format property on random rational functions") {
  auto ctx = make_context(2);
  const auto vars = ttq::testing::all_variables(ctx);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_rational_function(ctx, rng, vars).scaled(GaussRational(ttq::testing::random_rational(rng), ttq::testing::random_rational(rng)));
    REQUIRE(parse(format(f), ctx) == f);
  }
}

TEST_CASE("context rejects bad definitions") {
  CHECK_THROWS_AS(PhaseContext(0), Error);
  CHECK_THROWS_AS(PhaseContext(1, {"q1"}), Error);
  CHECK_THROWS_AS(PhaseContext(1, {"m", "m"}), Error);
  CHECK_THROWS_AS(PhaseContext(1, {"i"}), Error);
  const PhaseContext ctx(2, {"hbar", "k"});
  CHECK(ctx.name(ctx.param("k")) == "k");
  CHECK(ctx.lookup("p2") == ctx.p(1));
}
