#include <iostream>

#include <catch2/catch_amalgamated.hpp>

#include "support/operators.hpp"
#include "ttquant/coords.hpp"
#include "ttquant/errors.hpp"
#include "ttquant/quantize.hpp"

using namespace ttq;
using namespace ttq::testing;

namespace {

std::vector<CotangentLift> standard_lifts(const ContextPtr& ctx) {
  return {cotangent_lift(PointTransformation::identity(ctx)), cotangent_lift(PointTransformation::rotate2d(ctx)),
          cotangent_lift(PointTransformation::scale(ctx)), cotangent_lift(PointTransformation::shear(ctx))};
}

}  // namespace

TEST_CASE("construction verifies the inverse") {
  auto ctx = make_context(2);
  CHECK_THROWS_AS(PointTransformation::make(ctx, {fn(ctx, "q1"), fn(ctx, "q2 + q1^2")}, {fn(ctx, "q1"), fn(ctx, "q2")}),
                  DomainError);
  CHECK_THROWS_AS(PointTransformation::make(ctx, {fn(ctx, "q1 + p1"), fn(ctx, "q2")}, {fn(ctx, "q1 - p1"), fn(ctx, "q2")}),
                  DomainError);
  CHECK_THROWS_AS(PointTransformation::scale(ctx, 0), SingularError);
  const auto t = PointTransformation::make(ctx, {fn(ctx, "q1"), fn(ctx, "q2/(1 + q1^2)")},
                                           {fn(ctx, "q1"), fn(ctx, "q2*(1 + q1^2)")});
  const auto lift = cotangent_lift(t);
  CHECK(lift.preserves_tautological_form());
  CHECK(lift.new_momenta()[1] == fn(ctx, "(1 + q1^2)*p2"));
  const auto x = tautological_vf(ctx).as_operator();
  CHECK(pushforward_operator(x, lift) == x);
}

TEST_CASE("transformations by name") {
  auto ctx = make_context(2);
  CHECK(transformation_by_name("shear", ctx).forward()[1] == fn(ctx, "q2 + q1^2"));
  CHECK(transformation_by_name("scale(3)", ctx).forward()[0] == fn(ctx, "3*q1"));
  CHECK(transformation_by_name("rotate2d", ctx).forward()[0] == fn(ctx, "3/5*q1 - 4/5*q2"));
  CHECK(transformation_by_name("rotate2d(1/3)", ctx).forward()[1] == fn(ctx, "3/5*q1 + 4/5*q2"));
  CHECK(transformation_by_name("identity", ctx).forward()[0] == fn(ctx, "q1"));
  CHECK_THROWS_AS(transformation_by_name("polar", ctx), Error);
  CHECK_THROWS_AS(transformation_by_name("shear", make_context(1)), DomainError);
}

TEST_CASE("cotangent lift examples") {
  auto ctx = make_context(2);
  const auto id = cotangent_lift(PointTransformation::identity(ctx));
  CHECK(id.new_momenta()[0] == fn(ctx, "p1"));
  CHECK(id.new_momenta()[1] == fn(ctx, "p2"));

  const auto shear = cotangent_lift(PointTransformation::shear(ctx));
  CHECK(shear.new_momenta()[0] == fn(ctx, "p1 - 2*q1*p2"));
  CHECK(shear.new_momenta()[1] == fn(ctx, "p2"));
  CHECK(shear.old_momenta()[0] == fn(ctx, "p1 + 2*q1*p2"));
  CHECK(shear.preserves_tautological_form());

  const auto rot = cotangent_lift(PointTransformation::rotate2d(ctx));
  CHECK(rot.new_momenta()[0] == fn(ctx, "3/5*p1 - 4/5*p2"));
  CHECK(rot.new_momenta()[1] == fn(ctx, "4/5*p1 + 3/5*p2"));
  CHECK(rot.preserves_tautological_form());

  const auto sc = cotangent_lift(PointTransformation::scale(ctx, 2));
  CHECK(sc.new_momenta()[0] == fn(ctx, "p1/2"));
}

TEST_CASE("function pushforward examples") {
  auto ctx = make_context(2);
  const auto shear = cotangent_lift(PointTransformation::shear(ctx));
  CHECK(pushforward_function(fn(ctx, "q1"), shear) == fn(ctx, "q1"));
  CHECK(pushforward_function(fn(ctx, "q2"), shear) == fn(ctx, "q2 - q1^2"));
  CHECK(pushforward_function(fn(ctx, "p2"), shear) == fn(ctx, "p2"));
  std::mt19937_64 rng(6);
  for (const auto& lift : standard_lifts(ctx)) {
    for (int k = 0; k < 20; ++k) {
      const auto f = random_polynomial(ctx, rng, 3, all_variables(ctx));
      REQUIRE(pullback_function(pushforward_function(f, lift), lift) == f);
    }
  }
}

TEST_CASE("operator pushforward examples") {
  auto ctx = make_context(2);
  const auto rot = cotangent_lift(PointTransformation::rotate2d(ctx));
  // d/dq1 = dQ1/dq1 d/dQ1 + dQ2/dq1 d/dQ2.
  CHECK(pushforward_operator(d(ctx, "q1"), rot) == term(ctx, "3/5", {1, 0, 0, 0}) + term(ctx, "4/5", {0, 1, 0, 0}));
  const auto shear = cotangent_lift(PointTransformation::shear(ctx));
  const auto x = tautological_vf(ctx).as_operator();
  CHECK(pushforward_operator(compose(x, x), shear) == compose(x, x));
}

TEST_CASE("tautological field is invariant under every lift") {
  auto ctx = make_context(2);
  const auto x = tautological_vf(ctx).as_operator();
  for (const auto& lift : standard_lifts(ctx)) {
    INFO(lift.base().name());
    CHECK(pushforward_operator(x, lift) == x);
  }
  auto ctx3 = make_context(3);
  const auto x3 = tautological_vf(ctx3).as_operator();
  CHECK(pushforward_operator(x3, cotangent_lift(PointTransformation::shear(ctx3))) == x3);
}

TEST_CASE("operator pushforward is natural for the action") {
  auto ctx = make_context(2);
  std::mt19937_64 rng(8);
  for (const auto& lift : standard_lifts(ctx)) {
    INFO(lift.base().name());
    for (int k = 0; k < 50; ++k) {
      const auto a = random_operator(ctx, rng);
      const auto f = random_polynomial(ctx, rng, 3, all_variables(ctx), 4);
      REQUIRE(apply(pushforward_operator(a, lift), pushforward_function(f, lift)) ==
              pushforward_function(apply(a, f), lift));
    }
  }
}

TEST_CASE("prequantization and first tuned map are chart independent") {
  auto ctx = make_context(2);
  std::mt19937_64 rng(10);
  for (const auto& lift : {cotangent_lift(PointTransformation::shear(ctx)), cotangent_lift(PointTransformation::rotate2d(ctx))}) {
    INFO(lift.base().name());
    for (int k = 0; k < 50; ++k) {
      const auto f = random_polynomial(ctx, rng, 3, all_variables(ctx));
      const auto g = pushforward_function(f, lift);
      REQUIRE(pushforward_operator(q_ks(f), lift) == q_ks(g));
      REQUIRE(pushforward_operator(q_tt1(f), lift) == q_tt1(g));
    }
  }
}

TEST_CASE("second tuned map is chart independent under rotations") {
  auto ctx = make_context(2);
  const auto cfg = QuantizationConfig::for_map(MapKind::Tuned2, ctx);
  std::mt19937_64 rng(12);
  const auto rot = cotangent_lift(PointTransformation::rotate2d(ctx));
  for (int k = 0; k < 30; ++k) {
    const auto f = random_polynomial(ctx, rng, 3, all_variables(ctx));
    REQUIRE(pushforward_operator(q_tt2(f, cfg), rot) == q_tt2(pushforward_function(f, rot), cfg));
  }
  // Under the shear the flat Laplacian is not preserved; report only.
  const auto shear = cotangent_lift(PointTransformation::shear(ctx));
  int agree = 0;
  const char* samples[] = {"q1", "p1", "p2", "q1*p2 - q2*p1", "(p1^2 + p2^2)/(2*m)"};
  for (const char* text : samples) {
    const auto f = fn(ctx, text);
    if (pushforward_operator(q_tt2(f, cfg), shear) == q_tt2(pushforward_function(f, shear), cfg)) ++agree;
  }
  std::cout << "second tuned map under shear: " << agree << "/5 sample functions equivariant\n";
}

TEST_CASE("canonical quantization depends on the chart") {
  auto ctx = make_context(2);
  const auto shear = cotangent_lift(PointTransformation::shear(ctx));
  for (const char* text : {"p1*p2", "p1^2"}) {
    INFO(text);
    const auto f = fn(ctx, text);
    CHECK_FALSE(pushforward_operator(q_c(f), shear) == q_c(pushforward_function(f, shear)));
  }
  // The p1^2 discrepancy survives the polarization; p1*p2 differs in
  // momentum-derivative terms only.
  const auto f = fn(ctx, "p1^2");
  CHECK_FALSE(restrict_to_polarized(pushforward_operator(q_c(f), shear)) ==
              restrict_to_polarized(q_c(pushforward_function(f, shear))));
  // Linear charts do not expose the dependence.
  const auto rot = cotangent_lift(PointTransformation::rotate2d(ctx));
  CHECK(pushforward_operator(q_c(fn(ctx, "p1*p2")), rot) == q_c(pushforward_function(fn(ctx, "p1*p2"), rot)));
}
