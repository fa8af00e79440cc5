#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "nonlocal/attractor.hpp"

using namespace nonlocal;

namespace {

ProcessConfig small_config(double beta, ExternalField field = ExternalField::zero()) {
  return make_process_config(beta, Grid1D(25.0, 2048), WeightFunction::cauchy(), Nonlinearity::tanh(),
                             std::move(field));
}

SamplingPlan small_plan() {
  SamplingPlan plan;
  plan.constants = 5;
  plan.random = 4;
  return plan;
}

}  // namespace

TEST_SUITE("attractor") {

TEST_CASE("absorbing entry time") {
  CHECK(absorbing_entry_time(0.0, 10.0, 0.1) == doctest::Approx(std::log(0.01)).epsilon(1e-15));
  CHECK(absorbing_entry_time(0.0, 10.0, 0.1) == doctest::Approx(-4.60517).epsilon(1e-6));
  CHECK(absorbing_entry_time(3.0, 0.2, 0.2) == 3.0);
  CHECK_THROWS_AS(absorbing_entry_time(0.0, 0.0, 0.1), Error);
  CHECK_THROWS_AS(absorbing_entry_time(0.0, 1.0, -0.1), Error);
}

TEST_CASE("Hausdorff semidistance") {
  const auto space = make_space(Grid1D(10.0, 512), WeightFunction::cauchy());
  const auto zero = WeightedField::zero(space);
  const auto c = WeightedField::constant(space, 0.4);
  const auto d = WeightedField::constant(space, -0.3);
  const double c_norm = weighted_norm(c, 2.0);

  CHECK(hausdorff_semidist(FieldSet{zero}, FieldSet{zero, c}, 2.0) == 0.0);
  CHECK(hausdorff_semidist(FieldSet{zero, c}, FieldSet{zero}, 2.0) == doctest::Approx(c_norm));
  CHECK(hausdorff_semidist(FieldSet{c}, FieldSet{d}, 2.0) ==
        doctest::Approx(weighted_norm(*space, c.values() - d.values(), 2.0)));
  CHECK(hausdorff_distance(FieldSet{zero}, FieldSet{zero, c}, 2.0) == doctest::Approx(c_norm));
  CHECK(hausdorff_semidist(FieldSet{c, d}, FieldSet{d, zero, c}, 2.0) == 0.0);
  CHECK_THROWS_AS(hausdorff_semidist(FieldSet{}, FieldSet{zero}, 2.0), Error);
  CHECK_THROWS_AS(hausdorff_semidist(FieldSet{zero}, FieldSet{}, 2.0), Error);

  const auto tiny = WeightedField::constant(space, 1e-5);
  const FieldSet kept = deduplicate(FieldSet{zero, tiny, c, zero}, 1e-3, 2.0);
  CHECK(kept.size() == 2);
}

TEST_CASE("absorbing ball sample") {
  const auto cfg = small_config(2.0);
  const SamplingPlan plan;
  const FieldSet ics = absorbing_ball_sample(cfg, plan);
  REQUIRE(ics.size() == static_cast<std::size_t>(plan.constants + plan.random));
  for (const auto& u : ics) CHECK(weighted_norm(u, 2.0) < 1.0 + plan.eps);
  CHECK(ics[plan.constants / 2].values().cwiseAbs().maxCoeff() == 0.0);
  const FieldSet again = absorbing_ball_sample(cfg, plan);
  for (std::size_t i = 0; i < ics.size(); ++i) CHECK(ics[i].values() == again[i].values());
  SamplingPlan empty = plan;
  empty.constants = 0;
  empty.random = 0;
  CHECK_THROWS_AS(absorbing_ball_sample(cfg, empty), Error);
}

TEST_CASE("contraction regime gives the zero singleton") {
  const auto cfg = small_config(0.5);
  const AttractorSample a = approximate_pullback_attractor(0.0, cfg, small_plan(), {-10.0, -20.0, -40.0});
  CHECK(a.converged);
  REQUIRE(a.members.size() == 1);
  CHECK(a.members[0].values().cwiseAbs().maxCoeff() <= 1e-4);
  CHECK(a.provenance.cfg_digest == cfg.digest());
  CHECK(a.rung_distances.size() == 2);
}

TEST_CASE("bistable regime: constants, ball, invariance, attraction") {
  const auto cfg = small_config(2.0);
  const SamplingPlan plan = small_plan();
  const std::vector<double> ladder{-10.0, -20.0, -40.0};
  const AttractorSample a = approximate_pullback_attractor(0.0, cfg, plan, ladder);
  CHECK(a.converged);
  for (double target : {-0.957504, 0.0, 0.957504}) {
    double best = 1e9;
    for (const auto& m : a.members) best = std::min(best, (m.values().array() - target).abs().maxCoeff());
    CHECK(best <= 1e-4);
  }
  for (const auto& m : a.members) CHECK(weighted_norm(m, 2.0) <= 1.0 + 1e-3);

  // Invariance: S(0, -10) applied to the sample at -10 reproduces the sample at 0.
  const AttractorSample earlier = approximate_pullback_attractor(-10.0, cfg, plan, {-20.0, -30.0, -50.0});
  FieldSet pushed;
  for (const auto& m : earlier.members) pushed.push_back(evolve(m, -10.0, 0.0, cfg));
  CHECK(hausdorff_distance(pushed, a.members, 2.0) <= 5.0 * plan.cluster_tol);

  // Pullback attraction: the distance of S(0, tau) D to A(0) does not grow along the ladder.
  const FieldSet D = absorbing_ball_sample(cfg, plan);
  double previous = 1e9;
  for (double tau : {-2.0, -5.0, -10.0, -20.0}) {
    FieldSet image;
    for (const auto& u : D) image.push_back(evolve(u, tau, 0.0, cfg));
    const double d = hausdorff_semidist(image, a.members, 2.0);
    CHECK(d <= previous + 1e-9);
    previous = d;
  }

  // Absorbing monotonicity: deeper starts never increase the excess over a.
  SamplingPlan wide = plan;
  wide.constants = 3;
  wide.random = 0;
  wide.eps = 5.0;
  const FieldSet big = absorbing_ball_sample(cfg, wide);
  for (const auto& u : big) {
    double excess = 1e9;
    for (double tau : {-1.0, -2.0, -4.0, -8.0}) {
      const double e = weighted_norm(evolve(u, tau, 0.0, cfg), 2.0) - 1.0;
      CHECK(e <= std::max(excess, 0.0) + 1e-9);
      excess = e;
    }
  }
}

TEST_CASE("ladder validation") {
  const auto cfg = small_config(0.5);
  CHECK_THROWS_AS(approximate_pullback_attractor(0.0, cfg, small_plan(), {}), Error);
  CHECK_THROWS_AS(approximate_pullback_attractor(0.0, cfg, small_plan(), {-10.0, -5.0}), Error);
  CHECK_THROWS_AS(approximate_pullback_attractor(0.0, cfg, small_plan(), {1.0}), Error);
}

TEST_CASE("sample is independent of the worker count") {
  const auto cfg = small_config(2.0);
  SamplingPlan plan = small_plan();
  plan.random = 3;
  setenv("NONLOCAL_LAB_THREADS", "1", 1);
  const AttractorSample one = approximate_pullback_attractor(0.0, cfg, plan, {-3.0, -6.0});
  setenv("NONLOCAL_LAB_THREADS", "4", 1);
  const AttractorSample four = approximate_pullback_attractor(0.0, cfg, plan, {-3.0, -6.0});
  unsetenv("NONLOCAL_LAB_THREADS");
  REQUIRE(one.members.size() == four.members.size());
  for (std::size_t i = 0; i < one.members.size(); ++i) CHECK(one.members[i].values() == four.members[i].values());
  CHECK(one.rung_distances == four.rung_distances);
}

TEST_CASE("field family and sweep endpoints") {
  const auto h0 = ExternalField::modulated_tanh2(0.1, 1.0);
  const auto family = scaled_field_family();
  for (double eps : {0.0, 0.05, 0.4, 1.0}) CHECK(family(h0, eps).h_sup == doctest::Approx((1.0 - eps) * 0.1));
  CHECK_THROWS_AS(family(h0, 1.5), Error);

  const auto cfg = small_config(2.0, h0);
  SamplingPlan plan = small_plan();
  plan.random = 2;
  const SemicontinuityCurve c = upper_semicontinuity_sweep(0.0, cfg, {0.2, 0.0}, plan, {-3.0, -6.0});
  REQUIRE(c.distances.size() == 2);
  CHECK(c.distances[1] == 0.0);
  CHECK(c.envelopes[1] == 0.0);
  CHECK(c.field_gaps[0] == doctest::Approx(0.02));
  CHECK(c.distances[0] > 0.0);
  CHECK(c.distances[0] <= c.envelopes[0]);
}

}  // TEST_SUITE
