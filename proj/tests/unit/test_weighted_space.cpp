#include <doctest.h>

#include <cmath>

#include "nonlocal/random_fields.hpp"
#include "nonlocal/weighted_space.hpp"

using namespace nonlocal;

namespace {

SpacePtr cauchy_space(double L = 50.0, std::ptrdiff_t n = 4096) {
  return make_space(Grid1D(L, n), WeightFunction::cauchy());
}

Vector sample(const Grid1D& grid, double (*f)(double)) {
  Vector v(grid.size());
  for (std::ptrdiff_t i = 0; i < grid.size(); ++i) v(i) = f(grid.node(i));
  return v;
}

}  // namespace

TEST_SUITE("weighted_space") {

TEST_CASE("grid construction and validation") {
  const Grid1D g(50.0, 4096);
  CHECK(g.spacing() == doctest::Approx(100.0 / 4096).epsilon(1e-15));
  CHECK(g.node(0) == -50.0);
  CHECK(g.node(2048) == 0.0);
  CHECK(g.nodes().size() == 4096);
  CHECK(std::abs(g.node(g.interior_first())) <= 49.0);
  CHECK(std::abs(g.node(g.interior_first() - 1)) > 49.0);
  CHECK(std::abs(g.node(g.interior_last())) <= 49.0);
  CHECK_THROWS_AS(Grid1D(3.0, 4096), Error);
  CHECK_THROWS_AS(Grid1D(50.0, 8), Error);
}

TEST_CASE("unit constant has unit Cauchy norm") {
  const auto space = cauchy_space(200.0, 8192);
  const auto one = WeightedField::constant(space, 1.0);
  CHECK(weighted_norm(one, 2.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(weighted_norm(one, 3.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("zero field has zero norm exactly") {
  for (auto w : {WeightFunction::cauchy(), WeightFunction::gaussian()}) {
    const auto zero = WeightedField::zero(make_space(Grid1D(20.0, 512), w));
    for (double p : {1.0, 2.0, 3.0, 7.5}) CHECK(weighted_norm(zero, p) == 0.0);
  }
}

TEST_CASE("half-line indicator") {
  const auto space = cauchy_space(200.0, 8192);
  const auto& g = space->grid();
  Vector v(g.size());
  for (std::ptrdiff_t i = 0; i < g.size(); ++i) v(i) = g.node(i) > 0.0 ? 1.0 : (g.node(i) == 0.0 ? std::sqrt(0.5) : 0.0);
  // int_0^inf dx / (pi (1 + x^2)) = 1/2
  CHECK(weighted_norm(WeightedField(space, v), 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(2e-3));
}

TEST_CASE("analytic integrals against the quadrature") {
  SUBCASE("Cauchy, u = (1 + x^2)^{-1/2}") {
    // int (1 + x^2)^{-2} / pi dx = 1/2
    const auto space = cauchy_space();
    const Vector u = sample(space->grid(), [](double x) { return 1.0 / std::sqrt(1.0 + x * x); });
    CHECK(weighted_norm(*space, u, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));
  }
  SUBCASE("Gaussian, u = x") {
    // second moment of the standard normal
    const auto space = make_space(Grid1D(20.0, 4096), WeightFunction::gaussian());
    const Vector u = sample(space->grid(), [](double x) { return x; });
    CHECK(weighted_norm(*space, u, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("Gaussian, p = 1, u = |x|") {
    const auto space = make_space(Grid1D(20.0, 4096), WeightFunction::gaussian());
    const Vector u = sample(space->grid(), [](double x) { return std::abs(x); });
    CHECK(weighted_norm(*space, u, 1.0) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-5));
  }
}

TEST_CASE("folded tails make the total mass one") {
  for (auto w : {WeightFunction::cauchy(), WeightFunction::gaussian()}) {
    const auto space = make_space(Grid1D(30.0, 2048), w);
    CHECK(space->total_mass() == doctest::Approx(1.0).epsilon(1e-3));
  }
  const auto space = cauchy_space();
  // The last node is L - dx.
  const double last = 50.0 - space->grid().spacing();
  CHECK(truncation_tail(*space) ==
        doctest::Approx((std::atan(1.0 / 50.0) + std::atan(1.0 / last)) / M_PI).epsilon(1e-12));
}

TEST_CASE("estimate_K") {
  // sup_y (1 + y^2) / (1 + (y - 1)^2) is attained at the golden ratio and equals its square.
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const Grid1D g(50.0, 4096);
  const double K = estimate_K(WeightFunction::cauchy(), g);
  // On the grid the largest shift is floor(1/dx) dx.
  const double d = std::floor(1.0 / g.spacing()) * g.spacing();
  double oracle = 0.0;
  for (double y = 0.0; y < 5.0; y += 1e-5) oracle = std::max(oracle, (1.0 + y * y) / (1.0 + (y - d) * (y - d)));
  CHECK(K == doctest::Approx(oracle).epsilon(1e-3));
  CHECK(K <= phi * phi);
  CHECK(K <= 3.0);
  CHECK(estimate_K([](double) { return 0.25; }, Grid1D(10.0, 256)) == 1.0);
  CHECK(estimate_K(WeightFunction::gaussian(), Grid1D(10.0, 1024)) >= 1.0);
}

TEST_CASE("rho_inf_unit_ball") {
  CHECK(rho_inf_unit_ball(WeightFunction::cauchy()) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-6));
  CHECK(rho_inf_unit_ball(WeightFunction::gaussian()) ==
        doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * M_PI)).epsilon(1e-6));
}

TEST_CASE("tail_mass") {
  const Grid1D g(200.0, 8192);
  const auto rho = WeightFunction::cauchy();
  CHECK(tail_mass(rho, 100.0, g) == doctest::Approx(2.0 / M_PI * std::atan(0.01)).epsilon(1e-7));
  CHECK(tail_mass(rho, 1.0, g) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tail_mass(rho, 1e-12, g) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tail_mass(WeightFunction::gaussian(), 1.0, g) == doctest::Approx(std::erfc(1.0 / std::sqrt(2.0))));
  CHECK_THROWS_AS(tail_mass(rho, 200.0, g), Error);

  double previous = 2.0;
  for (double R = 0.25; R < 199.0; R *= 1.3) {
    const double m = tail_mass(rho, R, g);
    CHECK(m < previous);
    previous = m;
  }
}

TEST_CASE("w1p_seminorm") {
  const auto space = make_space(Grid1D(50.0, 10000), WeightFunction::cauchy());
  const auto& g = space->grid();
  CHECK(w1p_seminorm(WeightedField::constant(space, 3.0), 2.0) <= 1e-12);

  const Vector s = sample(g, [](double x) { return std::sin(x); });
  const Vector c = sample(g, [](double x) { return std::cos(x); });
  CHECK(std::abs(w1p_seminorm(WeightedField(space, s), 2.0) - weighted_norm(*space, c, 2.0)) <= 1e-3);

  // A unit step has a one-cell derivative of height 1/(2dx): seminorm ~ dx^{1/p - 1}.
  auto step_seminorm = [](std::ptrdiff_t n) {
    const auto sp = make_space(Grid1D(20.0, n), WeightFunction::cauchy());
    Vector u(n);
    for (std::ptrdiff_t i = 0; i < n; ++i) u(i) = sp->grid().node(i) >= 0.3 ? 1.0 : 0.0;
    return w1p_seminorm(WeightedField(sp, u), 2.0);
  };
  CHECK(step_seminorm(4096) / step_seminorm(2048) == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("norm homogeneity") {
  const auto space = cauchy_space();
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = stream(11, i);
    const WeightedField u = random_smooth_field(space, rng);
    for (double p : {1.0, 2.0, 3.0}) {
      const double base = weighted_norm(u, p);
      for (double c : {-2.0, 0.5, 10.0}) {
        CHECK(weighted_norm(*space, c * u.values(), p) == doctest::Approx(std::abs(c) * base).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("triangle inequality") {
  const auto space = cauchy_space();
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = stream(12, i);
    const WeightedField u = random_smooth_field(space, rng);
    const WeightedField v = random_smooth_field(space, rng);
    for (double p : {1.0, 2.0, 3.0}) {
      CHECK(weighted_norm(*space, u.values() + v.values(), p) <= weighted_norm(u, p) + weighted_norm(v, p) + 1e-12);
    }
  }
}

TEST_CASE("nested exponents on the finite measure") {
  const auto space = cauchy_space();
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = stream(13, i);
    const WeightedField u = random_smooth_field(space, rng);
    for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{2.0, 3.0}, std::pair{2.0, 4.0}}) {
      const double C = std::pow(space->total_mass(), 1.0 / p - 1.0 / q);
      CHECK(holder_constant(*space, p, q) == doctest::Approx(C).epsilon(1e-15));
      CHECK(weighted_norm(u, p) <= C * weighted_norm(u, q) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("exterior norm") {
  const auto space = cauchy_space();
  const auto one = WeightedField::constant(space, 1.0);
  // Nodes beyond R plus the folded tails: the exterior of B(0; R) has mass ~ (2/pi) atan(1/R).
  CHECK(exterior_weighted_norm(one, 10.0, 1.0) == doctest::Approx(2.0 / M_PI * std::atan(0.1)).epsilon(2e-3));
  CHECK(exterior_weighted_norm(one, 0.0, 2.0) <= weighted_norm(one, 2.0));
}

TEST_CASE("field and exponent errors") {
  const auto space = cauchy_space(10.0, 256);
  CHECK_THROWS_AS(WeightedField(space, Vector::Zero(255)), Error);
  Vector bad = Vector::Zero(256);
  bad(3) = std::nan("");
  CHECK_THROWS_AS(WeightedField(space, bad), Error);
  CHECK_THROWS_AS(weighted_norm(WeightedField::zero(space), 0.5), Error);
  const auto other = WeightedField::zero(cauchy_space(12.0, 256));
  CHECK_THROWS_AS(check_same_space(WeightedField::zero(space), other), Error);
  try {
    weighted_norm(WeightedField::zero(space), 0.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

}  // TEST_SUITE
