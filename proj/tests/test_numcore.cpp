#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gradlab/field.hpp"
#include "gradlab/rng.hpp"
#include "gradlab/sampling.hpp"
#include "gradlab/zoo.hpp"

using namespace gradlab;

namespace {

Vec seeded_point(const CounterRng& rng, std::uint64_t k, int dim, double lo, double hi) {
  Vec u(dim);
  for (int j = 0; j < dim; ++j) u[j] = rng.uniform(k * 16 + static_cast<std::uint64_t>(j), lo, hi);
  return u;
}

}  // namespace

TEST_CASE("gradient of an affine field is its coefficient vector") {
  const ScalarField f = make_zoo_field("affine:0.6,0.8:1.0");
  const Vec g = gradient(f, vec_of({7.0, -2.0}));
  CHECK(g[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("sqrt_quadratic gradient vanishes at the origin and matches FD at (1,0)") {
  const ScalarField f = make_zoo_field("sqrt_quadratic", 2);
  const Vec g0 = gradient(f, Vec::Zero(2));
  CHECK(g0.norm() == doctest::Approx(0.0).epsilon(1e-14));

  const Vec u = vec_of({1.0, 0.0});
  const Vec fd = fd_gradient(f, u, 1e-6);
  const Vec an = gradient(f, u);
  CHECK(an[0] == doctest::Approx(0.70710678118654752).epsilon(1e-12));
  CHECK(an[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((fd - an).lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("fd_gradient basics") {
  SUBCASE("constant field gives the zero vector") {
    const ScalarField f = make_zoo_field("constant:3.5", 3);
    const Vec g = fd_gradient(f, vec_of({0.3, -1.1, 2.0}), 1e-5);
    CHECK(g.lpNorm<Eigen::Infinity>() < 1e-10);
  }
  SUBCASE("linear fields are exact for any step") {
    const ScalarField f = make_zoo_field("affine:2,-3:0.25");
    const Vec u = vec_of({0.7, 1.9});
    for (double step : {1e-8, 1e-5, 1e-2, 1.0}) {
      const Vec g = fd_gradient(f, u, step);
      CHECK(std::abs(g[0] - 2.0) < 1e-6);
      CHECK(std::abs(g[1] + 3.0) < 1e-6);
    }
  }
  SUBCASE("u1^2 derivative at 1 with step 1e-4") {
    ScalarField f;
    f.dim = 1;
    f.label = "square";
    f.eval = [](const Vec& u) { return u[0] * u[0]; };
    const Vec g = fd_gradient(f, vec_of({1.0}), 1e-4);
    CHECK(std::abs(g[0] - 2.0) < 1e-7);
  }
  SUBCASE("step must be positive") {
    const ScalarField f = make_zoo_field("constant:0", 2);
    CHECK_THROWS_AS(fd_gradient(f, Vec::Zero(2), 0.0), std::invalid_argument);
  }
  SUBCASE("dimension mismatch is rejected") {
    const ScalarField f = make_zoo_field("affine:1,2:0");
    CHECK_THROWS_AS(gradient(f, Vec::Zero(3)), DimensionError);
  }
}

TEST_CASE("sample_points: determinism and containment") {
  const Domain box = Domain::box(vec_of({0.0, 0.0}), vec_of({1.0, 1.0}));
  const auto a = sample_points(box, 3, 42);
  const auto b = sample_points(box, 3, 42);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);  // bit-for-bit
    CHECK(box.contains(a[i]));
  }
  const auto c = sample_points(box, 3, 43);
  CHECK(a[0] != c[0]);

  const Domain ball = Domain::ball(Vec::Zero(3), 1.0);
  for (const Vec& p : sample_points(ball, 1000, 7)) {
    CHECK(p.norm() <= 1.0 + 1e-12);
  }
}

TEST_CASE("sample_points: box sampling is uniform (mean check)") {
  const Domain box = Domain::box(vec_of({-2.0, -2.0}), vec_of({2.0, 2.0}));
  Vec mean = Vec::Zero(2);
  const auto pts = sample_points(box, 10000, 1);
  for (const Vec& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  CHECK(mean.lpNorm<Eigen::Infinity>() < 0.1);
}

TEST_CASE("zoo fields carry the right claims") {
  CHECK(make_zoo_field("affine:0.6,0.8:1").claims.convex);
  CHECK(make_zoo_field("affine:0.6,0.8:1").claims.differentiable);
  CHECK(make_zoo_field("norm:0", 2).claims.convex);
  CHECK_FALSE(make_zoo_field("norm:0", 2).claims.differentiable);
  CHECK_FALSE(make_zoo_field("parabola_distance").claims.convex);
  CHECK(make_zoo_field("smoothed_norm:0.1:0", 2).claims.convex);
}

TEST_CASE("zoo spec errors") {
  CHECK_THROWS_AS(make_zoo_field("nope:1"), std::invalid_argument);
  CHECK_THROWS_AS(make_zoo_field("smoothed_norm:-0.1:0", 2), std::invalid_argument);
  CHECK_THROWS_AS(make_zoo_field("affine:1,2:0", 3), DimensionError);
  CHECK_THROWS_AS(make_zoo_field("quadratic:1,2,3", 0), std::invalid_argument);
  CHECK_THROWS_AS(make_zoo_field("quadratic:-1", 0), std::invalid_argument);  // not PSD
  CHECK_THROWS_AS(make_zoo_field("parabola_distance", 3), DimensionError);
}

TEST_CASE("norm and smoothed_norm gradient norms behave as constructed") {
  const ScalarField norm2 = make_zoo_field("norm:0", 2);
  const CounterRng rng(11);
  for (std::uint64_t k = 0; k < 20; ++k) {
    Vec u = seeded_point(rng, k, 2, -2.0, 2.0);
    if (u.norm() < 0.05) continue;
    CHECK(std::abs(gradient(norm2, u).norm() - 1.0) < 1e-5);
  }

  const ScalarField sn = make_zoo_field("smoothed_norm:0.1:0", 2);
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Vec u = seeded_point(rng, 100 + k, 2, -2.0, 2.0);
    const double n = gradient(sn, u).norm();
    CHECK(n < 1.0);
    CHECK(n == doctest::Approx(u.norm() / std::sqrt(0.01 + u.squaredNorm())).epsilon(1e-12));
  }
}

TEST_CASE("property: FD agrees with analytic gradients across the zoo") {
  const std::vector<ScalarField> fields = {
      make_zoo_field("affine:0.6,0.8:1"),
      make_zoo_field("constant:1.25", 2),
      make_zoo_field("smoothed_norm:0.1:0", 2),
      make_zoo_field("sqrt_quadratic", 2),
      make_zoo_field("quadratic:2,0.5,0.5,1"),
  };
  const Domain ball = Domain::ball(Vec::Zero(2), 2.0);
  for (const ScalarField& f : fields) {
    REQUIRE(f.has_analytic_gradient());
    double worst = 0;
    for (const Vec& u : sample_points(ball, 100, 5)) {
      worst = std::max(worst,
                       (fd_gradient(f, u, 1e-5) - gradient(f, u)).lpNorm<Eigen::Infinity>());
    }
    INFO(f.label);
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("property: convex zoo gradients are monotone on seeded pairs") {
  const std::vector<ScalarField> fields = {
      make_zoo_field("affine:0.3,-1.2:2"),
      make_zoo_field("smoothed_norm:0.25:0", 2),
      make_zoo_field("sqrt_quadratic", 2),
      make_zoo_field("quadratic:1,0,0,3"),
      make_zoo_field("norm:0", 2),
  };
  const CounterRng rng(21);
  for (const ScalarField& f : fields) {
    for (std::uint64_t k = 0; k < 50; ++k) {
      const Vec u = seeded_point(rng, 2 * k, 2, -2.0, 2.0);
      const Vec v = seeded_point(rng, 2 * k + 1, 2, -2.0, 2.0);
      if (f.label == "norm" && (u.norm() < 1e-3 || v.norm() < 1e-3)) continue;
      INFO(f.label);
      CHECK((gradient(f, u) - gradient(f, v)).dot(u - v) >= -1e-9);
    }
  }
}

TEST_CASE("negate flips values and analytic gradients") {
  const ScalarField f = make_zoo_field("affine:0.6,0.8:1");
  const ScalarField g = negate(f);
  const Vec u = vec_of({1.0, 2.0});
  CHECK(g(u) == doctest::Approx(-f(u)).epsilon(1e-15));
  CHECK((gradient(g, u) + gradient(f, u)).norm() == doctest::Approx(0.0).epsilon(1e-15));
}
