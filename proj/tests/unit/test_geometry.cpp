#include "helpers.hpp"
#include "hhb/errors.hpp"
#include "hhb/geometry.hpp"
#include "hhb/specfun.hpp"

using namespace hhb;
using testutil::random_points;

TEST_CASE("bracket examples") {
  const BallPoint x({0.3, -0.2, 0.5});
  CHECK(bracket(x, BallPoint::origin(3)) == 1.0);
  CHECK(bracket(BallPoint::origin(3), BallPoint::origin(3)) == 1.0);
  CHECK(bracket(BallPoint({0.5, 0.0}), BallPoint({0.5, 0.0})) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(bracket(std::vector<double>{0.1, 0.2}, std::vector<double>{0.1, 0.2, 0.0}),
                  ParameterError);
}

TEST_CASE("bracket symmetry and lower bound") {
  const auto xs = random_points(4, 200, 0.999, 1);
  const auto ys = random_points(4, 200, 0.999, 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = bracket(xs[i], ys[i]);
    CHECK(a == bracket(ys[i], xs[i]));
    CHECK(a >= 1.0 - std::sqrt(norm_sq(xs[i]) * norm_sq(ys[i])) - 1e-15);
  }
}

TEST_CASE("bracket against a sphere point") {
  const SpherePoint z = SpherePoint::axis(3, 0);
  const BallPoint x = BallPoint::on_axis(3, 0, 0.4);
  CHECK(bracket(x, z) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(bracket(z, x) == bracket(x, z));
}

TEST_CASE("mobius exchanges a and 0") {
  const BallPoint a({0.2, -0.4, 0.1});
  const BallPoint ma0 = mobius(a, BallPoint::origin(3));
  const BallPoint maa = mobius(a, a);
  for (int i = 0; i < 3; ++i) {
    CHECK(ma0[i] == doctest::Approx(a[i]).epsilon(1e-15));
    CHECK(std::abs(maa[i]) < 1e-15);
  }
  const BallPoint x({0.3, 0.1, -0.6});
  const BallPoint m0 = mobius(BallPoint::origin(3), x);
  for (int i = 0; i < 3; ++i) CHECK(m0[i] == -x[i]);
}

TEST_CASE("mobius is an involution") {
  const auto as = random_points(3, 100, 0.95, 3);
  const auto xs = random_points(3, 100, 0.95, 4);
  for (std::size_t i = 0; i < as.size(); ++i) {
    const BallPoint a(as[i]);
    const BallPoint y = mobius(a, BallPoint(xs[i]));
    CHECK(y.norm() < 1.0);
    const BallPoint back = mobius(a, y);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(back[k] - xs[i][static_cast<std::size_t>(k)]) < 1e-12);
  }
}

TEST_CASE("v_alpha") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(v_alpha(n, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v_alpha(n, -2.0) == 1.0);
    CHECK(v_alpha(n, -1.0) == 1.0);
  }
  CHECK(v_alpha(2, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  // n = 3, alpha = 1/2: Gamma(5/2) Gamma(3/2) / Gamma(3) = 3 pi / 16
  CHECK(v_alpha(3, 0.5) == doctest::Approx(3.0 * M_PI / 16.0).epsilon(1e-14));
  const auto wm = WeightedMeasure::make(4, 2.0);
  CHECK(wm.finite());
  CHECK(!WeightedMeasure::make(4, -1.0).finite());
}

TEST_CASE("sphere point construction") {
  const SpherePoint p({0.6, 0.8});
  CHECK(p[0] * p[0] + p[1] * p[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(SpherePoint({0.6, 0.9}), DomainError);
  const std::vector<double> v{3.0, 4.0, 0.0};
  const auto d = SpherePoint::direction(v);
  CHECK(d[0] == doctest::Approx(0.6));
  CHECK_THROWS_AS(SpherePoint::direction(std::vector<double>{0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(BallPoint({1.2, 0.0}), DomainError);
  CHECK_THROWS_AS(BallPoint({0.1}), ParameterError);
}

TEST_CASE("finite-difference hyperbolic Laplacian") {
  const BallPoint x({0.3, 0.1, 0.2});
  CHECK(std::abs(hyperbolic_laplacian_fd([](std::span<const double>) { return 2.5; }, x)) < 1e-12);
  // degree-1 H-harmonic function S_1(|x|) x_1
  const auto h1 = [](std::span<const double> y) {
    return eval_S(1, 3, std::sqrt(norm_sq(y))) * y[0];
  };
  const double scale = std::abs(h1(x.coords()));
  CHECK(std::abs(hyperbolic_laplacian_fd(h1, x, 1e-4)) < 1e-5 * std::max(1.0, scale));
  // x_1 is not H-harmonic for n >= 3: Delta_h x_1 = 2(n-2)(1-|x|^2) x_1
  const double want = 2.0 * (3 - 2) * (1.0 - x.norm_sq()) * x[0];
  const double got = hyperbolic_laplacian_fd([](std::span<const double> y) { return y[0]; }, x);
  CHECK(got == doctest::Approx(want).epsilon(1e-7));
  CHECK_THROWS_AS(hyperbolic_laplacian_fd(h1, BallPoint::on_axis(3, 0, 0.99995), 1e-4), DomainError);
}

TEST_CASE("finite-difference gradient and Laplacian") {
  const std::vector<double> x{0.2, -0.3};
  const auto g = gradient_fd([](std::span<const double> y) { return y[0] * y[0] * y[1]; }, x);
  CHECK(g[0] == doctest::Approx(2 * 0.2 * -0.3).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(0.04).epsilon(1e-8));
  const double lap =
      euclidean_laplacian_fd([](std::span<const double> y) { return y[0] * y[0] + 3 * y[1] * y[1]; }, x);
  CHECK(lap == doctest::Approx(8.0).epsilon(1e-6));
}
