#include "helpers.hpp"
#include "hhb/errors.hpp"
#include "hhb/expansion.hpp"
#include "hhb/integrate.hpp"
#include "hhb/kernels.hpp"
#include "hhb/quadrature.hpp"
#include "hhb/specfun.hpp"

using namespace hhb;
using testutil::field;
using testutil::random_points;

namespace {

double fd_partial(const ScalarField& g, std::vector<double> x, int i, double h) {
  const auto ui = static_cast<std::size_t>(i);
  const double x0 = x[ui];
  x[ui] = x0 + h;
  const double a = g(x);
  x[ui] = x0 - h;
  const double b = g(x);
  return (a - b) / (2 * h);
}

ScalarField as_field(const DerivedField& d) {
  return [d](std::span<const double> x) { return d(x); };
}

}  // namespace

TEST_CASE("evaluation examples") {
  const auto c = HHarmonicFunction::constant(3, -2.5);
  CHECK(c(BallPoint({0.3, 0.2, 0.1})) == -2.5);
  HHarmonicFunction f(4);
  f.add_term(1, 1.0, SpherePoint::axis(4, 0));
  CHECK(f(BallPoint::on_axis(4, 0, 0.5)) == doctest::Approx(2.75).epsilon(1e-15));
  const auto g = random_hharmonic(3, 6, 42);
  double m0 = 0.0;
  for (const auto& t : g.blocks().at(0).terms) m0 += t.a;
  CHECK(g(BallPoint::origin(3)) == doctest::Approx(m0).epsilon(1e-15));
  CHECK_THROWS_AS(g(std::vector<double>{0.8, 0.7, 0.0}), DomainError);
  CHECK_THROWS_AS(g(std::vector<double>{0.1, 0.1}), ParameterError);
}

TEST_CASE("random functions are reproducible") {
  const auto a = random_hharmonic(4, 5, 9);
  const auto b = random_hharmonic(4, 5, 9);
  const std::vector<double> x{0.1, -0.3, 0.2, 0.4};
  CHECK(a(x) == b(x));
  CHECK(a.max_degree() == 5);
  CHECK(random_hharmonic(4, 5, 9, 2, 3).min_degree() == 3);
}

TEST_CASE("expansions are H-harmonic") {
  for (int n = 2; n <= 5; ++n) {
    const auto f = random_hharmonic(n, 8, 100 + static_cast<std::uint64_t>(n));
    const auto g = field(f);
    for (const auto& x : random_points(n, 20, 0.9, 7)) {
      const double fx = f(x);
      CHECK(std::abs(hyperbolic_laplacian_fd(g, BallPoint(x), 1e-4)) < 1e-5 * (1 + std::abs(fx)));
    }
  }
}

TEST_CASE("tangential derivatives") {
  const auto c = HHarmonicFunction::constant(3, 1.0);
  CHECK(tangential(c, 0, 1).blocks().empty());
  for (int n = 2; n <= 4; ++n) {
    HHarmonicFunction f(n);
    f.add_term(1, 1.0, SpherePoint::axis(n, 0));
    const auto t = tangential(f, 0, 1);
    const std::vector<double> x = testutil::e(n, 1, 0.7);
    CHECK(t.blocks().at(1).value(x) == doctest::Approx(-n * 0.7).epsilon(1e-15));
  }
  const auto f = random_hharmonic(3, 6, 11);
  const auto g = field(f);
  for (const auto& [i, j] : tangential_pairs(3)) {
    const auto t = tangential(f, i, j);
    for (const auto& x : random_points(3, 30, 0.85, 12)) {
      const double want = x[static_cast<std::size_t>(i)] * fd_partial(g, x, j, 1e-5) -
                          x[static_cast<std::size_t>(j)] * fd_partial(g, x, i, 1e-5);
      CHECK(std::abs(t(x) - want) < 1e-7 * (1 + std::abs(want)));
    }
  }
  CHECK_THROWS_AS(tangential(f, 1, 1), ParameterError);
  CHECK_THROWS_AS(tangential(f, 0, 3), ParameterError);
}

TEST_CASE("tangential chains") {
  const auto f = random_hharmonic(3, 5, 13);
  CHECK(tangential_chain(f, {}).blocks().size() == f.blocks().size());
  const std::vector<std::pair<int, int>> ops{{0, 2}, {1, 2}};
  const auto chain = tangential_chain(f, ops);
  const auto seq = tangential(tangential(f, 1, 2), 0, 2);
  const auto t1 = tangential(f, 1, 2);
  const auto g1 = field(t1);
  for (const auto& x : random_points(3, 10, 0.8, 14)) {
    CHECK(chain(x) == seq(x));
    const double want = x[0] * fd_partial(g1, x, 2, 1e-5) - x[2] * fd_partial(g1, x, 0, 1e-5);
    CHECK(std::abs(chain(x) - want) < 1e-5 * (1 + std::abs(want)));
  }
}

TEST_CASE("normal derivative") {
  CHECK(normal(HHarmonicFunction::constant(3, 2.0)).is_zero());
  const auto f2 = random_hharmonic(2, 6, 15);
  const auto n2 = normal(f2);
  for (const auto& x : random_points(2, 10, 0.9, 16)) {
    double want = 0.0;
    for (const auto& [m, b] : f2.blocks()) want += m * b.value(x);
    CHECK(std::abs(n2(x) - want) < 1e-12 * (1 + std::abs(want)));
  }
  for (int n : {3, 4, 5}) {
    const auto f = random_hharmonic(n, 6, 17);
    const auto g = field(f);
    const auto nf = normal(f);
    const auto nf_field = as_field(nf);
    const auto n2f = normal_k(f, 2);
    CHECK(normal_k(f, 0)(std::vector<double>(static_cast<std::size_t>(n), 0.1)) ==
          doctest::Approx(f(std::vector<double>(static_cast<std::size_t>(n), 0.1))));
    for (const auto& x : random_points(n, 20, 0.85, 18)) {
      double want = 0.0;
      double want2 = 0.0;
      for (int i = 0; i < n; ++i) {
        want += x[static_cast<std::size_t>(i)] * fd_partial(g, x, i, 1e-5);
        want2 += x[static_cast<std::size_t>(i)] * fd_partial(nf_field, x, i, 1e-5);
      }
      CHECK(std::abs(nf(x) - want) < 1e-7 * (1 + std::abs(want)));
      CHECK(normal_k(f, 1)(x) == nf(x));
      CHECK(std::abs(n2f(x) - want2) < 1e-7 * (1 + std::abs(want2)));
    }
  }
}

TEST_CASE("partial derivatives") {
  const auto f = random_hharmonic(3, 6, 19);
  const MultiIndex zero{};
  const auto id = partial(f, zero);
  for (const auto& x : random_points(3, 5, 0.8, 20)) CHECK(id(x) == doctest::Approx(f(x)).epsilon(1e-14));
  for (int k = 1; k <= 3; ++k) {
    for (const auto& kappa : multi_indices(3, k)) {
      const auto d = partial(f, kappa);
      // one exact derivative less, then a central difference
      int i = 0;
      while (kappa[static_cast<std::size_t>(i)] == 0) ++i;
      MultiIndex lower = kappa;
      --lower[static_cast<std::size_t>(i)];
      const auto lf = as_field(partial(f, lower));
      for (const auto& x : random_points(3, 30, 0.8, 21)) {
        const double want = fd_partial(lf, x, i, 1e-5);
        CHECK(std::abs(d(x) - want) < 1e-5 * (1 + std::abs(want)));
      }
    }
  }
  // second order against nested differences of f itself
  MultiIndex k11{};
  k11[0] = 1;
  k11[1] = 1;
  const auto d11 = partial(f, k11);
  const auto g = field(f);
  for (const auto& x : random_points(3, 10, 0.8, 22)) {
    const auto gx = [&](std::span<const double> y) {
      return fd_partial(g, std::vector<double>(y.begin(), y.end()), 0, 1e-4);
    };
    const double want = fd_partial(gx, x, 1, 1e-4);
    CHECK(std::abs(d11(x) - want) < 1e-5 * (1 + std::abs(want)));
  }
  MultiIndex big{};
  big[0] = 7;
  CHECK_THROWS_AS(partial(f, big), UnsupportedError);
  CHECK(multi_indices(3, 2).size() == 6);
}

TEST_CASE("derivatives vanish at the origin below the starting degree") {
  for (int k = 1; k <= 4; ++k) {
    const auto f = random_hharmonic(3, k + 3, 23, 2, k);
    const std::vector<double> origin(3, 0.0);
    for (int order = 0; order < k; ++order) {
      for (const auto& kappa : multi_indices(3, order)) {
        CHECK(std::abs(partial(f, kappa)(origin)) < 1e-13);
      }
    }
  }
}

TEST_CASE("spherical Laplacian") {
  CHECK(spherical_laplacian(HHarmonicFunction::constant(3, 1.0)).blocks().empty());
  HHarmonicFunction f(3);
  const SpherePoint eta = SpherePoint::direction(std::vector<double>{0.2, -0.5, 0.9});
  f.add_term(1, 1.3, eta);
  const auto lf = spherical_laplacian(f);
  std::mt19937_64 rng(24);
  for (int i = 0; i < 10; ++i) {
    const auto z = random_unit_vector(3, rng);
    CHECK(lf.blocks().at(1).value(z) == doctest::Approx(-2.0 * f.blocks().at(1).value(z)).epsilon(1e-13));
  }
  // general degree: eigenvalue -m(m+n-2) on each block
  const auto g = random_hharmonic(4, 5, 25);
  const auto lg = spherical_laplacian(g);
  for (const auto& [m, b] : g.blocks()) {
    if (m == 0) continue;
    const auto z = random_unit_vector(4, rng);
    CHECK(lg.blocks().at(m).value(z) == doctest::Approx(-m * (m + 2.0) * b.value(z)).epsilon(1e-11));
  }
}

TEST_CASE("gradient") {
  for (double v : HHarmonicFunction::constant(3, 4.0).gradient(std::vector<double>{0.1, 0.2, 0.3})) CHECK(v == 0.0);
  for (int n = 2; n <= 5; ++n) {
    HHarmonicFunction f(n);
    const SpherePoint eta = SpherePoint::direction(std::vector<double>(static_cast<std::size_t>(n), 1.0));
    f.add_term(1, 1.0, eta);
    const auto g0 = f.gradient(std::vector<double>(static_cast<std::size_t>(n), 0.0));
    const double s1 = eval_S(1, n, 0.0);
    for (int i = 0; i < n; ++i) CHECK(g0[static_cast<std::size_t>(i)] == doctest::Approx(s1 * n * eta[i]).epsilon(1e-14));
  }
  const auto f = random_hharmonic(5, 5, 26);
  const auto g = field(f);
  for (const auto& x : random_points(5, 10, 0.85, 27)) {
    const auto gr = f.gradient(x);
    const auto gf = gradient_fd(g, x, 1e-5);
    for (std::size_t i = 0; i < gr.size(); ++i) CHECK(std::abs(gr[i] - gf[i]) < 1e-7 * (1 + std::abs(gr[i])));
  }
}

TEST_CASE("gradient decomposition into normal and tangential parts") {
  for (int n = 2; n <= 5; ++n) {
    const auto f = random_hharmonic(n, 7, 28);
    const auto nf = normal(f);
    std::vector<HHarmonicFunction> ts;
    for (const auto& [i, j] : tangential_pairs(n)) ts.push_back(tangential(f, i, j));
    for (const auto& x : random_points(n, 20, 0.95, 29)) {
      const auto gr = f.gradient(x);
      double lhs = 0.0;
      for (double v : gr) lhs += v * v;
      lhs *= norm_sq(x);
      double rhs = nf(x) * nf(x);
      for (const auto& t : ts) rhs += t(x) * t(x);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(lhs), 1e-300));
    }
  }
}

TEST_CASE("radial ODE relation") {
  for (int n = 2; n <= 5; ++n) {
    const auto f = random_hharmonic(n, 8, 30);
    const auto n1 = normal(f);
    const auto n2 = normal_k(f, 2);
    const auto ls = spherical_laplacian(f);
    for (const auto& x : random_points(n, 20, 0.95, 31)) {
      const double u = norm_sq(x);
      const double a = (1 - u) * n2(x);
      const double b = (n - 2) * (1 + u) * n1(x);
      const double c = (1 - u) * ls(x);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
      CHECK(std::abs(a + b + c) <= 1e-7 * scale);
    }
  }
}

TEST_CASE("normal and tangential derivatives commute") {
  for (int n : {3, 4}) {
    const auto f = random_hharmonic(n, 7, 32);
    for (const auto& [i, j] : tangential_pairs(n)) {
      const auto nt = normal(tangential(f, i, j));
      const auto tn = normal(f).tangential(i, j);
      for (const auto& x : random_points(n, 10, 0.9, 33)) {
        const double a = nt(x);
        CHECK(std::abs(a - tn(x)) <= 1e-9 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("multipliers commute with tangential derivatives exactly") {
  const auto f = random_hharmonic(3, 8, 34);
  for (const auto& [s, t] : std::vector<std::pair<double, double>>{{0.0, 1.0}, {-3.0, 2.5}, {1.5, -0.7}}) {
    const auto a = apply_Dst(s, t, tangential(f, 0, 2));
    const auto b = tangential(apply_Dst(s, t, f), 0, 2);
    REQUIRE(a.blocks().size() == b.blocks().size());
    for (const auto& [m, blk] : a.blocks()) {
      const auto& other = b.blocks().at(m);
      CHECK(blk.scale == other.scale);
      CHECK(blk.poly == other.poly);
      CHECK(blk.terms.size() == other.terms.size());
    }
    for (const auto& x : random_points(3, 5, 0.9, 35)) CHECK(a(x) == b(x));
  }
}

TEST_CASE("derived-field partial keeps the atom shape") {
  const auto f = random_hharmonic(3, 4, 36);
  const auto d = DerivedField::from(f);
  const auto p = d.partial(1);
  MultiIndex k{};
  k[1] = 1;
  const auto q = partial(f, k);
  for (const auto& x : random_points(3, 5, 0.9, 37)) CHECK(p(x) == doctest::Approx(q(x)).epsilon(1e-14));
  const auto rv = p.radial_values(0.25);
  std::vector<double> x{0.3, 0.0, 0.4};
  CHECK(p.eval_with(x, rv) == doctest::Approx(p(x)).epsilon(1e-14));
}

TEST_CASE("polynomial blocks") {
  HHarmonicFunction f(3);
  const Polynomial x = Polynomial::coordinate(3, 0);
  const Polynomial y = Polynomial::coordinate(3, 1);
  f.add_polynomial(2, x * y);
  CHECK_THROWS_AS(f.add_polynomial(2, x * x), ParameterError);
  CHECK_THROWS_AS(f.add_polynomial(3, x * y), ParameterError);
  const std::vector<double> p{0.3, 0.4, 0.1};
  CHECK(f(p) == doctest::Approx(eval_S(2, 3, std::sqrt(norm_sq(p))) * 0.12).epsilon(1e-14));
}
