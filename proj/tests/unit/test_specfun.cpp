#include <numeric>

#include "helpers.hpp"
#include "hhb/errors.hpp"
#include "hhb/integrate.hpp"
#include "hhb/quadrature.hpp"
#include "hhb/specfun.hpp"

using namespace hhb;
using testutil::random_points;
using testutil::rel_err;

namespace {

struct ProfileRow {
  int n, m;
  double u, d0, d1, d2, d3;
};

// sigma_m^{(j)}(u), j = 0..3, from a 40-digit hypergeometric evaluation
// (tests/oracles/profile_oracle.py).
const ProfileRow kProfiles[] = {
    {3, 1, 0.3, 1.2495059066206325215, -0.29373688535258885976, -0.10758256351194808696, -0.14361716546817165094},
    {3, 1, 0.7, 1.1213189881990512066, -0.3544768008011653916, -0.22222920446588469279, -0.57683874339041173412},
    {3, 1, 0.95, 1.0233751840358981854, -0.4455997572820824464, -0.68774427241495711216, -6.8472528338834726689},
    {3, 1, 0.999, 1.0004984239991641894, -0.49709588221100774678, -2.410096061319155468, -489.14969569208278542},
    {3, 2, 0.3, 1.4551217263674447234, -0.51216597624681405865, -0.22221567470812410524, -0.32509328114109598322},
    {3, 2, 0.7, 1.2276620284394008241, -0.64228484026256537536, -0.49363599038053055815, -1.4143746351434848074},
    {3, 2, 0.95, 1.0456551719000023077, -0.8568123009434170372, -1.720870175550697703, -18.905740250867759423},
    {3, 2, 0.999, 1.0009955198813751972, -0.99178166836069633808, -6.7411384882653836187, -1458.7961755193696505},
    {3, 5, 0.3, 1.9430992859327505759, -0.97890089374159132862, -0.52418514373884998107, -0.87966988855148373932},
    {3, 5, 0.7, 1.4960677584549677883, -1.3063749666037461503, -1.3251225458928198687, -4.4647579597733035536},
    {3, 5, 0.95, 1.1078634741484601496, -1.9539307745870985433, -5.8609883741599943464, -77.135193335816794735},
    {3, 5, 0.999, 1.002479882597846089, -2.4634509367873023473, -29.229018573556268444, -7178.3134845447798084},
    {3, 20, 0.3, 3.4686407715141863808, -2.2397929316437461098, -1.4551724495731477301, -2.8517128642012257343},
    {3, 20, 0.7, 2.4096623011911525552, -3.2392867748446947499, -4.4558217703426575722, -18.74149612407788696},
    {3, 20, 0.95, 1.363544605205235915, -5.9914617734777746086, -31.636546542312959319, -575.14176339820114015},
    {3, 20, 0.999, 1.0097794179123702441, -9.6091203668640027484, -291.97882356255018625, -94420.660982897547215},
    {5, 1, 0.3, 1.4013442988615292472, -0.63793181734052990143, 0.16692923713562523308, 0.056891324199691797063},
    {5, 1, 0.7, 1.1602221202118314597, -0.56565965120000800889, 0.1975939093441811357, 0.10607809763576136055},
    {5, 1, 0.95, 1.0253058797525961531, -0.5121174321882084409, 0.23571395243023798059, 0.23632175313584699279},
    {5, 1, 0.999, 1.0005001249380290293, -0.5002498145235974245, 0.24963070171224043043, 0.36469904387984241262},
    {5, 2, 0.3, 1.8478965709999001782, -1.392714100675997466, 0.46096378446709144129, 0.17991576254971088224},
    {5, 2, 0.7, 1.3299200155718338623, -1.1905974752032703585, 0.56095829874181499894, 0.3570161982969990047},
    {5, 2, 0.95, 1.0509117513620065752, -1.0360205619979287808, 0.69532576963392159212, 0.87783776932870965043},
    {5, 2, 0.999, 1.0010003747525526268, -1.0007492597489070894, 0.74852740609284144886, 1.4506821985513426814},
    {5, 5, 0.3, 3.4206112077976953026, -4.2367302693207716325, 1.910986180190622715, 0.92014917958921959183},
    {5, 5, 0.7, 1.8905303596336030747, -3.3780721634388840727, 2.4554105414624888364, 2.0730707216181967342},
    {5, 5, 0.95, 1.129477878652178382, -2.6756252643756454434, 3.3222607941077618942, 6.3709357226608405541},
    {5, 5, 0.999, 1.0025018728454339422, -2.5037435628124713091, 3.7372253546701517287, 12.500514806561044797},
    {5, 20, 0.3, 15.099330579864886474, -27.41735484249911859, 16.757336817446334832, 10.331586232289220549},
    {5, 20, 0.7, 5.6111466891851828074, -19.580895347590545329, 23.602491193432580657, 29.32547888188294954},
    {5, 20, 0.95, 1.5583888757780241377, -12.23224672244033328, 39.400304175991592804, 153.31905777788108567},
    {5, 20, 0.999, 1.0100261570985918099, -10.052223852086989065, 51.95716558449367852, 517.45767553494900623},
    {7, 1, 0.3, 1.4513971807894277801, -0.80208580169080031083, 0.48193345661262854864, -0.13098357533987256252},
    {7, 1, 0.7, 1.1676696469557746289, -0.62031260246579429273, 0.42543811699840832198, -0.15362768212159121241},
    {7, 1, 0.95, 1.0254726102962560887, -0.5189807471685162327, 0.38416192468901128286, -0.17931792846678483335},
    {7, 1, 0.999, 1.0005001875312421991, -0.5003750937188077, 0.37518740648007855335, -0.18731318679802928005},
    {7, 2, 0.3, 2.0128572419729879976, -1.9415250230104406057, 1.5374888725757964397, -0.49380197030403239262},
    {7, 2, 0.7, 1.3537634276955129167, -1.3682566400311110821, 1.3224026556317023297, -0.59170349576469617436},
    {7, 2, 0.95, 1.0514216476546819003, -1.0571695905714830295, 1.1614516704903730903, -0.70999964633927082978},
    {7, 2, 0.999, 1.0010005626249610068, -1.0011253748440954785, 1.1257495326270336893, -0.74906660788056868437},
    {7, 5, 0.3, 4.4352005430739492243, -7.6930523188264275796, 8.9201570801548579228, -3.7417248084656498963},
    {7, 5, 0.7, 2.0296527016456747916, -4.445347118234638382, 7.2556728321363205514, -4.6972735117069794153},
    {7, 5, 0.95, 1.1321648794504807776, -2.7892111743275917114, 5.939091242405839713, -6.0360945755081972774},
    {7, 5, 0.999, 1.0025028135932045722, -2.5056282790697124039, 5.6315559662150761897, -6.5494605075836261589},
    {7, 20, 0.3, 38.404434981294163063, -109.18360359036283783, 188.685406582403742, -109.96998900323463883},
    {7, 20, 0.7, 8.5712246276651726482, -43.363118081836738894, 137.71268752437601393, -151.64551806932983905},
    {7, 20, 0.95, 1.604106978320535593, -14.271899948465958593, 91.698069023874210775, -236.16733617453080976},
    {7, 20, 0.999, 1.0100394230562980531, -10.078894100654535186, 79.037929249131308272, -287.11749300757412639},
};

}  // namespace

TEST_CASE("eval_S trivial values") {
  for (int n = 2; n <= 7; ++n) {
    for (double r : {0.0, 0.3, 0.9, 0.999}) CHECK(eval_S(0, n, r) == 1.0);
    for (int m = 0; m <= 30; ++m) CHECK(eval_S(m, n, 1.0) == 1.0);
  }
  for (int m = 0; m <= 40; ++m) {
    for (double r : {0.0, 0.5, 0.99}) {
      CHECK(eval_S(m, 2, r) == 1.0);
      CHECK(eval_S_prime(m, 2, r) == 0.0);
    }
  }
  CHECK(eval_S(1, 4, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
  for (double r : {0.0, 0.4, 0.95}) CHECK(eval_S_prime(0, 5, r) == 0.0);
  CHECK(eval_S_prime(1, 4, 0.5) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("n = 4 closed form") {
  for (int m = 0; m <= 20; ++m) {
    for (int i = 0; i <= 20; ++i) {
      const double r = i / 20.0;
      const double want = ((m + 2) - m * r * r) / 2.0;
      CHECK(std::abs(eval_S(m, 4, r) - want) < 1e-13 * std::max(1.0, want));
      CHECK(std::abs(eval_S_prime(m, 4, r) + m * r) < 1e-13 * std::max(1.0, m * r));
    }
  }
}

TEST_CASE("profile values and u-derivatives against the high-precision oracle") {
  for (const auto& row : kProfiles) {
    const RadialProfile prof(row.m, row.n);
    const auto d = prof.derivatives_u(row.u, 3);
    CAPTURE(row.n);
    CAPTURE(row.m);
    CAPTURE(row.u);
    CHECK(rel_err(d[0], row.d0) < 1e-13);
    CHECK(rel_err(d[1], row.d1) < 1e-12);
    CHECK(rel_err(d[2], row.d2) < 1e-11);
    CHECK(rel_err(d[3], row.d3) < 1e-10);
    CHECK(rel_err(prof.value_u(row.u), row.d0) < 1e-13);
    const double r = std::sqrt(row.u);
    CHECK(rel_err(prof.prime(r), 2.0 * r * row.d1) < 1e-12);
  }
}

TEST_CASE("profile sequences agree with single evaluations") {
  for (int n : {3, 4, 5}) {
    for (double u : {0.0, 0.2, 0.81, 0.9801, 0.999}) {
      const auto seq = profile_sequence(n, u, 60);
      const auto dseq = profile_derivative_sequence(n, u, 60);
      const auto tab = profile_derivative_table(n, u, 60, 2);
      for (int m = 0; m <= 60; ++m) {
        const RadialProfile p(m, n);
        const auto d = p.derivatives_u(u, 2);
        const auto um = static_cast<std::size_t>(m);
        CHECK(rel_err(seq[um], d[0]) < 1e-12);
        CHECK(rel_err(dseq[um], d[1]) < 1e-10);
        CHECK(rel_err(tab[0][um], d[0]) < 1e-12);
        CHECK(rel_err(tab[2][um], d[2]) < 1e-9);
      }
    }
  }
}

TEST_CASE("odd-n profiles close to the boundary") {
  for (int m : {1, 10, 200}) {
    const double a = eval_S(m, 3, 0.999999);
    // for n = 3 every series term after the first is negative, so S_m >= 1
    CHECK(a >= 1.0);
    CHECK(a - 1.0 < 1e-3);
  }
  CHECK_THROWS_AS(eval_S(1, 3, 1.01), DomainError);
  CHECK_THROWS_AS(RadialProfile(1, 3).derivatives_u(1.0, 2), DomainError);
}

TEST_CASE("zonal_dim") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(zonal_dim(n, 0) == 1);
    CHECK(zonal_dim(n, 1) == static_cast<std::uint64_t>(n));
  }
  for (int m = 1; m <= 10; ++m) {
    CHECK(zonal_dim(2, m) == 2);
    CHECK(zonal_dim(3, m) == static_cast<std::uint64_t>(2 * m + 1));
  }
  CHECK(zonal_dim(3, 5) == 11);
  CHECK(zonal_dim(4, 3) == 16);
}

TEST_CASE("zonal polynomial examples") {
  const SpherePoint eta = SpherePoint::direction(std::vector<double>{1.0, 2.0, -2.0});
  const ZonalPolynomial z0(3, 0, eta);
  const BallPoint x({0.1, 0.5, -0.2});
  CHECK(eval_zonal(z0, x) == 1.0);
  for (double g : zonal_gradient(z0, x)) CHECK(g == 0.0);
  for (int n = 2; n <= 5; ++n) {
    const SpherePoint p = SpherePoint::axis(n, n - 1);
    const ZonalPolynomial z1(n, 1, p);
    const BallPoint y = BallPoint::on_axis(n, n - 1, 0.3);
    CHECK(eval_zonal(z1, y) == doctest::Approx(n * 0.3).epsilon(1e-15));
    const auto gr = zonal_gradient(z1, y);
    for (int i = 0; i < n; ++i) CHECK(gr[static_cast<std::size_t>(i)] == doctest::Approx(n * p[i]));
  }
  const ZonalPolynomial z2(3, 2, eta);
  CHECK(z2(eta.coords()) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("zonal reproducing diagonal, symmetry, bound and homogeneity") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 5; ++n) {
    for (int m = 0; m <= 12; ++m) {
      const SpherePoint zeta = SpherePoint::direction(random_unit_vector(n, rng));
      const ZonalPolynomial z(n, m, zeta);
      CHECK(rel_err(z(zeta.coords()), zonal_dim_real(n, m)) < 1e-9);
      const auto x = random_ball_point(n, 0.9, rng);
      const auto y = random_ball_point(n, 0.9, rng);
      const double a = zonal_kernel(n, m, x, y);
      CHECK(std::abs(a - zonal_kernel(n, m, y, x)) < 1e-12 * std::max(1.0, std::abs(a)));
      const double bound = zonal_dim_real(n, m) * std::pow(std::sqrt(norm_sq(x) * norm_sq(y)), m);
      CHECK(std::abs(a) <= bound * (1 + 1e-12));
      std::vector<double> tx = x;
      for (auto& v : tx) v *= 0.7;
      CHECK(std::abs(z(tx) - std::pow(0.7, m) * z(x)) < 1e-13 * std::max(1.0, std::abs(z(x))));
    }
  }
}

TEST_CASE("zonal polynomials are harmonic and have exact gradients") {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 5; ++n) {
    for (int m = 0; m <= 8; ++m) {
      const ZonalPolynomial z(n, m, SpherePoint::direction(random_unit_vector(n, rng)));
      CHECK(z.to_polynomial().laplacian().max_abs_coefficient() < 1e-9 * std::max(1.0, z.to_polynomial().max_abs_coefficient()));
      const ScalarField fz = [&](std::span<const double> x) { return z(x); };
      for (int i = 0; i < 3; ++i) {
        const auto x = random_ball_point(n, 0.8, rng);
        // the stencil's rounding noise scales with |Z_m|, which reaches dim H_m
        CHECK(std::abs(euclidean_laplacian_fd(fz, x)) < 1e-6 * zonal_dim_real(n, m));
      }
    }
  }
  const SpherePoint eta = SpherePoint::direction(std::vector<double>{0.3, -1.0, 0.5, 0.2});
  const ZonalPolynomial z(4, 5, eta);
  const ScalarField fz = [&](std::span<const double> x) { return z(x); };
  for (const auto& x : random_points(4, 20, 0.9, 7)) {
    const auto g = z.gradient(x);
    const auto gf = gradient_fd(fz, x, 1e-6);
    for (int i = 0; i < 4; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      CHECK(std::abs(g[ui] - gf[ui]) < 1e-8 * std::max(1.0, std::abs(g[ui])));
    }
  }
}

TEST_CASE("zonal values agree with the polynomial form") {
  for (int n = 2; n <= 6; ++n) {
    const SpherePoint eta = SpherePoint::axis(n, 0);
    for (int m = 0; m <= 20; ++m) {
      const ZonalPolynomial z(n, m, eta);
      const auto seq = zonal_sequence(n, 0.37, 20);
      std::vector<double> x(static_cast<std::size_t>(n), 0.0);
      x[0] = 0.37;
      x[1] = std::sqrt(1.0 - 0.37 * 0.37);
      CHECK(rel_err(z(x), zonal_value(n, m, 0.37)) < 1e-12 * std::max(1.0, zonal_dim_real(n, m)));
      CHECK(seq[static_cast<std::size_t>(m)] == doctest::Approx(zonal_value(n, m, 0.37)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(ZonalPolynomial(3, kMaxZonalPolynomialDegree + 1, SpherePoint::axis(3, 0)),
                  UnsupportedError);
}

TEST_CASE("zonal harmonics are orthogonal on the sphere") {
  const int n = 3;
  const SphereRule rule = make_sphere_rule(n, 24);
  const SpherePoint eta = SpherePoint::direction(std::vector<double>{1.0, 0.2, -0.4});
  const SpherePoint xi = SpherePoint::direction(std::vector<double>{-0.3, 0.8, 0.1});
  for (int m = 0; m <= 6; ++m) {
    for (int k = 0; k <= 6; ++k) {
      const ZonalPolynomial a(n, m, eta), b(n, k, xi);
      const double got = sphere_integral([&](std::span<const double> z) { return a(z) * b(z); }, rule);
      const double want = m == k ? a(xi.coords()) : 0.0;
      CHECK(std::abs(got - want) < 1e-10);
    }
  }
}

TEST_CASE("gamma ratio and digamma") {
  CHECK(gamma_ratio(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(gamma_ratio(5.0, 2.0) == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
  CHECK(gamma_ratio(0.5, 0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(gamma_ratio(10.0, 0.3) == doctest::Approx(std::exp(std::lgamma(10.0) - std::lgamma(10.3))).epsilon(1e-13));
  CHECK(digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-14));
}
