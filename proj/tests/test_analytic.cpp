#include <doctest.h>

#include <cmath>
#include <vector>

#include "d2dsim/analytic.hpp"
#include "oracle_helpers.hpp"

using namespace d2d;

TEST_CASE("kappa: reference values and domain") {
  CHECK(kappa(4.0) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
  CHECK(kappa(3.0) == doctest::Approx(7.59762501035208).epsilon(1e-12));
  CHECK(kappa(2.5) == doctest::Approx(13.4329391390424).epsilon(1e-12));
  CHECK_THROWS_AS(kappa(2.0), std::domain_error);
  CHECK_THROWS_AS(kappa(1.5), std::domain_error);
  // blows up toward the boundary
  CHECK(kappa(2.001) > kappa(2.01));
  CHECK(kappa(2.01) > kappa(2.1));
}

TEST_CASE("regularized_upper_gamma: anchors, monotonicity, integral oracle") {
  for (int n : {1, 2, 7, 50}) CHECK(regularized_upper_gamma(n, 0.0) == 1.0);
  CHECK(regularized_upper_gamma(1, 2.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-14));
  CHECK(regularized_upper_gamma(3, 2.0) == doctest::Approx(0.676676416183063).epsilon(1e-13));

  CHECK(regularized_upper_gamma(5, 2.0) > regularized_upper_gamma(5, 3.0));  // decreasing in z
  CHECK(regularized_upper_gamma(6, 3.0) > regularized_upper_gamma(5, 3.0));  // increasing in n

  CHECK_THROWS_AS(regularized_upper_gamma(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(regularized_upper_gamma(3, -0.1), std::invalid_argument);

  for (int n : {1, 2, 5, 10, 25, 50}) {
    for (double z : {0.1, 1.0, 10.0, 40.0, 100.0}) {
      const double series = regularized_upper_gamma(n, z);
      const double quad = oracle::regularized_upper_gamma_by_quadrature(n, z);
      CHECK(series == doctest::Approx(quad).epsilon(1e-12));
    }
  }
}

TEST_CASE("uncoordinated_ccdf: anchors and exponent structure") {
  AnalyticParams p;
  p.lambda_d = 10.0;
  p.n_subchannels = 10;
  p.r_d = 0.3;
  p.alpha = 4.0;

  CHECK(uncoordinated_ccdf(p, 0.0) == 1.0);
  CHECK(uncoordinated_ccdf(p, 1.0) == doctest::Approx(0.641380625955154).epsilon(1e-13));

  AnalyticParams p2 = p;
  p2.n_subchannels = 20;
  CHECK(uncoordinated_ccdf(p2, 1.0) ==
        doctest::Approx(std::sqrt(uncoordinated_ccdf(p, 1.0))).epsilon(1e-13));

  AnalyticParams bad = p;
  bad.alpha = 2.0;
  CHECK_THROWS_AS(uncoordinated_ccdf(bad, 1.0), std::domain_error);
  bad = p;
  bad.r_d = 0.0;
  CHECK_THROWS_AS(uncoordinated_ccdf(bad, 1.0), std::invalid_argument);
}

TEST_CASE("interferer_densities: anchor, limits, ordering, monotonicity") {
  AnalyticParams p;
  p.lambda_d = 10.0;
  p.n_subchannels = 2;
  p.cell_approx = kB1;

  const auto d = interferer_densities(p, 0.5);  // area pi/16
  CHECK(d.intercell == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(d.intracell == doctest::Approx(4.29816538652940).epsilon(1e-12));
  CHECK(d.intracell < d.intercell);

  // saturation and vanishing limits of the in-cell density
  CHECK(interferer_densities(p, 50.0).intracell == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(interferer_densities(p, 1e-4).intracell < 1e-6);

  // strictly increasing in lambda_d |C0|
  double prev = -1.0;
  for (double ra : {0.1, 0.2, 0.4, 0.8, 1.6}) {
    const double cur = interferer_densities(p, ra).intracell;
    CHECK(cur > prev);
    prev = cur;
  }

  AnalyticParams n1 = p;
  n1.n_subchannels = 1;
  CHECK_THROWS_AS(interferer_densities(n1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(interferer_densities(p, 0.0), std::invalid_argument);
}

TEST_CASE("conditional_ccdf: anchors, dominance, Monte Carlo integral oracle") {
  AnalyticParams p;
  p.lambda_a = 1.0;
  p.lambda_d = 10.0;
  p.n_subchannels = 10;
  p.r_d = 0.3;
  p.alpha = 4.0;
  p.cell_approx = kB2;

  CHECK(conditional_ccdf(p, 0.0, 0.5) == 1.0);

  for (double theta : {0.01, 0.1, 1.0, 10.0}) {
    for (double ra : {0.1, 0.3, 0.6, 1.2}) {
      const double c = conditional_ccdf(p, theta, ra);
      CHECK(c > 0.0);
      CHECK(c <= 1.0);
      CHECK(c >= uncoordinated_ccdf(p, theta));
    }
  }

  // stratified-MC estimate of the exclusion integral reproduces the ccdf
  const double mc = oracle::mc_conditional_ccdf(p, 1.0, 0.5, 1024, 2024);
  CHECK(conditional_ccdf(p, 1.0, 0.5) == doctest::Approx(mc).epsilon(2e-4));

  // same check on the off-center approximation and a non-closed-form alpha
  AnalyticParams q = p;
  q.cell_approx = kB1;
  q.alpha = 3.3;
  const double mc1 = oracle::mc_conditional_ccdf(q, 0.8, 0.45, 1024, 2025);
  CHECK(conditional_ccdf(q, 0.8, 0.45) == doctest::Approx(mc1).epsilon(2e-4));

  CHECK_THROWS_AS(conditional_ccdf(p, 1.0, 0.0), std::invalid_argument);
  AnalyticParams n1 = p;
  n1.n_subchannels = 1;
  CHECK_THROWS_AS(conditional_ccdf(n1, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("conditional_ccdf: quadrature tolerance stability") {
  AnalyticParams p;
  p.lambda_d = 10.0;
  p.n_subchannels = 10;
  p.r_d = 0.3;
  p.alpha = 3.7;  // forces the generic radial quadrature
  p.cell_approx = kB1;

  QuadratureSpec coarse;
  coarse.rel_tol = 1e-8;
  QuadratureSpec fine = coarse;
  fine.rel_tol = 0.5e-8;
  const double a = conditional_ccdf(p, 1.0, 0.5, coarse);
  const double b = conditional_ccdf(p, 1.0, 0.5, fine);
  CHECK(std::abs(a - b) < 10.0 * fine.rel_tol);
}

TEST_CASE("unconditional_ccdf: normalization, monotonicity, curve ordering") {
  AnalyticParams p;
  p.lambda_a = 1.0;
  p.lambda_d = 10.0;
  p.n_subchannels = 10;
  p.r_d = 0.3;
  p.alpha = 4.0;

  CHECK(unconditional_ccdf(p, 0.0) == 1.0);

  double prev = 2.0;
  for (double theta_db = -20.0; theta_db <= 20.0; theta_db += 4.0) {
    const double theta = std::pow(10.0, theta_db / 10.0);
    p.cell_approx = kB2;
    const double b2 = unconditional_ccdf(p, theta);
    p.cell_approx = kB1;
    const double b1 = unconditional_ccdf(p, theta);
    const double unc = uncoordinated_ccdf(p, theta);
    CHECK(b2 <= prev + 1e-12);  // non-increasing in theta
    CHECK(b1 >= unc - 1e-12);
    CHECK(b2 >= b1 - 1e-12);  // conservative bound sits below at this config
    CHECK(b2 <= 1.0);
    prev = b2;
  }
}

TEST_CASE("cell_exclusion_integral: doubled off-center bound exceeds the consistent one") {
  AnalyticParams p;
  p.lambda_d = 10.0;
  p.n_subchannels = 10;
  p.r_d = 0.3;
  p.alpha = 4.0;
  p.cell_approx = kB1;
  const double j1 = cell_exclusion_integral(p, 1.0, 0.5);
  p.b1_radial_scale = 2.0;
  const double j2 = cell_exclusion_integral(p, 1.0, 0.5);
  CHECK(j2 > j1);
  // the doubled variant integrates over a disc of radius r_a through the RX,
  // so it is bounded by the centered-disc integral at 2 r_a
  AnalyticParams b2 = p;
  b2.cell_approx = kB2;
  CHECK(j2 < cell_exclusion_integral(b2, 1.0, 1.0));
}

TEST_CASE("cellular_ccdf: anchors and the general-alpha integral path") {
  CHECK(cellular_ccdf(1.0, 4.0, 0.0) == 1.0);
  CHECK(cellular_ccdf(1.0, 4.0, 1.0) == doctest::Approx(0.560099153511557).epsilon(1e-12));
  CHECK(cellular_ccdf(2.0, 4.0, 1.0) == cellular_ccdf(0.5, 4.0, 1.0));  // density-free
  CHECK(cellular_ccdf(1.0, 3.0, 2.0) == doctest::Approx(0.250447444590969).epsilon(1e-9));
  CHECK_THROWS_AS(cellular_ccdf(1.0, 2.0, 1.0), std::domain_error);
  // near alpha = 4 the generic quadrature agrees with the closed form
  CHECK(cellular_ccdf(1.0, 4.0 + 1e-9, 1.0) ==
        doctest::Approx(cellular_ccdf(1.0, 4.0, 1.0)).epsilon(1e-7));
}
