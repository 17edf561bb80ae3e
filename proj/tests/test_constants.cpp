#include <tvkit/constants.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace tvkit::constants;
using Catch::Approx;

TEST_CASE("t_to_subtr transfers step constants to error-bound constants") {
  auto [K, delta_hat] = t_to_subtr(3.0, 1.0);
  CHECK(K == 4.0);
  CHECK(delta_hat == Approx(1.0 / 56.0).epsilon(0));

  auto r2 = t_to_subtr(1.0, 24.0);
  CHECK(r2.K == 2.0);
  CHECK(r2.delta_hat == Approx(1.0).epsilon(0));

  SECTION("K strictly increasing in M") {
    double prev = t_to_subtr(0.5, 1.0).K;
    for (double M = 0.6; M < 10.0; M += 0.1) {
      double K_now = t_to_subtr(M, 1.0).K;
      CHECK(K_now > prev);
      prev = K_now;
    }
  }
  CHECK_THROWS_AS(t_to_subtr(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(t_to_subtr(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("subtr_to_t transfers error-bound constants to step constants") {
  auto r = subtr_to_t(1.0, 14.0);
  CHECK(r.M == 3.0);
  CHECK(r.proximity_radius == Approx(1.0).epsilon(0));

  auto r2 = subtr_to_t(4.0, 26.0);
  CHECK(r2.M == 6.0);
  CHECK(r2.proximity_radius == Approx(1.0).epsilon(0));

  SECTION("M - K == 2 always") {
    for (double K = 0.25; K < 40.0; K *= 1.7) CHECK(subtr_to_t(K, 1.0).M - K == Approx(2.0).epsilon(0));
  }
}

TEST_CASE("kappa transfers") {
  CHECK(t_to_kappa(3.0) == Approx(1.0 / 6.0).epsilon(0));
  CHECK(kappa_to_t(0.5) == 4.0);
  SECTION("round trip M -> kappa -> M' quadruples M") {
    for (double M = 0.1; M < 50.0; M *= 1.9) CHECK(kappa_to_t(t_to_kappa(M)) == Approx(4.0 * M).margin(1e-12));
  }
}

TEST_CASE("p_to_lt") {
  CHECK(p_to_lt(0.5, 0.25) == Approx(0.2).margin(1e-15));
  SECTION("theta -> 0 as alpha -> 0") {
    CHECK(p_to_lt(1e-9, 0.25) < 1e-8);
  }
  SECTION("monotone in alpha and eps") {
    double prev = 0.0;
    for (double a = 0.05; a < 1.0; a += 0.05) {
      double th = p_to_lt(a, 0.25);
      CHECK(th > prev);
      prev = th;
    }
    prev = 0.0;
    for (double e = 0.05; e < 1.0; e += 0.05) {
      double th = p_to_lt(0.5, e);
      CHECK(th > prev);
      prev = th;
    }
  }
  CHECK_THROWS_AS(p_to_lt(1.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(p_to_lt(0.5, 1.25), std::invalid_argument);
}

TEST_CASE("f and g evaluate their closed forms") {
  CHECK(eval_f(0.0) == 0.0);
  CHECK(eval_f(0.1) == Approx(0.1 / (2.0 * std::sqrt(1.01))).margin(1e-15));
  CHECK(eval_f(0.1) == Approx(0.049752).margin(1e-6));
  SECTION("g vanishes at psi = theta/4") {
    for (double theta : {0.1, 0.5, 0.9}) CHECK(eval_g(theta / 4.0, theta) == Approx(0.0).margin(1e-15));
  }
}

TEST_CASE("f strictly increasing, bounded by 1/2; g strictly decreasing on [0, theta/4]") {
  const int n = 1000;
  double prev = eval_f(0.0);
  for (int i = 1; i <= n; ++i) {
    double psi = 10.0 * i / n;
    double now = eval_f(psi);
    CHECK(now > prev);
    CHECK(now < 0.5);
    CHECK(now > 0.0);
    prev = now;
  }
  const double theta = 0.8;
  prev = eval_g(0.0, theta);
  for (int i = 1; i <= n; ++i) {
    double psi = (theta / 4.0) * i / n;
    double now = eval_g(psi, theta);
    CHECK(now < prev);
    prev = now;
  }
}

TEST_CASE("lt_to_p combines theta/2, f, g") {
  auto r = lt_to_p(0.5, 0.25);
  // min of {0.25, f(0.1)=0.049752, g(0.1)=0.027640}
  CHECK(r.alpha == Approx(0.027640).margin(1e-5));
  CHECK(r.lambda_factor == Approx(2.027640).margin(1e-5));
  CHECK_FALSE(r.eps_clamped);

  SECTION("alpha <= theta/2 always, alpha -> 0 with theta") {
    for (double theta = 0.05; theta <= 1.0; theta += 0.05) {
      auto c = lt_to_p(theta, 0.25);
      CHECK(c.alpha <= theta / 2.0 + 1e-15);
      CHECK(c.alpha > 0.0);
    }
    CHECK(lt_to_p(1e-6, 0.25).alpha < 1e-6);
  }
  SECTION("eps >= 1 is clamped with a flag") {
    auto c = lt_to_p(0.5, 4.0);
    CHECK(c.eps_clamped);
    CHECK(c.lambda_factor == Approx(c.alpha + 1.0).margin(1e-6));
  }
}
