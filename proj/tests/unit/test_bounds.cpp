#include <doctest.h>

#include <cmath>
#include <numbers>

#include "signsel/bounds.hpp"
#include "signsel/errors.hpp"

using namespace signsel;

TEST_CASE("PAPR upper bound") {
  CHECK(papr_bound_constant() == doctest::Approx(0.59).epsilon(0.01));
  const auto b64 = papr_upper_bound(64);
  CHECK(b64.linear ==
        doctest::Approx(std::log(64.0) + 0.5 * std::log(std::log(64.0)) +
                        0.5 * std::log(std::numbers::pi / 3.0) + 0.5772156649015329));
  CHECK(b64.linear == doctest::Approx(5.46).epsilon(0.005));
  CHECK(*b64.db == doctest::Approx(7.4).epsilon(0.01));
  const auto b1024 = papr_upper_bound(1024);
  CHECK(b1024.linear == doctest::Approx(8.49).epsilon(0.005));
  CHECK(*b1024.db == doctest::Approx(9.3).epsilon(0.01));
  double previous = 0.0;
  for (std::size_t n = 3; n < 5000; n += 7) {
    const double v = papr_upper_bound(n).linear;
    CHECK(v > previous);
    previous = v;
  }
  CHECK_THROWS_AS(papr_upper_bound(2), DomainError);
}

TEST_CASE("SRCM upper bound") {
  const auto b = srcm_upper_bound();
  CHECK(b.linear == 6.0);
  CHECK(*b.db == doctest::Approx(7.78).epsilon(0.001));
}

TEST_CASE("McDiarmid deviation bound") {
  const auto qpsk = build_constellation(ConstellationKind::kQpsk);
  const auto qam16 = build_constellation(ConstellationKind::kQam16);
  CHECK(bounded_difference(qpsk) == doctest::Approx(2.0));
  CHECK(bounded_difference(qam16) * bounded_difference(qam16) == doctest::Approx(7.2));
  const auto vacuous = mcdiarmid_deviation_bound(0.0, 100, 64, 0, qpsk);
  CHECK(vacuous.linear == 2.0);
  CHECK(vacuous.inputs["clamped"].get<double>() == 1.0);
  double previous = 3.0;
  for (std::size_t j = 0; j <= 62; ++j) {
    const double v = mcdiarmid_deviation_bound(0.1, 100, 64, j, qam16).linear;
    CHECK(v < previous);
    previous = v;
  }
  const double expected = 2.0 * std::exp(-2.0 * 0.01 * (100.0 / 7.2) * 64.0 / 63.0);
  CHECK(mcdiarmid_deviation_bound(0.1, 100, 64, 0, qam16).linear == doctest::Approx(expected));
  CHECK_THROWS_AS(mcdiarmid_deviation_bound(0.1, 100, 64, 63, qam16), DomainError);
  CHECK_THROWS_AS(mcdiarmid_deviation_bound(-0.1, 100, 64, 0, qam16), DomainError);
}

TEST_CASE("Q lower bound") {
  const auto c = build_constellation(ConstellationKind::kQam16);
  CHECK(q_lower_bound(0.01, 0.1, c, 1.0).linear == 0.0);
  const double q0 = q_lower_bound(0.01, 0.1, c, 0.0).linear;
  for (double rho : {0.1, 0.25, 0.5, 0.9}) {
    CHECK(q_lower_bound(0.01, 0.1, c, rho).linear == doctest::Approx(q0 * (1.0 - rho)));
  }
  // Inversion: a deviation bound evaluated at Q = Q₀(p) returns p when
  // ρ = (j + 1)/N.
  for (std::size_t j : {0U, 10U, 40U}) {
    const std::size_t n = 64;
    for (double p : {1e-3, 0.05, 0.5}) {
      const double rho = static_cast<double>(j + 1) / static_cast<double>(n);
      const double q = q_lower_bound(p, 0.1, c, rho).linear;
      const double d = bounded_difference(c);
      const double back = 2.0 * std::exp(-2.0 * 0.01 * (q / (d * d)) *
                                         static_cast<double>(n) / static_cast<double>(n - j - 1));
      CHECK(back == doctest::Approx(p).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(q_lower_bound(0.0, 0.1, c, 0.5), DomainError);
  CHECK_THROWS_AS(q_lower_bound(2.0, 0.1, c, 0.5), DomainError);
  CHECK_THROWS_AS(q_lower_bound(0.1, 0.0, c, 0.5), DomainError);
  CHECK_THROWS_AS(q_lower_bound(0.1, 0.1, c, 1.5), DomainError);
}

TEST_CASE("limit covariances") {
  const auto c0 = limit_covariances(0.0, 0.0, 1.0);
  CHECK(c0.r_rr == doctest::Approx(0.5));
  CHECK(c0.r_ri == 0.0);
  CHECK(limit_covariances(0.0, 0.5, 1.0).r_rr == doctest::Approx(0.25));
  CHECK(limit_covariances(0.0, 0.5, 1.0, 2.0).r_rr == doctest::Approx(1.0));
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(1.0)) < 1e-15);
  // Continuity of R_ri at τ = 0.
  CHECK(std::abs(limit_covariances(1e-9, 0.3, 1.0).r_ri) < 1e-8);
  // Direct integral form: (σ²/2)∫_ρ^1 cos/sin(2π F_s τ u) du.
  for (double tau : {0.1, 0.37, 0.8}) {
    for (double rho : {0.0, 0.25, 0.5}) {
      double rr = 0.0, ri = 0.0;
      const int steps = 200000;
      for (int i = 0; i < steps; ++i) {
        const double u = rho + (1.0 - rho) * (i + 0.5) / steps;
        rr += std::cos(2.0 * std::numbers::pi * tau * u);
        ri += std::sin(2.0 * std::numbers::pi * tau * u);
      }
      rr *= 0.5 * (1.0 - rho) / steps;
      ri *= 0.5 * (1.0 - rho) / steps;
      const auto got = limit_covariances(tau, rho, 1.0);
      CHECK(got.r_rr == doctest::Approx(rr).epsilon(1e-6).scale(1.0));
      CHECK(got.r_ri == doctest::Approx(ri).epsilon(1e-6).scale(1.0));
    }
  }
  CHECK_THROWS_AS(limit_covariances(0.1, -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(limit_covariances(0.1, 0.5, 0.0), DomainError);
}
