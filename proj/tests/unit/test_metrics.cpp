#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "signsel/constellation.hpp"
#include "signsel/errors.hpp"
#include "signsel/experiment.hpp"
#include "signsel/metrics.hpp"
#include "signsel/signal.hpp"

using namespace signsel;

namespace {

std::vector<cplx> random_signal(std::size_t n, ConstellationKind kind, Rng& rng,
                                std::vector<cplx>* symbols = nullptr) {
  const auto c = build_constellation(kind);
  const auto b = draw_symbols(c, n, rng);
  if (symbols) *symbols = b;
  return modulate(b, SignVector(n), SignalParams{n, 4});
}

}  // namespace

TEST_CASE("PAPR of a single tone and of a coherent peak") {
  const std::vector<cplx> tone(4, std::polar(1.0, 0.3));
  CHECK(papr(tone).linear == doctest::Approx(1.0));
  CHECK(papr(tone).db() == doctest::Approx(0.0).epsilon(1e-12));
  const auto c = build_constellation(ConstellationKind::kQpsk);
  const auto s = modulate(SymbolVector(16, c.points[2]), SignVector(16), SignalParams{16, 4});
  CHECK(papr(s).linear == doctest::Approx(16.0).epsilon(1e-12));
  CHECK_THROWS_AS(papr(std::vector<cplx>{}), ArgumentError);
}

TEST_CASE("metrics agree with direct evaluation of the synthesized signal") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> b;
    const auto s = random_signal(8, ConstellationKind::kQam16, rng, &b);
    const auto ref = oracle::modulate(b, std::vector<int>(8, 1), 4);
    CHECK(papr(s).linear == doctest::Approx(oracle::papr(ref)).epsilon(1e-12));
    CHECK(srcm(s).linear == doctest::Approx(oracle::srcm(ref)).epsilon(1e-12));
    CHECK(log_sum_exp_metric(s, 2.0) ==
          doctest::Approx(std::log(oracle::sum_exp(ref, 2.0))).epsilon(1e-9));
  }
}

TEST_CASE("crest factor is the square root of PAPR") {
  const std::vector<cplx> flat(8, cplx(1, 0));
  CHECK(crest_factor(flat).linear == doctest::Approx(1.0));
  const std::vector<cplx> peak{cplx(4, 0), cplx(0, 0)};
  CHECK(crest_factor(peak).linear == doctest::Approx(4.0));
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_signal(32, ConstellationKind::kQam64, rng);
    const double cf = crest_factor(s).linear;
    CHECK(cf * cf == doctest::Approx(papr(s).linear).epsilon(1e-12));
  }
  CHECK_THROWS_AS(crest_factor(std::vector<cplx>{}), ArgumentError);
}

TEST_CASE("log-sum-exp metric") {
  SUBCASE("single tone: all terms equal") {
    const auto s = modulate(SymbolVector{cplx(1, 0)}, SignVector(1), SignalParams{1, 4});
    CHECK(log_sum_exp_metric(s, 10.0) == doctest::Approx(std::log(4.0) + 10.0).epsilon(1e-12));
  }
  SUBCASE("brackets kappa times PAPR") {
    Rng rng(10);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng() % 128;
      const auto s = random_signal(n, ConstellationKind::kQam16, rng);
      for (double kappa : {1.0, 2.5, 10.0, 50.0}) {
        const double v = log_sum_exp_metric(s, kappa);
        const double k_theta = kappa * papr(s).linear;
        CHECK(v >= k_theta - 1e-9 * k_theta);
        CHECK(v <= k_theta + std::log(static_cast<double>(s.size())) + 1e-9 * k_theta);
      }
    }
  }
  SUBCASE("large kappa does not overflow") {
    const std::vector<cplx> s(4096, cplx(30.0, 0.0));
    CHECK(std::isfinite(log_sum_exp_metric(s, 10.0)));
  }
  SUBCASE("kappa below one is a configuration error") {
    CHECK_THROWS_AS(log_sum_exp_metric(std::vector<cplx>(4, cplx(1, 0)), 0.5), ConfigError);
    CHECK_THROWS_AS(metric_function(Metric::kSe, 0.9)(std::vector<cplx>(4)), ConfigError);
  }
}

TEST_CASE("SRCM and RCM") {
  CHECK(srcm(std::vector<cplx>(4, std::polar(1.0, 1.0))).linear == doctest::Approx(1.0));
  CHECK_THROWS_AS(srcm(std::vector<cplx>{}), ArgumentError);
  CHECK(rcm(std::vector<double>{3.5}).linear == 3.5);
  CHECK(rcm(std::vector<double>{4.0, 8.0}).linear == 6.0);
  CHECK_THROWS_AS(rcm(std::vector<double>{}), ArgumentError);
}

TEST_CASE("uncoded RCM of 16-QAM at N = 512 is about 7.8 dB") {
  SimConfig cfg;
  cfg.metric = Metric::kSrcm;
  cfg.method = Method::kNone;
  cfg.n = 512;
  cfg.trials = 10000;
  cfg.seed = 17;
  const auto r = run_experiment(cfg);
  CHECK(rcm(r.samples).db() == doctest::Approx(7.8).epsilon(0.2 / 7.8));
}

TEST_CASE("metrics depend on magnitudes only") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_signal(16, ConstellationKind::kQam16, rng);
    const double p = papr(s).linear, e = srcm(s).linear, z = log_sum_exp_metric(s, 10.0);
    const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * draw_unit(rng));
    for (auto& v : s) v *= rot;
    CHECK(papr(s).linear == doctest::Approx(p).epsilon(1e-12));
    CHECK(srcm(s).linear == doctest::Approx(e).epsilon(1e-12));
    CHECK(log_sum_exp_metric(s, 10.0) == doctest::Approx(z).epsilon(1e-12));
    for (auto& v : s) v = -v;
    CHECK(papr(s).linear == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("metric names and report scales") {
  CHECK(parse_metric("srcm") == Metric::kSrcm);
  CHECK_THROWS_AS(parse_metric("cm"), ConfigError);
  CHECK(metric_report_value(Metric::kPapr, 10.0) == doctest::Approx(10.0));
  CHECK(metric_report_value(Metric::kCf, std::sqrt(10.0)) == doctest::Approx(10.0));
  CHECK(metric_report_value(Metric::kSe, 12.5) == 12.5);
  CHECK(std::isnan(MetricValue{0.0}.db()));
}
