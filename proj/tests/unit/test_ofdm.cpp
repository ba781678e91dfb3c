#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "signsel/constellation.hpp"
#include "signsel/errors.hpp"
#include "signsel/signal.hpp"

using namespace signsel;

namespace {

std::vector<int> to_ints(const SignVector& x) { return {x.values().begin(), x.values().end()}; }

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const cplx> a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

SignVector random_signs(std::size_t n, Rng& rng) {
  SignVector x(n);
  draw_signs(rng, x.mutable_values());
  return x;
}

}  // namespace

TEST_CASE("qpsk constellation is the unit-power square with a right half-plane half-set") {
  const auto c = build_constellation(ConstellationKind::kQpsk);
  REQUIRE(c.size() == 4);
  const double a = 1.0 / std::sqrt(2.0);
  for (cplx y : {cplx(a, a), cplx(a, -a), cplx(-a, a), cplx(-a, -a)}) {
    CHECK(c.index_of(y).has_value());
  }
  REQUIRE(c.half_set.size() == 2);
  for (const auto& y : c.half_set) CHECK(y.real() > 0.0);
  CHECK(c.sigma_b == 1.0);
}

TEST_CASE("16-QAM grid power equals the brute-force mean over the odd grid") {
  double acc = 0.0;
  for (int i : {-3, -1, 1, 3}) {
    for (int q : {-3, -1, 1, 3}) acc += i * i + q * q;
  }
  const auto c = build_constellation(ConstellationKind::kQam16);
  CHECK(c.grid_power == doctest::Approx(acc / 16.0).epsilon(1e-15));
  CHECK(c.grid_power == doctest::Approx(10.0));
  // Unnormalized points lie on {±1, ±3}².
  for (const auto& y : c.points) {
    const cplx g = y * std::sqrt(c.grid_power);
    CHECK(std::set<int>{-3, -1, 1, 3}.count(static_cast<int>(std::lround(g.real()))) == 1);
    CHECK(std::abs(g.real() - std::round(g.real())) < 1e-12);
    CHECK(std::abs(g.imag() - std::round(g.imag())) < 1e-12);
  }
}

TEST_CASE("constellation invariants hold for every supported kind") {
  for (auto kind : {ConstellationKind::kQpsk, ConstellationKind::kQam16, ConstellationKind::kQam64}) {
    CAPTURE(to_string(kind));
    const auto c = build_constellation(kind);
    cplx sum{};
    double power = 0.0;
    for (const auto& y : c.points) {
      CHECK(c.index_of(-y).has_value());
      sum += y;
      power += std::norm(y);
    }
    CHECK(std::abs(sum) < 1e-12);
    CHECK(power / static_cast<double>(c.size()) == doctest::Approx(c.sigma_b * c.sigma_b));
    REQUIRE(c.half_set.size() == c.size() / 2);
    for (std::size_t i = 0; i < c.half_set.size(); ++i) {
      for (std::size_t k = 0; k < c.half_set.size(); ++k) {
        CHECK(std::abs(c.half_set[i] + c.half_set[k]) > 1e-9);
      }
      CHECK(c.index_of(c.half_set[i]).has_value());
    }
    // Gray labelling: nearest neighbours differ in exactly one bit.
    const double spacing = 2.0 / std::sqrt(c.grid_power);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (std::abs(std::abs(c.points[i] - c.points[k]) - spacing) < 1e-9) {
          CHECK(std::popcount(static_cast<unsigned>(i ^ k)) == 1);
        }
      }
    }
  }
}

TEST_CASE("constellation names parse and unknown names are configuration errors") {
  CHECK(parse_constellation_kind("qam64") == ConstellationKind::kQam64);
  CHECK(parse_constellation_kind("qpsk") == ConstellationKind::kQpsk);
  CHECK_THROWS_AS(parse_constellation_kind("qam32"), ConfigError);
}

TEST_CASE("draw_symbols is reproducible, unbiased in power and rejects N = 0") {
  const auto c = build_constellation(ConstellationKind::kQpsk);
  Rng a(42), b(42);
  CHECK(draw_symbols(c, 4, a) == draw_symbols(c, 4, b));

  const auto q = build_constellation(ConstellationKind::kQam16);
  Rng rng(7);
  const auto many = draw_symbols(q, 100000, rng);
  double power = 0.0;
  for (const auto& y : many) {
    CHECK(q.index_of(y).has_value());
    power += std::norm(y);
  }
  CHECK(std::abs(power / 1e5 - 1.0) < 0.01);
  CHECK_THROWS_AS(draw_symbols(q, 0, rng), ArgumentError);
}

TEST_CASE("signal parameters and sign vectors validate their inputs") {
  CHECK_THROWS_AS(SignalParams({0, 4}).validate(), ArgumentError);
  CHECK_THROWS_AS(SignalParams({8, 1}).validate(), ArgumentError);
  CHECK_NOTHROW(SignalParams({8, 2}).validate());
  CHECK_THROWS_AS(SignVector({1, 0, -1}), ArgumentError);
  SignVector x{1, -1};
  CHECK_THROWS_AS(x.set(0, 2), ArgumentError);
  CHECK(x.negated() == SignVector{-1, 1});
}

TEST_CASE("a single tone has a constant unit envelope") {
  const auto c = build_constellation(ConstellationKind::kQam16);
  for (const auto& y : c.points) {
    const SymbolVector b{y / std::abs(y)};
    const auto s = modulate(b, SignVector(1), SignalParams{1, 4});
    REQUIRE(s.size() == 4);
    for (const auto& v : s) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("equal symbols add coherently at n = 0") {
  const auto c = build_constellation(ConstellationKind::kQpsk);
  for (std::size_t n : {1U, 4U, 16U, 64U}) {
    const SymbolVector b(n, c.points[0]);
    const auto s = modulate(b, SignVector(n), SignalParams{n, 4});
    CHECK(std::norm(s[0]) == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
  }
}

TEST_CASE("FFT synthesis matches the direct double loop") {
  const auto c = build_constellation(ConstellationKind::kQam16);
  Rng rng(2024);
  for (std::size_t n : {1U, 3U, 8U, 13U, 32U}) {
    for (std::size_t l : {2U, 4U, 5U}) {
      const auto b = draw_symbols(c, n, rng);
      const auto x = random_signs(n, rng);
      const auto s = modulate(b, x, SignalParams{n, l});
      const auto ref = oracle::modulate(b, to_ints(x), l);
      CHECK(max_abs_diff(s, ref) <= 1e-12 * std::max(1.0, max_abs(ref)));
    }
  }
}

TEST_CASE("modulate rejects mismatched lengths") {
  Synthesizer synth(SignalParams{8, 4});
  const SymbolVector b(8, cplx(1, 0));
  CHECK_THROWS_AS(synth.modulate(b, SignVector(7)), ArgumentError);
  CHECK_THROWS_AS(synth.modulate(SymbolVector(9, cplx(1, 0)), SignVector(9)), ArgumentError);
}

TEST_CASE("average power is preserved for every sign vector") {
  const auto c = build_constellation(ConstellationKind::kQam64);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 100;
    const auto b = draw_symbols(c, n, rng);
    const auto x = random_signs(n, rng);
    const auto s = modulate(b, x, SignalParams{n, 4});
    double time_power = 0.0;
    for (const auto& v : s) time_power += std::norm(v);
    time_power /= static_cast<double>(s.size());
    double freq_power = 0.0;
    for (const auto& y : b) freq_power += std::norm(y);
    freq_power /= static_cast<double>(n);
    CHECK(time_power == doctest::Approx(freq_power).epsilon(1e-9));
  }
}

TEST_CASE("negating every sign negates the signal") {
  const auto c = build_constellation(ConstellationKind::kQam16);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = draw_symbols(c, 24, rng);
    const auto x = random_signs(24, rng);
    Synthesizer synth(SignalParams{24, 4});
    const auto s = synth.modulate(b, x);
    const auto t = synth.modulate(b, x.negated());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] + t[i]) < 1e-12);
  }
}

TEST_CASE("prefix extension matches scratch recomputation") {
  const auto c = build_constellation(ConstellationKind::kQam16);
  Rng rng(99);
  SUBCASE("two steps") {
    const auto b = draw_symbols(c, 4, rng);
    Synthesizer synth(SignalParams{4, 4});
    PrefixState p(synth.samples());
    p = prefix_extend(p, synth, b[0], 0, 1);
    p = prefix_extend(p, synth, b[1], 1, -1);
    const auto ref = PrefixState::from_scratch(synth, b, SignVector{1, -1, 1, 1}, 2);
    CHECK(p.decided_count() == 2);
    CHECK(max_abs_diff(p.partial(), ref.partial()) < 1e-14);
  }
  SUBCASE("retracting restores the prior state") {
    const auto b = draw_symbols(c, 4, rng);
    Synthesizer synth(SignalParams{4, 4});
    PrefixState p(synth.samples());
    p.extend(synth, b[0], 0, 1);
    const std::vector<cplx> before(p.partial().begin(), p.partial().end());
    p.extend(synth, b[1], 1, -1);
    p.retract(synth, b[1], -1);
    CHECK(p.decided_count() == 1);
    CHECK(max_abs_diff(p.partial(), before) < 1e-15);
  }
  SUBCASE("out-of-order extension is a state error") {
    Synthesizer synth(SignalParams{4, 4});
    PrefixState p(synth.samples());
    CHECK_THROWS_AS(p.extend(synth, cplx(1, 0), 1, 1), StateError);
  }
  SUBCASE("1000 random prefixes up to N = 64") {
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + rng() % 64;
      const auto b = draw_symbols(c, n, rng);
      const auto x = random_signs(n, rng);
      Synthesizer synth(SignalParams{n, 4});
      PrefixState p(synth.samples());
      const std::size_t j = rng() % (n + 1);
      for (std::size_t k = 0; k < j; ++k) p.extend(synth, b[k], k, x[k]);
      // Scratch oracle: direct evaluation of the unnormalized partial sum.
      double scale = 0.0;
      double err = 0.0;
      for (std::size_t t = 0; t < synth.samples(); ++t) {
        cplx acc{};
        for (std::size_t k = 0; k < j; ++k) {
          const double phase = 2.0 * std::numbers::pi * static_cast<double>(k * t) /
                               static_cast<double>(synth.samples());
          acc += b[k] * static_cast<double>(x[k]) * cplx(std::cos(phase), std::sin(phase));
        }
        scale = std::max(scale, std::abs(acc));
        err = std::max(err, std::abs(acc - p.partial()[t]));
      }
      CHECK(err <= 1e-9 * std::max(1.0, scale));
    }
  }
}
