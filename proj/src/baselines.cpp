#include "signsel/baselines.hpp"

#include <bit>
#include <string>
#include <vector>

#include "signsel/errors.hpp"

namespace signsel {

void BaselineConfig::validate() const {
  if (s < 1) throw ConfigError("SLM candidate count S must be >= 1");
  if (max_exhaustive_n > 62) throw ConfigError("max_exhaustive_n must be <= 62");
}

namespace {

void check_lengths(std::span<const cplx> b, const Synthesizer& synth) {
  if (b.size() != synth.subcarriers()) {
    throw ArgumentError("expected " + std::to_string(synth.subcarriers()) + " symbols, got " +
                        std::to_string(b.size()));
  }
}

}  // namespace

BaselineResult exhaustive_min(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric,
                              std::size_t max_exhaustive_n) {
  check_lengths(b, synth);
  const std::size_t n = b.size();
  if (n > max_exhaustive_n || n > 62) {
    throw CapacityError("exhaustive search over N=" + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(max_exhaustive_n));
  }
  const std::size_t m = synth.samples();
  const double scale = synth.scale();
  std::vector<cplx> sum(m), signal(m);
  for (std::size_t k = 0; k < n; ++k) synth.accumulate_tone(sum, b[k], k);

  // Gray-code walk over patterns; pattern bit (n-1-k) set means x_k = -1, so
  // the numeric pattern order is the lexicographic order with +1 first.
  std::uint64_t pattern = 0;
  std::uint64_t best_pattern = 0;
  double best = 0.0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t step = 0; step < count; ++step) {
    if (step > 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step));
      const std::size_t k = n - 1 - bit;
      const double sign = (pattern >> bit) & 1U ? -1.0 : 1.0;
      synth.accumulate_tone(sum, -2.0 * sign * b[k], k);
      pattern ^= std::uint64_t{1} << bit;
    }
    for (std::size_t i = 0; i < m; ++i) signal[i] = scale * sum[i];
    const double v = metric(signal);
    // Values within rounding of each other are ties.
    const double margin = 1e-12 * std::abs(best);
    if (step == 0 || v < best - margin || (v <= best + margin && pattern < best_pattern)) {
      best = v;
      best_pattern = pattern;
    }
  }

  SignVector x(n);
  for (std::size_t k = 0; k < n; ++k) {
    if ((best_pattern >> (n - 1 - k)) & 1U) x.set(k, -1);
  }
  // Recompute from scratch so the reported value carries no walk drift.
  return {x, metric(synth.modulate(b, x))};
}

BaselineResult slm(std::span<const cplx> b, Synthesizer& synth, std::size_t s,
                   const MetricFn& metric, Rng& rng) {
  check_lengths(b, synth);
  if (s < 1) throw ConfigError("SLM candidate count S must be >= 1");
  SignVector candidate(b.size());
  BaselineResult best{candidate, metric(synth.modulate(b, candidate))};
  for (std::size_t c = 1; c < s; ++c) {
    draw_signs(rng, candidate.mutable_values());
    const double v = metric(synth.modulate(b, candidate));
    if (v < best.value) best = {candidate, v};
  }
  return best;
}

BaselineResult uncoded(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric) {
  check_lengths(b, synth);
  SignVector x(b.size());
  return {x, metric(synth.modulate(b, x))};
}

}  // namespace signsel
