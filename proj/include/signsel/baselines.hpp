#pragma once

// Reference selectors for the sign selection problem.

#include <cstddef>
#include <span>

#include "signsel/metrics.hpp"
#include "signsel/rng.hpp"
#include "signsel/signal.hpp"

namespace signsel {

struct BaselineConfig {
  std::size_t s = 1;                  // SLM candidate count
  std::size_t max_exhaustive_n = 20;  // enumeration cap

  void validate() const;  // S >= 1, throws ConfigError
};

struct BaselineResult {
  SignVector signs;
  double value = 0.0;  // metric_fn of the selected signal
};

// Global minimum over all 2^N sign vectors. Among equal values (within a
// relative 1e-12) the
// lexicographically smallest vector wins, ordering +1 before -1 with index 0
// most significant. Throws CapacityError when N > max_exhaustive_n.
BaselineResult exhaustive_min(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric,
                              std::size_t max_exhaustive_n = 20);

// Best of S candidates: the all +1 vector followed by S-1 i.i.d. uniform sign
// vectors drawn from rng. Ties go to the lowest candidate index, so the
// result for S is never worse than for any S' < S with the same rng state.
BaselineResult slm(std::span<const cplx> b, Synthesizer& synth, std::size_t s,
                   const MetricFn& metric, Rng& rng);

// All +1: the unmodified symbol.
BaselineResult uncoded(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric);

}  // namespace signsel
