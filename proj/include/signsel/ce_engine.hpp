#pragma once

// Sign selection by the method of conditional expectations.
//
// Signs are fixed one index at a time. At index j the engine compares
//   g±_j = E[f(b ⊙ X) | X_{0:j-1} = x*_{0:j-1}, X_j = ±1]
// and keeps the sign with the smaller value (+1 on an exact tie). The
// expectations are obtained either exactly (enumerating every completion of
// the remaining signs), by an empirical average over Q random completions, or
// through closed forms that model each signal sample as complex Gaussian with
// per-component variance δ_j² = (1 - j/N)/2 around the decided-prefix mean.
//
// Indices below n_f are not selected: their sign stays +1 and the symbol
// carries a full bit label (pruned selection).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "signsel/metrics.hpp"
#include "signsel/rng.hpp"
#include "signsel/signal.hpp"

namespace signsel {

enum class CeObjective { kCf, kSe, kSrcm };
enum class SrcmRule { kNormalized, kRaw };
enum class DecisionRule { kFixed, kExact, kEstimator, kClosedForm };
enum class TailSampling { kRandom, kExhaustive };

std::string_view to_string(CeObjective objective);
std::string_view to_string(SrcmRule rule);
std::string_view to_string(DecisionRule rule);
SrcmRule parse_srcm_rule(std::string_view name);  // normalized|raw

struct CeConfig {
  CeObjective metric = CeObjective::kSe;
  std::size_t q = 100;      // estimator shots
  double kappa = 10.0;      // SE exponent scale
  std::size_t n_e = 10;     // trailing indices decided by the estimator (SE, SRCM)
  std::size_t n_f = 0;      // leading indices fixed to +1
  SrcmRule rule = SrcmRule::kNormalized;
  std::uint64_t seed = 0;

  // Q=100, κ=10; N_e=10 for SE and 0 otherwise.
  static CeConfig defaults(CeObjective metric);
  // Throws ConfigError unless Q >= 1, κ >= 1, N_f <= N and N_e <= N - N_f.
  void validate(std::size_t n) const;
};

// Gaussian-model quantities at decision index j.
struct DecisionContext {
  std::size_t j = 0;
  double rho = 0.0;       // j / N
  double delta_sq = 0.0;  // (1 - rho) / 2
  double beta = 0.0;      // κδ²/(1 - 2κδ²)
  bool singular = false;  // |1 - 2κδ²| < 1e-9

  static DecisionContext at(std::size_t j, std::size_t n, double kappa);
  // The SE closed form is not evaluated at a singular β.
  bool beta_singular() const { return singular; }
};

struct Decision {
  std::int8_t sign = 1;
  DecisionRule rule = DecisionRule::kFixed;
  // Estimator/exact: g+ - g-. Closed form: the summed statistic whose sign
  // is negated to give the decision.
  double statistic = 0.0;
  double g_plus = 0.0;
  double g_minus = 0.0;
};

struct DecisionTrace {
  std::vector<Decision> decisions;  // one per subcarrier

  // Conditional expectation after each decision, min(g+, g-). Meaningful for
  // the exact and estimator rules only.
  std::vector<double> expectations() const;
};

struct Selection {
  SignVector signs;
  DecisionTrace trace;
};

// Exact conditional expectations by enumerating all 2^(N-j-1) completions.
// Throws CapacityError when N - n_f > 14.
Selection select_signs_exact(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric,
                             std::size_t n_f = 0);

inline constexpr std::size_t kMaxExactFreeSigns = 14;

// Crest-factor rule with Q-shot empirical averages; the + and - branches
// share the same tail realizations. kExhaustive replaces the random shots
// with every tail sign pattern (Q is ignored).
Selection select_signs_cf_estimator(std::span<const cplx> b, Synthesizer& synth,
                                    const CeConfig& config, Rng& rng,
                                    TailSampling tails = TailSampling::kRandom);

// Noncentrality of |s(n)/δ_j|² for both candidate signs at sample n:
// λ± = |prefix(n) ± b_j e^{i2πjn/(LN)}|² / (δ_j² σ_b² N). Throws DomainError for j >= N.
std::pair<double, double> noncentrality(const PrefixState& prefix, cplx b_j, std::size_t j,
                                        std::size_t n, const Synthesizer& synth);

// Same over every sample n.
void noncentrality(const PrefixState& prefix, cplx b_j, std::size_t j, const Synthesizer& synth,
                   std::span<double> lambda_plus, std::span<double> lambda_minus);

// Sum-exp rule: x_j = -sign Σ_n (e^{βλ+} - e^{βλ-}) for j < N - N_e, the
// estimator for the last N_e indices and at a singular β, comparing the
// Q-shot means of ζ in the log domain.
Selection select_signs_se(std::span<const cplx> b, Synthesizer& synth, const CeConfig& config,
                          Rng& rng);

// SRCM rule: x_j = -sign Σ_n [P(λ+) - P(λ-)], P(λ) = λ³ + 18λ² + 72λ.
// kRaw applies P to the unnormalized |prefix ± b_j e|² instead of λ.
Selection select_signs_srcm(std::span<const cplx> b, Synthesizer& synth, const CeConfig& config,
                            Rng& rng);

// Dispatch on config.metric.
Selection select_signs(std::span<const cplx> b, Synthesizer& synth, const CeConfig& config,
                       Rng& rng);

// E_X[f(b ⊙ X)] over uniform signs; exact enumeration when N <= 14,
// otherwise the mean over q random sign vectors.
double initial_expectation(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric,
                           std::size_t q, Rng& rng);

// g± at index j given a decided prefix (j == prefix.decided_count()).
// Exposed for the estimator-accuracy checks.
struct BranchEstimate {
  double plus = 0.0;
  double minus = 0.0;
};

// kMean averages the metric over the tails. kLogMeanExp returns
// ln(mean e^v), i.e. ln E[ζ] when v = ln ζ.
enum class Aggregation { kMean, kLogMeanExp };

BranchEstimate estimate_branches(std::span<const cplx> b, Synthesizer& synth,
                                 const PrefixState& prefix, std::size_t j, const MetricFn& metric,
                                 std::size_t q, Rng& rng, TailSampling tails,
                                 Aggregation aggregation = Aggregation::kMean);

}  // namespace signsel
