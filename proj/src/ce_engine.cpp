#include "signsel/ce_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "signsel/errors.hpp"

namespace signsel {

std::string_view to_string(CeObjective objective) {
  switch (objective) {
    case CeObjective::kCf: return "cf";
    case CeObjective::kSe: return "se";
    case CeObjective::kSrcm: return "srcm";
  }
  return "unknown";
}

std::string_view to_string(SrcmRule rule) {
  return rule == SrcmRule::kRaw ? "raw" : "normalized";
}

std::string_view to_string(DecisionRule rule) {
  switch (rule) {
    case DecisionRule::kFixed: return "fixed";
    case DecisionRule::kExact: return "exact";
    case DecisionRule::kEstimator: return "estimator";
    case DecisionRule::kClosedForm: return "closed-form";
  }
  return "unknown";
}

SrcmRule parse_srcm_rule(std::string_view name) {
  if (name == "normalized") return SrcmRule::kNormalized;
  if (name == "raw") return SrcmRule::kRaw;
  throw ConfigError("unknown SRCM rule '" + std::string(name) + "'");
}

CeConfig CeConfig::defaults(CeObjective metric) {
  CeConfig c;
  c.metric = metric;
  c.n_e = metric == CeObjective::kSe ? 10 : 0;
  return c;
}

void CeConfig::validate(std::size_t n) const {
  if (q < 1) throw ConfigError("Q must be >= 1");
  if (!(kappa >= 1.0)) throw ConfigError("kappa must be >= 1");
  if (n_f > n) throw ConfigError("N_f must not exceed N");
  if (n_e > n - n_f) throw ConfigError("N_e must not exceed N - N_f");
}

DecisionContext DecisionContext::at(std::size_t j, std::size_t n, double kappa) {
  DecisionContext ctx;
  ctx.j = j;
  ctx.rho = static_cast<double>(j) / static_cast<double>(n);
  ctx.delta_sq = 0.5 * (1.0 - ctx.rho);
  const double t = kappa * ctx.delta_sq;
  const double denom = 1.0 - 2.0 * t;
  ctx.singular = std::abs(denom) < 1e-9;
  ctx.beta = denom == 0.0 ? std::numeric_limits<double>::infinity() : t / denom;
  return ctx;
}

std::vector<double> DecisionTrace::expectations() const {
  std::vector<double> out;
  out.reserve(decisions.size());
  for (const auto& d : decisions) out.push_back(std::min(d.g_plus, d.g_minus));
  return out;
}

namespace {

constexpr std::size_t kDirectTailMax = 8;
constexpr std::size_t kMaxEnumeratedTail = 30;

void check_lengths(std::span<const cplx> b, const Synthesizer& synth) {
  if (b.size() != synth.subcarriers()) {
    throw ArgumentError("expected " + std::to_string(synth.subcarriers()) + " symbols, got " +
                        std::to_string(b.size()));
  }
}

void write_tone(const Synthesizer& synth, std::span<cplx> out, cplx coeff, std::size_t k) {
  std::fill(out.begin(), out.end(), cplx{});
  synth.accumulate_tone(out, coeff, k);
}

double aggregate(std::span<const double> values, Aggregation aggregation) {
  if (aggregation == Aggregation::kMean) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }
  const double peak = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum / static_cast<double>(values.size()));
}

// Differences within this relative margin count as ties. Some ties are exact
// in real arithmetic (the j = 1 decision of any metric invariant under a
// half-period time shift) and would otherwise be settled by rounding.
constexpr double kTieTolerance = 1e-12;

// Tie resolves to +1.
std::int8_t pick_smaller(double g_plus, double g_minus) {
  const double margin = kTieTolerance * std::max(std::abs(g_plus), std::abs(g_minus));
  return g_minus < g_plus - margin ? std::int8_t{-1} : std::int8_t{1};
}

// -sign(statistic), +1 when |statistic| is within rounding of zero relative
// to `magnitude`, the sum of absolute values of its terms.
std::int8_t negated_sign(double statistic, double magnitude) {
  return statistic > kTieTolerance * magnitude ? std::int8_t{-1} : std::int8_t{1};
}

Decision fixed_decision() { return Decision{1, DecisionRule::kFixed, 0.0, 0.0, 0.0}; }

Decision estimator_decision(const BranchEstimate& g, DecisionRule rule) {
  return Decision{pick_smaller(g.plus, g.minus), rule, g.plus - g.minus, g.plus, g.minus};
}

}  // namespace

namespace {

// Shared driver for g± estimation. `eval(partial, tail, tone)` returns the
// metric of (partial + tail ± tone) for both signs.
template <typename Eval>
BranchEstimate estimate_impl(std::span<const cplx> b, Synthesizer& synth, const PrefixState& prefix,
                             std::size_t j, std::size_t q, Rng& rng, TailSampling tails,
                             Aggregation aggregation, Eval&& eval) {
  check_lengths(b, synth);
  const std::size_t n = synth.subcarriers();
  const std::size_t m = synth.samples();
  if (j >= n) throw ArgumentError("decision index out of range");
  if (prefix.decided_count() != j) throw StateError("prefix does not end at the decision index");
  if (tails == TailSampling::kRandom && q < 1) throw ConfigError("Q must be >= 1");

  const std::size_t tail_len = n - j - 1;
  const auto partial = prefix.partial();
  std::vector<cplx> tone(m);
  write_tone(synth, tone, b[j], j);
  std::vector<cplx> tail(m);
  std::vector<double> v_plus, v_minus;

  auto record = [&] {
    const auto [plus, minus] = eval(partial, std::span<const cplx>(tail), std::span<const cplx>(tone));
    v_plus.push_back(plus);
    v_minus.push_back(minus);
  };

  if (tails == TailSampling::kExhaustive) {
    if (tail_len > kMaxEnumeratedTail) throw CapacityError("too many free signs to enumerate");
    const std::size_t count = std::size_t{1} << tail_len;
    v_plus.reserve(count);
    v_minus.reserve(count);
    std::vector<std::int8_t> x(tail_len, 1);
    for (std::size_t k = j + 1; k < n; ++k) synth.accumulate_tone(tail, b[k], k);
    record();
    // Gray-code walk: one sign flip per step.
    for (std::size_t step = 1; step < count; ++step) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step));
      const std::size_t k = j + 1 + bit;
      synth.accumulate_tone(tail, -2.0 * static_cast<double>(x[bit]) * b[k], k);
      x[bit] = static_cast<std::int8_t>(-x[bit]);
      record();
    }
  } else {
    v_plus.reserve(q);
    v_minus.reserve(q);
    std::vector<std::int8_t> x(tail_len);
    std::vector<cplx> coeffs(tail_len > kDirectTailMax ? n : 0);
    for (std::size_t shot = 0; shot < q; ++shot) {
      draw_signs(rng, x);
      if (tail_len <= kDirectTailMax) {
        std::fill(tail.begin(), tail.end(), cplx{});
        for (std::size_t t = 0; t < tail_len; ++t) {
          synth.accumulate_tone(tail, static_cast<double>(x[t]) * b[j + 1 + t], j + 1 + t);
        }
      } else {
        for (std::size_t t = 0; t < tail_len; ++t) {
          coeffs[j + 1 + t] = static_cast<double>(x[t]) * b[j + 1 + t];
        }
        synth.synthesize(coeffs, tail);
      }
      record();
    }
  }
  return {aggregate(v_plus, aggregation), aggregate(v_minus, aggregation)};
}

BranchEstimate estimate_crest_factor(std::span<const cplx> b, Synthesizer& synth,
                                     const PrefixState& prefix, std::size_t j, std::size_t q,
                                     Rng& rng, TailSampling tails) {
  const double scale_sq = synth.scale() * synth.scale();
  auto eval = [scale_sq](std::span<const cplx> partial, std::span<const cplx> tail,
                         std::span<const cplx> tone) {
    double peak_plus = 0.0;
    double peak_minus = 0.0;
    for (std::size_t i = 0; i < partial.size(); ++i) {
      const cplx base = partial[i] + tail[i];
      peak_plus = std::max(peak_plus, std::norm(base + tone[i]));
      peak_minus = std::max(peak_minus, std::norm(base - tone[i]));
    }
    return std::pair{std::sqrt(peak_plus * scale_sq), std::sqrt(peak_minus * scale_sq)};
  };
  return estimate_impl(b, synth, prefix, j, q, rng, tails, Aggregation::kMean, eval);
}

}  // namespace

BranchEstimate estimate_branches(std::span<const cplx> b, Synthesizer& synth,
                                 const PrefixState& prefix, std::size_t j, const MetricFn& metric,
                                 std::size_t q, Rng& rng, TailSampling tails,
                                 Aggregation aggregation) {
  const double scale = synth.scale();
  std::vector<cplx> s_plus(synth.samples()), s_minus(synth.samples());
  auto eval = [&](std::span<const cplx> partial, std::span<const cplx> tail,
                  std::span<const cplx> tone) {
    for (std::size_t i = 0; i < partial.size(); ++i) {
      const cplx base = partial[i] + tail[i];
      s_plus[i] = scale * (base + tone[i]);
      s_minus[i] = scale * (base - tone[i]);
    }
    return std::pair{metric(s_plus), metric(s_minus)};
  };
  return estimate_impl(b, synth, prefix, j, q, rng, tails, aggregation, eval);
}

Selection select_signs_exact(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric,
                             std::size_t n_f) {
  check_lengths(b, synth);
  const std::size_t n = b.size();
  if (n_f > n) throw ConfigError("N_f must not exceed N");
  if (n - n_f > kMaxExactFreeSigns) {
    throw CapacityError("exact selection supports at most " + std::to_string(kMaxExactFreeSigns) +
                        " free signs");
  }
  Selection out{SignVector(n), {}};
  out.trace.decisions.reserve(n);
  PrefixState prefix(synth.samples());
  Rng unused(0);
  for (std::size_t j = 0; j < n; ++j) {
    Decision d = fixed_decision();
    if (j >= n_f) {
      const auto g = estimate_branches(b, synth, prefix, j, metric, 1, unused,
                                       TailSampling::kExhaustive);
      d = estimator_decision(g, DecisionRule::kExact);
    }
    out.signs.set(j, d.sign);
    out.trace.decisions.push_back(d);
    prefix.extend(synth, b[j], j, d.sign);
  }
  return out;
}

Selection select_signs_cf_estimator(std::span<const cplx> b, Synthesizer& synth,
                                    const CeConfig& config, Rng& rng, TailSampling tails) {
  check_lengths(b, synth);
  const std::size_t n = b.size();
  config.validate(n);
  Selection out{SignVector(n), {}};
  out.trace.decisions.reserve(n);
  PrefixState prefix(synth.samples());
  for (std::size_t j = 0; j < n; ++j) {
    Decision d = fixed_decision();
    if (j >= config.n_f) {
      const auto g = estimate_crest_factor(b, synth, prefix, j, config.q, rng, tails);
      d = estimator_decision(g, DecisionRule::kEstimator);
    }
    out.signs.set(j, d.sign);
    out.trace.decisions.push_back(d);
    prefix.extend(synth, b[j], j, d.sign);
  }
  return out;
}

std::pair<double, double> noncentrality(const PrefixState& prefix, cplx b_j, std::size_t j,
                                        std::size_t n, const Synthesizer& synth) {
  const std::size_t subcarriers = synth.subcarriers();
  if (j >= subcarriers) throw DomainError("noncentrality: delta_j = 0 at j = N");
  if (prefix.decided_count() != j) throw StateError("prefix does not end at the decision index");
  if (n >= synth.samples()) throw ArgumentError("sample index out of range");
  const auto ctx = DecisionContext::at(j, subcarriers, 1.0);
  const double c = synth.scale() * synth.scale() / ctx.delta_sq;
  const cplx t = b_j * synth.root((j % synth.samples()) * n);
  const cplx p = prefix.partial()[n];
  return {c * std::norm(p + t), c * std::norm(p - t)};
}

void noncentrality(const PrefixState& prefix, cplx b_j, std::size_t j, const Synthesizer& synth,
                   std::span<double> lambda_plus, std::span<double> lambda_minus) {
  const std::size_t subcarriers = synth.subcarriers();
  const std::size_t m = synth.samples();
  if (j >= subcarriers) throw DomainError("noncentrality: delta_j = 0 at j = N");
  if (prefix.decided_count() != j) throw StateError("prefix does not end at the decision index");
  if (lambda_plus.size() != m || lambda_minus.size() != m) {
    throw ArgumentError("noncentrality: output size mismatch");
  }
  const auto ctx = DecisionContext::at(j, subcarriers, 1.0);
  const double c = synth.scale() * synth.scale() / ctx.delta_sq;
  const auto partial = prefix.partial();
  const auto roots = synth.roots();
  const std::size_t step = j % m;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx t = b_j * roots[idx];
    lambda_plus[i] = c * std::norm(partial[i] + t);
    lambda_minus[i] = c * std::norm(partial[i] - t);
    idx += step;
    if (idx >= m) idx -= m;
  }
}

namespace {

struct Statistic {
  double value = 0.0;
  double magnitude = 0.0;  // Σ |terms|
};

// Σ_n (e^{βλ+} - e^{βλ-}) scaled by e^{-max βλ}; the common factor is positive.
Statistic se_statistic(std::span<const double> lp, std::span<const double> lm, double beta) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lp.size(); ++i) {
    peak = std::max(peak, std::max(beta * lp[i], beta * lm[i]));
  }
  Statistic stat;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    const double ep = std::exp(beta * lp[i] - peak);
    const double em = std::exp(beta * lm[i] - peak);
    stat.value += ep - em;
    stat.magnitude += ep + em;
  }
  return stat;
}

// Σ_n [P(λ+) - P(λ-)] with λ± = c |p(n) ± b_j e^{i2πjn/(LN)}|². Writing
// λ± = A ± D, the difference of the cubic P(λ) = λ³ + 18λ² + 72λ is
// 2D(3A² + D² + 36A + 72). The previous decision's term `pending` (at index
// j-1) is folded into `partial` in the same pass.
template <bool kPow2>
Statistic srcm_statistic(std::span<const cplx> roots, std::span<cplx> partial, cplx pending,
                      std::size_t j, cplx b_j, double c) {
  const std::size_t m = partial.size();
  const std::size_t mask = m - 1;
  const std::size_t step = j % m;
  const std::size_t prev_step = (j + m - 1) % m;
  const double tone_power = std::norm(b_j);
  std::size_t idx = 0;
  std::size_t prev_idx = 0;
  double acc = 0.0;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx p = partial[i] + pending * roots[prev_idx];
    partial[i] = p;
    const cplx t = b_j * roots[idx];
    const double a = c * (std::norm(p) + tone_power);
    const double d = 2.0 * c * (p.real() * t.real() + p.imag() * t.imag());
    const double term = d * (a * (3.0 * a + 36.0) + d * d + 72.0);
    acc += term;
    magnitude += std::abs(term);
    if constexpr (kPow2) {
      idx = (idx + step) & mask;
      prev_idx = (prev_idx + prev_step) & mask;
    } else {
      idx += step;
      if (idx >= m) idx -= m;
      prev_idx += prev_step;
      if (prev_idx >= m) prev_idx -= m;
    }
  }
  return {2.0 * acc, 2.0 * magnitude};
}

}  // namespace

Selection select_signs_se(std::span<const cplx> b, Synthesizer& synth, const CeConfig& config,
                          Rng& rng) {
  check_lengths(b, synth);
  const std::size_t n = b.size();
  config.validate(n);
  const std::size_t m = synth.samples();
  const MetricFn lse = metric_function(Metric::kSe, config.kappa);
  Selection out{SignVector(n), {}};
  out.trace.decisions.reserve(n);
  PrefixState prefix(m);
  std::vector<double> lp(m), lm(m);
  for (std::size_t j = 0; j < n; ++j) {
    Decision d = fixed_decision();
    if (j >= config.n_f) {
      const auto ctx = DecisionContext::at(j, n, config.kappa);
      if (j >= n - config.n_e || ctx.beta_singular()) {
        const auto g = estimate_branches(b, synth, prefix, j, lse, config.q, rng,
                                         TailSampling::kRandom, Aggregation::kLogMeanExp);
        d = estimator_decision(g, DecisionRule::kEstimator);
      } else {
        noncentrality(prefix, b[j], j, synth, lp, lm);
        const auto stat = se_statistic(lp, lm, ctx.beta);
        d = Decision{negated_sign(stat.value, stat.magnitude), DecisionRule::kClosedForm,
                     stat.value, 0.0, 0.0};
      }
    }
    out.signs.set(j, d.sign);
    out.trace.decisions.push_back(d);
    prefix.extend(synth, b[j], j, d.sign);
  }
  return out;
}

Selection select_signs_srcm(std::span<const cplx> b, Synthesizer& synth, const CeConfig& config,
                            Rng& rng) {
  check_lengths(b, synth);
  const std::size_t n = b.size();
  config.validate(n);
  const std::size_t m = synth.samples();
  const bool pow2 = std::has_single_bit(m);
  const MetricFn eta = metric_function(Metric::kSrcm);
  Selection out{SignVector(n), {}};
  out.trace.decisions.reserve(n);
  // The closed-form passes keep a lazily updated copy of the prefix sum; the
  // PrefixState is synchronized before any estimator decision.
  std::vector<cplx> partial(m);
  cplx pending{};
  PrefixState prefix(m);
  for (std::size_t j = 0; j < n; ++j) {
    Decision d = fixed_decision();
    const bool closed_form = j >= config.n_f && j < n - config.n_e;
    if (closed_form) {
      const double c = config.rule == SrcmRule::kNormalized
                           ? synth.scale() * synth.scale() / DecisionContext::at(j, n, 1.0).delta_sq
                           : 1.0;
      const auto stat = pow2 ? srcm_statistic<true>(synth.roots(), partial, pending, j, b[j], c)
                             : srcm_statistic<false>(synth.roots(), partial, pending, j, b[j], c);
      d = Decision{negated_sign(stat.value, stat.magnitude), DecisionRule::kClosedForm, stat.value,
                   0.0, 0.0};
      pending = static_cast<double>(d.sign) * b[j];
    } else {
      if (pending != cplx{}) {
        synth.accumulate_tone(partial, pending, j - 1);
        pending = {};
      }
      if (j >= config.n_f) {
        prefix = PrefixState::from_partial(partial, j);
        const auto g = estimate_branches(b, synth, prefix, j, eta, config.q, rng,
                                         TailSampling::kRandom);
        d = estimator_decision(g, DecisionRule::kEstimator);
      }
      synth.accumulate_tone(partial, static_cast<double>(d.sign) * b[j], j);
    }
    out.signs.set(j, d.sign);
    out.trace.decisions.push_back(d);
  }
  return out;
}

Selection select_signs(std::span<const cplx> b, Synthesizer& synth, const CeConfig& config,
                       Rng& rng) {
  switch (config.metric) {
    case CeObjective::kCf: return select_signs_cf_estimator(b, synth, config, rng);
    case CeObjective::kSe: return select_signs_se(b, synth, config, rng);
    case CeObjective::kSrcm: return select_signs_srcm(b, synth, config, rng);
  }
  throw ConfigError("unknown CE objective");
}

double initial_expectation(std::span<const cplx> b, Synthesizer& synth, const MetricFn& metric,
                           std::size_t q, Rng& rng) {
  check_lengths(b, synth);
  const std::size_t n = b.size();
  const std::size_t m = synth.samples();
  const double scale = synth.scale();
  std::vector<cplx> sum(m), signal(m);
  auto evaluate = [&] {
    for (std::size_t i = 0; i < m; ++i) signal[i] = scale * sum[i];
    return metric(signal);
  };

  if (n <= kMaxExactFreeSigns) {
    std::vector<std::int8_t> x(n, 1);
    for (std::size_t k = 0; k < n; ++k) synth.accumulate_tone(sum, b[k], k);
    const std::size_t count = std::size_t{1} << n;
    double total = evaluate();
    for (std::size_t step = 1; step < count; ++step) {
      const auto k = static_cast<std::size_t>(std::countr_zero(step));
      synth.accumulate_tone(sum, -2.0 * static_cast<double>(x[k]) * b[k], k);
      x[k] = static_cast<std::int8_t>(-x[k]);
      total += evaluate();
    }
    return total / static_cast<double>(count);
  }

  if (q < 1) throw ConfigError("Q must be >= 1");
  SignVector x(n);
  double total = 0.0;
  for (std::size_t shot = 0; shot < q; ++shot) {
    draw_signs(rng, x.mutable_values());
    total += metric(synth.modulate(b, x));
  }
  return total / static_cast<double>(q);
}

}  // namespace signsel
