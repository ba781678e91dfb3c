#pragma once

// Monte Carlo driver: draw random symbols, apply a selection method, and
// collect the metric of the transmitted signal over many trials.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "signsel/ccdf.hpp"
#include "signsel/ce_engine.hpp"
#include "signsel/constellation.hpp"
#include "signsel/metrics.hpp"

namespace signsel {

enum class Method { kNone, kCeExact, kCeCf, kCeSe, kCeSrcm, kSlm, kExhaustive };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);  // none|ce-exact|ce-cf|ce-se|ce-srcm|slm|exhaustive

struct SimConfig {
  Metric metric = Metric::kPapr;  // metric recorded per trial
  Method method = Method::kNone;
  std::size_t n = 64;
  ConstellationKind constellation = ConstellationKind::kQam16;
  std::size_t oversample = 4;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::size_t q = 100;
  double kappa = 10.0;
  std::optional<std::size_t> n_e;  // unset: 10 for ce-se, 0 otherwise
  std::size_t n_f = 0;
  SrcmRule rule = SrcmRule::kNormalized;
  std::size_t slm_s = 1;
  std::string out;

  std::size_t effective_n_e() const;
  CeConfig ce_config() const;
  // Throws ConfigError for inconsistent settings.
  void validate() const;

  nlohmann::json to_json() const;
  // Keys mirror the CLI flags (metric, method, n, constellation, oversample,
  // trials, seed, q, kappa, ne, nf, slm_s, rule, out); absent keys keep the
  // values already in `base`. Unknown keys throw ConfigError.
  static SimConfig from_json(const nlohmann::json& j, SimConfig base);
  static SimConfig from_json(const nlohmann::json& j);
};

struct RunResult {
  SimConfig config;
  std::vector<double> samples;  // linear metric value per trial, in trial order
  CcdfCurve curve;              // over metric_report_value of the samples
  std::optional<double> effective;  // at 1e-3, present when trials >= 10^4
  double mean_linear = 0.0;
  double mean_report = 0.0;  // metric_report_value(mean_linear)
  double max_linear = 0.0;
  double wall_seconds = 0.0;
  std::size_t workers = 1;

  nlohmann::json summary_json() const;
};

// Trial t uses the generator substream(seed, t) for both its data symbols and
// any randomness of the method, so results do not depend on `workers`.
RunResult run_experiment(const SimConfig& config, std::size_t workers = 1);

// The per-trial body, exposed for tests: returns the linear metric value.
double run_trial(const SimConfig& config, std::size_t trial, Synthesizer& synth,
                 const Constellation& constellation);

}  // namespace signsel
