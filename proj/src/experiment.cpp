#include "signsel/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "signsel/baselines.hpp"
#include "signsel/errors.hpp"

namespace signsel {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kNone: return "none";
    case Method::kCeExact: return "ce-exact";
    case Method::kCeCf: return "ce-cf";
    case Method::kCeSe: return "ce-se";
    case Method::kCeSrcm: return "ce-srcm";
    case Method::kSlm: return "slm";
    case Method::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::kNone, Method::kCeExact, Method::kCeCf, Method::kCeSe, Method::kCeSrcm,
                   Method::kSlm, Method::kExhaustive}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::size_t SimConfig::effective_n_e() const {
  if (n_e) return *n_e;
  return method == Method::kCeSe ? std::min<std::size_t>(10, n - std::min(n, n_f)) : 0;
}

CeConfig SimConfig::ce_config() const {
  CeConfig c;
  switch (method) {
    case Method::kCeCf: c.metric = CeObjective::kCf; break;
    case Method::kCeSrcm: c.metric = CeObjective::kSrcm; break;
    default: c.metric = CeObjective::kSe; break;
  }
  c.q = q;
  c.kappa = kappa;
  c.n_e = effective_n_e();
  c.n_f = n_f;
  c.rule = rule;
  c.seed = seed;
  return c;
}

void SimConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  SignalParams{n, oversample}.validate();
  if (slm_s < 1) throw ConfigError("slm S must be >= 1");
  if (!(kappa >= 1.0)) throw ConfigError("kappa must be >= 1");
  if (n_f > n) throw ConfigError("N_f must not exceed N");
  switch (method) {
    case Method::kCeCf:
    case Method::kCeSe:
    case Method::kCeSrcm: ce_config().validate(n); break;
    case Method::kCeExact:
      if (n - n_f > kMaxExactFreeSigns) {
        throw CapacityError("ce-exact supports at most " + std::to_string(kMaxExactFreeSigns) +
                            " free signs");
      }
      break;
    case Method::kExhaustive:
      if (n > 20) throw CapacityError("exhaustive search supports N <= 20");
      break;
    default: break;
  }
}

nlohmann::json SimConfig::to_json() const {
  nlohmann::json j{{"metric", to_string(metric)},
                   {"method", to_string(method)},
                   {"n", n},
                   {"constellation", to_string(constellation)},
                   {"oversample", oversample},
                   {"trials", trials},
                   {"seed", seed},
                   {"q", q},
                   {"kappa", kappa},
                   {"ne", effective_n_e()},
                   {"nf", n_f},
                   {"slm_s", slm_s},
                   {"rule", to_string(rule)},
                   {"out", out}};
  return j;
}

SimConfig SimConfig::from_json(const nlohmann::json& j, SimConfig base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SimConfig c = std::move(base);
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "metric") c.metric = parse_metric(value.get<std::string>());
      else if (key == "method") c.method = parse_method(value.get<std::string>());
      else if (key == "n") c.n = value.get<std::size_t>();
      else if (key == "constellation")
        c.constellation = parse_constellation_kind(value.get<std::string>());
      else if (key == "oversample") c.oversample = value.get<std::size_t>();
      else if (key == "trials") c.trials = value.get<std::size_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "q") c.q = value.get<std::size_t>();
      else if (key == "kappa") c.kappa = value.get<double>();
      else if (key == "ne") c.n_e = value.get<std::size_t>();
      else if (key == "nf") c.n_f = value.get<std::size_t>();
      else if (key == "slm_s") c.slm_s = value.get<std::size_t>();
      else if (key == "rule") c.rule = parse_srcm_rule(value.get<std::string>());
      else if (key == "out") c.out = value.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

SimConfig SimConfig::from_json(const nlohmann::json& j) { return from_json(j, SimConfig{}); }

nlohmann::json RunResult::summary_json() const {
  nlohmann::json j{{"config", config.to_json()},
                   {"trials", samples.size()},
                   {"ccdf_points", curve.size()},
                   {"mean_linear", mean_linear},
                   {"mean_report", mean_report},
                   {"max_linear", max_linear},
                   {"wall_seconds", wall_seconds},
                   {"workers", workers}};
  j["effective_1e-3"] = effective ? nlohmann::json(*effective) : nlohmann::json(nullptr);
  return j;
}

double run_trial(const SimConfig& config, std::size_t trial, Synthesizer& synth,
                 const Constellation& constellation) {
  Rng rng = substream(config.seed, trial);
  const SymbolVector b = draw_symbols(constellation, config.n, rng);
  const MetricFn metric = metric_function(config.metric, config.kappa);
  switch (config.method) {
    case Method::kNone: return uncoded(b, synth, metric).value;
    case Method::kCeExact: {
      const auto sel = select_signs_exact(b, synth, metric, config.n_f);
      return metric(synth.modulate(b, sel.signs));
    }
    case Method::kCeCf:
    case Method::kCeSe:
    case Method::kCeSrcm: {
      const auto sel = select_signs(b, synth, config.ce_config(), rng);
      return metric(synth.modulate(b, sel.signs));
    }
    case Method::kSlm: return slm(b, synth, config.slm_s, metric, rng).value;
    case Method::kExhaustive: return exhaustive_min(b, synth, metric).value;
  }
  throw ConfigError("unknown method");
}

RunResult run_experiment(const SimConfig& config, std::size_t workers) {
  config.validate();
  workers = std::clamp<std::size_t>(workers, 1, config.trials);
  const auto start = std::chrono::steady_clock::now();
  const Constellation constellation = build_constellation(config.constellation);
  const SignalParams params{config.n, config.oversample};

  RunResult result;
  result.config = config;
  result.workers = workers;
  result.samples.assign(config.trials, 0.0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      Synthesizer synth(params, constellation.sigma_b);
      for (std::size_t t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1)) {
        result.samples[t] = run_trial(config, t, synth, constellation);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(config.trials);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> report(config.trials);
  double sum = 0.0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    report[t] = metric_report_value(config.metric, result.samples[t]);
    sum += result.samples[t];
    result.max_linear = std::max(result.max_linear, result.samples[t]);
  }
  result.curve = ccdf(report);
  if (config.trials >= kMinEffectiveSamples) result.effective = effective_value(result.curve);
  result.mean_linear = sum / static_cast<double>(config.trials);
  result.mean_report = metric_report_value(config.metric, result.mean_linear);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace signsel
