// signsel: sign-selection peak reduction for OFDM symbols.
//
//   signsel simulate --method ce-se --n 64 --trials 10000 --out run.csv
//   signsel bounds --n 64
//   signsel reduce --in symbols.json --method ce-srcm

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "signsel/baselines.hpp"
#include "signsel/bounds.hpp"
#include "signsel/ce_engine.hpp"
#include "signsel/errors.hpp"
#include "signsel/experiment.hpp"
#include "signsel/results_io.hpp"

using nlohmann::json;
using namespace signsel;

namespace {

struct SimFlags {
  std::string config_path;
  std::string metric, method, constellation, rule, out;
  std::size_t n = 0, oversample = 0, trials = 0, q = 0, ne = 0, nf = 0, slm_s = 0;
  std::uint64_t seed = 0;
  double kappa = 0.0;
  std::size_t workers = 1;
};

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

void add_sim_options(CLI::App* app, SimFlags& f, std::map<std::string, CLI::Option*>& opts) {
  app->add_option("--config", f.config_path, "JSON config file; flags override its values");
  opts["metric"] = app->add_option("--metric", f.metric, "papr|cf|se|srcm (default papr)");
  opts["method"] = app->add_option(
      "--method", f.method, "none|ce-exact|ce-cf|ce-se|ce-srcm|slm|exhaustive (default none)");
  opts["n"] = app->add_option("--n", f.n, "subcarriers (default 64)");
  opts["constellation"] =
      app->add_option("--constellation", f.constellation, "qpsk|qam16|qam64 (default qam16)");
  opts["oversample"] = app->add_option("--oversample", f.oversample, "L (default 4)");
  opts["trials"] = app->add_option("--trials", f.trials, "trials (default 10000)");
  opts["seed"] = app->add_option("--seed", f.seed, "seed (default 1)");
  opts["q"] = app->add_option("--q", f.q, "estimator shots (default 100)");
  opts["kappa"] = app->add_option("--kappa", f.kappa, "sum-exp kappa (default 10)");
  opts["ne"] = app->add_option("--ne", f.ne, "trailing estimator indices (default 10 for ce-se)");
  opts["nf"] = app->add_option("--nf", f.nf, "leading signs fixed to +1 (default 0)");
  opts["slm_s"] = app->add_option("--slm-s", f.slm_s, "SLM candidates (default 1)");
  opts["rule"] = app->add_option("--rule", f.rule, "SRCM rule normalized|raw");
  opts["out"] = app->add_option("--out", f.out, "CSV output path");
}

// Flags given on the command line, as config JSON keys.
json flag_overrides(const SimFlags& f, const std::map<std::string, CLI::Option*>& opts) {
  json j = json::object();
  auto given = [&](const char* key) { return opts.at(key)->count() > 0; };
  if (given("metric")) j["metric"] = f.metric;
  if (given("method")) j["method"] = f.method;
  if (given("n")) j["n"] = f.n;
  if (given("constellation")) j["constellation"] = f.constellation;
  if (given("oversample")) j["oversample"] = f.oversample;
  if (given("trials")) j["trials"] = f.trials;
  if (given("seed")) j["seed"] = f.seed;
  if (given("q")) j["q"] = f.q;
  if (given("kappa")) j["kappa"] = f.kappa;
  if (given("ne")) j["ne"] = f.ne;
  if (given("nf")) j["nf"] = f.nf;
  if (given("slm_s")) j["slm_s"] = f.slm_s;
  if (given("rule")) j["rule"] = f.rule;
  if (given("out")) j["out"] = f.out;
  return j;
}

SimConfig resolve_config(const SimFlags& f, const std::map<std::string, CLI::Option*>& opts) {
  SimConfig c;
  if (!f.config_path.empty()) c = SimConfig::from_json(read_json_file(f.config_path), c);
  return SimConfig::from_json(flag_overrides(f, opts), c);
}

int cmd_simulate(const SimFlags& f, const std::map<std::string, CLI::Option*>& opts) {
  const SimConfig config = resolve_config(f, opts);
  const RunResult r = run_experiment(config, f.workers);
  json summary = r.summary_json();
  if (!config.out.empty()) {
    emit_results(r, config.out);
  } else {
    std::fputs(ccdf_csv(r.curve).c_str(), stdout);
  }
  std::cerr << summary.dump(2) << "\n";
  return 0;
}

struct BoundFlags {
  std::size_t n = 64;
  std::string constellation = "qam16";
  double eps = 0.1;
  std::size_t q = 100;
  std::size_t j = 0;
  double p = 1e-3;
};

int cmd_bounds(const BoundFlags& f) {
  const Constellation c = build_constellation(parse_constellation_kind(f.constellation));
  json out = json::array();
  out.push_back(papr_upper_bound(f.n).to_json());
  out.push_back(srcm_upper_bound().to_json());
  if (f.n >= 2 && f.j <= f.n - 2) {
    out.push_back(mcdiarmid_deviation_bound(f.eps, f.q, f.n, f.j, c).to_json());
  }
  const double rho = static_cast<double>(std::min(f.j + 1, f.n)) / static_cast<double>(f.n);
  out.push_back(q_lower_bound(f.p, f.eps, c, rho).to_json());
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct ReduceFlags {
  std::string in, out;
  std::string method = "ce-se";
  std::string metric = "papr";
  std::string constellation = "qam16";
  std::string rule = "normalized";
  std::size_t oversample = 4;
  std::size_t q = 100, nf = 0, slm_s = 16;
  std::size_t ne = 0;
  bool ne_given = false;
  double kappa = 10.0;
  std::uint64_t seed = 1;
};

SymbolVector read_symbols(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.is_array() || j.empty()) throw ConfigError("'" + path + "': expected a non-empty array");
  SymbolVector b;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ConfigError("'" + path + "': each symbol must be [re, im]");
    }
    b.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return b;
}

json metric_json(Metric metric, double linear) {
  return {{"linear", linear}, {"report", metric_report_value(metric, linear)}};
}

json trace_json(const DecisionTrace& trace) {
  json out = json::array();
  for (std::size_t j = 0; j < trace.decisions.size(); ++j) {
    const auto& d = trace.decisions[j];
    out.push_back({{"j", j},
                   {"sign", d.sign},
                   {"rule", to_string(d.rule)},
                   {"statistic", d.statistic},
                   {"g_plus", d.g_plus},
                   {"g_minus", d.g_minus}});
  }
  return out;
}

int cmd_reduce(const ReduceFlags& f) {
  const Constellation c = build_constellation(parse_constellation_kind(f.constellation));
  const SymbolVector b = read_symbols(f.in);
  validate_symbols(b, c);
  const Metric metric = parse_metric(f.metric);
  const Method method = parse_method(f.method);
  SimConfig sim;
  sim.method = method;
  sim.n = b.size();
  sim.q = f.q;
  sim.kappa = f.kappa;
  sim.n_f = f.nf;
  if (f.ne_given) sim.n_e = f.ne;
  sim.rule = parse_srcm_rule(f.rule);
  sim.seed = f.seed;

  Synthesizer synth(SignalParams{b.size(), f.oversample}, c.sigma_b);
  const MetricFn fn = metric_function(metric, f.kappa);
  Rng rng = substream(f.seed, 0);
  SignVector signs(b.size());
  json trace = json::array();
  switch (method) {
    case Method::kNone: break;
    case Method::kCeExact: {
      auto sel = select_signs_exact(b, synth, fn, f.nf);
      signs = sel.signs;
      trace = trace_json(sel.trace);
      break;
    }
    case Method::kCeCf:
    case Method::kCeSe:
    case Method::kCeSrcm: {
      auto sel = select_signs(b, synth, sim.ce_config(), rng);
      signs = sel.signs;
      trace = trace_json(sel.trace);
      break;
    }
    case Method::kSlm: signs = slm(b, synth, f.slm_s, fn, rng).signs; break;
    case Method::kExhaustive: signs = exhaustive_min(b, synth, fn).signs; break;
  }
  json sign_list = json::array();
  for (auto s : signs.values()) sign_list.push_back(static_cast<int>(s));
  json out{{"method", to_string(method)},
           {"metric", to_string(metric)},
           {"n", b.size()},
           {"signs", sign_list},
           {"before", metric_json(metric, fn(synth.modulate(b, SignVector(b.size()))))},
           {"after", metric_json(metric, fn(synth.modulate(b, signs)))},
           {"trace", trace}};
  if (f.out.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream o(f.out);
    if (!o) throw IoError("cannot open '" + f.out + "' for writing");
    o << out.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign-selection peak reduction for OFDM symbols"};
  app.require_subcommand(1);

  SimFlags sim;
  std::map<std::string, CLI::Option*> sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo CCDF of a metric under a method");
  add_sim_options(simulate, sim, sim_opts);
  sim.workers = std::max(1U, std::thread::hardware_concurrency());
  simulate->add_option("--workers", sim.workers, "worker threads (default: hardware threads)");

  BoundFlags bf;
  auto* bounds = app.add_subcommand("bounds", "Print analytic bounds as JSON");
  bounds->add_option("--n", bf.n, "subcarriers")->required();
  bounds->add_option("--constellation", bf.constellation, "qpsk|qam16|qam64");
  bounds->add_option("--eps", bf.eps, "deviation epsilon for the estimator bounds");
  bounds->add_option("--q", bf.q, "estimator shots");
  bounds->add_option("--j", bf.j, "decision index");
  bounds->add_option("--p", bf.p, "target deviation probability for the Q bound");

  ReduceFlags rf;
  auto* reduce = app.add_subcommand("reduce", "Select signs for one symbol vector");
  reduce->add_option("--in", rf.in, "JSON array of [re, im] symbols")->required();
  reduce->add_option("--method", rf.method, "none|ce-exact|ce-cf|ce-se|ce-srcm|slm|exhaustive");
  reduce->add_option("--metric", rf.metric, "reported metric papr|cf|se|srcm");
  reduce->add_option("--constellation", rf.constellation, "qpsk|qam16|qam64");
  reduce->add_option("--oversample", rf.oversample, "L");
  reduce->add_option("--q", rf.q, "estimator shots");
  reduce->add_option("--kappa", rf.kappa, "sum-exp kappa");
  auto* ne_opt = reduce->add_option("--ne", rf.ne, "trailing estimator indices");
  reduce->add_option("--nf", rf.nf, "leading signs fixed to +1");
  reduce->add_option("--rule", rf.rule, "SRCM rule normalized|raw");
  reduce->add_option("--seed", rf.seed, "seed");
  reduce->add_option("--slm-s", rf.slm_s, "SLM candidates");
  reduce->add_option("--out", rf.out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  rf.ne_given = ne_opt->count() > 0;

  try {
    if (*simulate) return cmd_simulate(sim, sim_opts);
    if (*bounds) return cmd_bounds(bf);
    if (*reduce) return cmd_reduce(rf);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
