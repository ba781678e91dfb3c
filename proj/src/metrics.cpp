#include "signsel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "signsel/errors.hpp"

namespace signsel {

double to_db(double power_ratio) {
  if (!(power_ratio > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return 10.0 * std::log10(power_ratio);
}

double MetricValue::db() const { return to_db(linear); }

namespace {
void require_nonempty(std::span<const cplx> signal, const char* what) {
  if (signal.empty()) throw ArgumentError(std::string(what) + ": empty signal");
}
}  // namespace

MetricValue papr(std::span<const cplx> signal) {
  require_nonempty(signal, "papr");
  double peak = 0.0;
  for (const auto& s : signal) peak = std::max(peak, std::norm(s));
  return {peak};
}

MetricValue crest_factor(std::span<const cplx> signal) {
  require_nonempty(signal, "crest_factor");
  return {std::sqrt(papr(signal).linear)};
}

double log_sum_exp_metric(std::span<const cplx> signal, double kappa) {
  if (!(kappa >= 1.0)) throw ConfigError("SE metric requires kappa >= 1");
  require_nonempty(signal, "log_sum_exp_metric");
  double peak = 0.0;
  for (const auto& s : signal) peak = std::max(peak, std::norm(s));
  double sum = 0.0;
  for (const auto& s : signal) sum += std::exp(kappa * (std::norm(s) - peak));
  return kappa * peak + std::log(sum);
}

MetricValue srcm(std::span<const cplx> signal) {
  require_nonempty(signal, "srcm");
  double acc = 0.0;
  for (const auto& s : signal) {
    const double p = std::norm(s);
    acc += p * p * p;
  }
  return {acc / static_cast<double>(signal.size())};
}

MetricValue rcm(std::span<const double> srcm_values) {
  if (srcm_values.empty()) throw ArgumentError("rcm: empty list");
  const double sum = std::accumulate(srcm_values.begin(), srcm_values.end(), 0.0);
  return {sum / static_cast<double>(srcm_values.size())};
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kPapr: return "papr";
    case Metric::kCf: return "cf";
    case Metric::kSe: return "se";
    case Metric::kSrcm: return "srcm";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "papr") return Metric::kPapr;
  if (name == "cf") return Metric::kCf;
  if (name == "se") return Metric::kSe;
  if (name == "srcm") return Metric::kSrcm;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

MetricFn metric_function(Metric metric, double kappa) {
  switch (metric) {
    case Metric::kPapr:
      return [](std::span<const cplx> s) { return papr(s).linear; };
    case Metric::kCf:
      return [](std::span<const cplx> s) { return crest_factor(s).linear; };
    case Metric::kSe:
      if (!(kappa >= 1.0)) throw ConfigError("SE metric requires kappa >= 1");
      return [kappa](std::span<const cplx> s) { return log_sum_exp_metric(s, kappa); };
    case Metric::kSrcm:
      return [](std::span<const cplx> s) { return srcm(s).linear; };
  }
  throw ConfigError("unknown metric");
}

double metric_report_value(Metric metric, double linear) {
  switch (metric) {
    case Metric::kPapr:
    case Metric::kSrcm: return to_db(linear);
    case Metric::kCf: return 2.0 * to_db(linear);
    case Metric::kSe: return linear;
  }
  return linear;
}

}  // namespace signsel
