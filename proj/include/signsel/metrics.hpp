#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string_view>

namespace signsel {

using cplx = std::complex<double>;

// A metric value on its linear scale. db() is 10 log10 for the power-like
// metrics (PAPR, SRCM, RCM); it is undefined (NaN) for linear <= 0.
struct MetricValue {
  double linear = 0.0;
  double db() const;
};

double to_db(double power_ratio);

// θ = max_n |s(n)|^2. The signal is assumed normalized to unit average power.
MetricValue papr(std::span<const cplx> signal);

// φ = sqrt(θ).
MetricValue crest_factor(std::span<const cplx> signal);

// ln Σ_n exp(κ |s(n)|^2), evaluated with the maximum factored out.
double log_sum_exp_metric(std::span<const cplx> signal, double kappa);

// η = (1/LN) Σ_n |s(n)|^6.
MetricValue srcm(std::span<const cplx> signal);

// Mean of per-symbol SRCM values.
MetricValue rcm(std::span<const double> srcm_values);

enum class Metric { kPapr, kCf, kSe, kSrcm };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view name);  // papr|cf|se|srcm, throws ConfigError

// Real-valued objective on a synthesized signal; smaller is better.
using MetricFn = std::function<double(std::span<const cplx>)>;

// kappa is used only for Metric::kSe.
MetricFn metric_function(Metric metric, double kappa = 10.0);

// Value reported in dB-scale outputs: 10 log10 for PAPR and SRCM, 20 log10 for
// the crest factor (so it reads the same as PAPR), and ln ζ unchanged for SE.
double metric_report_value(Metric metric, double linear);

}  // namespace signsel
