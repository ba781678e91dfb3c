#include "signsel/ccdf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "signsel/errors.hpp"

namespace signsel {

CcdfCurve ccdf(std::span<const double> samples) {
  if (samples.empty()) throw ArgumentError("ccdf of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  if (std::any_of(sorted.begin(), sorted.end(), [](double v) { return std::isnan(v); })) {
    throw ArgumentError("ccdf sample contains NaN");
  }
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  CcdfCurve curve;
  curve.sample_count = sorted.size();
  for (std::size_t k = 0; k < sorted.size();) {
    std::size_t end = k + 1;
    while (end < sorted.size() && sorted[end] == sorted[k]) ++end;
    curve.values.push_back(sorted[k]);
    curve.exceedance.push_back(static_cast<double>(sorted.size() - end) / n);
    k = end;
  }
  return curve;
}

double effective_value(const CcdfCurve& curve, double level, std::size_t min_samples) {
  if (curve.sample_count < min_samples || curve.values.empty()) {
    throw CapacityError("effective value needs at least " + std::to_string(min_samples) +
                        " samples, have " + std::to_string(curve.sample_count));
  }
  if (!(level > 0.0)) throw DomainError("tail level must be > 0");
  const auto& v = curve.values;
  const auto& p = curve.exceedance;
  if (level >= p.front()) return v.front();

  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (p[i] == level) return v[i];
    if (p[i] > level && level > p[i + 1]) {
      if (p[i + 1] == 0.0) return v[i + 1];
      const double t = (std::log10(level) - std::log10(p[i])) /
                       (std::log10(p[i + 1]) - std::log10(p[i]));
      return v[i] + t * (v[i + 1] - v[i]);
    }
  }
  return v.back();
}

}  // namespace signsel
