#pragma once

// Empirical complementary CDF and the effective value at a tail level.

#include <cstddef>
#include <span>
#include <vector>

namespace signsel {

// One point per distinct sample value v (ascending) with exceedance P(X > v).
struct CcdfCurve {
  std::vector<double> values;
  std::vector<double> exceedance;
  std::size_t sample_count = 0;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const CcdfCurve&, const CcdfCurve&) = default;
};

// Throws ArgumentError for an empty input or a NaN sample.
CcdfCurve ccdf(std::span<const double> samples);

inline constexpr std::size_t kMinEffectiveSamples = 10000;

// Value v with P(X > v) = level, interpolating v linearly against
// log10(exceedance) between neighbouring points; below the smallest sample the
// curve is anchored at (min, 1). A level at or above 1 gives the minimum, and
// a level hit exactly by a point returns that point's value. Throws
// CapacityError when the curve holds fewer than min_samples samples and
// DomainError unless level > 0.
double effective_value(const CcdfCurve& curve, double level = 1e-3,
                       std::size_t min_samples = kMinEffectiveSamples);

}  // namespace signsel
