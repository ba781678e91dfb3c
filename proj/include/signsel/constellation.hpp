#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace signsel {

using cplx = std::complex<double>;

enum class ConstellationKind { kQpsk, kQam16, kQam64 };

std::string_view to_string(ConstellationKind kind);
// Accepts "qpsk", "qam16", "qam64" (also "16qam"/"64qam"). Throws ConfigError.
ConstellationKind parse_constellation_kind(std::string_view name);

// Square QAM alphabet normalized to unit average power, together with the
// half-set used by the sign-selection bit mapping. Per-axis levels are Gray
// coded; the I bits precede the Q bits in a symbol label.
struct Constellation {
  ConstellationKind kind{};
  std::vector<cplx> points;    // label i -> points[i]
  std::vector<cplx> half_set;  // one member of every {y, -y} pair
  double sigma_b = 1.0;        // RMS magnitude of `points`
  double grid_power = 0.0;     // mean |y|^2 on the odd-integer grid, 2(M-1)/3

  std::size_t size() const { return points.size(); }
  int bits_per_symbol() const;
  double max_magnitude() const;

  // Label of a point equal to y within `tol`.
  std::optional<std::size_t> index_of(cplx y, double tol = 1e-9) const;
  // Half-set position of the pair containing y (y itself or -y).
  std::optional<std::size_t> half_index_of(cplx y, double tol = 1e-9) const;
};

Constellation build_constellation(ConstellationKind kind);

}  // namespace signsel
