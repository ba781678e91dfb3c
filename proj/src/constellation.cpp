#include "signsel/constellation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "signsel/errors.hpp"

namespace signsel {

std::string_view to_string(ConstellationKind kind) {
  switch (kind) {
    case ConstellationKind::kQpsk: return "qpsk";
    case ConstellationKind::kQam16: return "qam16";
    case ConstellationKind::kQam64: return "qam64";
  }
  return "unknown";
}

ConstellationKind parse_constellation_kind(std::string_view name) {
  if (name == "qpsk" || name == "4qam" || name == "qam4") return ConstellationKind::kQpsk;
  if (name == "qam16" || name == "16qam") return ConstellationKind::kQam16;
  if (name == "qam64" || name == "64qam") return ConstellationKind::kQam64;
  throw ConfigError("unsupported constellation '" + std::string(name) + "'");
}

int Constellation::bits_per_symbol() const {
  return std::countr_zero(static_cast<unsigned>(points.size()));
}

double Constellation::max_magnitude() const {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, std::abs(p));
  return m;
}

std::optional<std::size_t> Constellation::index_of(cplx y, double tol) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs(points[i] - y) <= tol) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Constellation::half_index_of(cplx y, double tol) const {
  for (std::size_t i = 0; i < half_set.size(); ++i) {
    if (std::abs(half_set[i] - y) <= tol || std::abs(half_set[i] + y) <= tol) return i;
  }
  return std::nullopt;
}

namespace {

unsigned gray_to_binary(unsigned g) {
  for (unsigned shift = 1; shift < 32; shift <<= 1) g ^= g >> shift;
  return g;
}

// Right half-plane, with points on the imaginary axis kept when Im > 0.
bool in_half_set(cplx y) {
  return y.real() > 0.0 || (y.real() == 0.0 && y.imag() > 0.0);
}

}  // namespace

Constellation build_constellation(ConstellationKind kind) {
  int axis_bits = 0;
  switch (kind) {
    case ConstellationKind::kQpsk: axis_bits = 1; break;
    case ConstellationKind::kQam16: axis_bits = 2; break;
    case ConstellationKind::kQam64: axis_bits = 3; break;
    default: throw ConfigError("unsupported constellation kind");
  }
  const unsigned levels = 1U << axis_bits;
  const unsigned size = levels * levels;

  Constellation c;
  c.kind = kind;
  c.grid_power = 2.0 * (static_cast<double>(size) - 1.0) / 3.0;
  const double scale = 1.0 / std::sqrt(c.grid_power);
  c.sigma_b = 1.0;

  auto level = [&](unsigned gray) {
    return 2.0 * static_cast<double>(gray_to_binary(gray)) - static_cast<double>(levels - 1);
  };
  c.points.reserve(size);
  for (unsigned label = 0; label < size; ++label) {
    const unsigned ibits = label >> axis_bits;
    const unsigned qbits = label & (levels - 1);
    c.points.emplace_back(scale * level(ibits), scale * level(qbits));
  }
  for (const auto& p : c.points) {
    if (in_half_set(p)) c.half_set.push_back(p);
  }
  return c;
}

}  // namespace signsel
