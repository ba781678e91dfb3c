#include "signsel/bit_mapping.hpp"

#include <bit>
#include <string>

#include "signsel/errors.hpp"

namespace signsel {

std::size_t payload_bits(const Constellation& constellation, std::size_t n, std::size_t n_fixed) {
  if (n_fixed > n) throw ArgumentError("n_fixed exceeds the symbol count");
  const auto m = static_cast<std::size_t>(constellation.bits_per_symbol());
  return n_fixed * m + (n - n_fixed) * (m - 1);
}

namespace {

std::size_t read_block(std::span<const std::uint8_t> bits, std::size_t& pos, int width) {
  std::size_t v = 0;
  for (int i = 0; i < width; ++i) {
    const auto bit = bits[pos++];
    if (bit > 1) throw ArgumentError("bit values must be 0 or 1");
    v = (v << 1) | bit;
  }
  return v;
}

void write_block(Bits& out, std::size_t value, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
}

}  // namespace

SymbolVector encode_bits(std::span<const std::uint8_t> bits, const Constellation& constellation,
                         std::size_t n, std::size_t n_fixed) {
  const std::size_t expected = payload_bits(constellation, n, n_fixed);
  if (bits.size() != expected) {
    throw ArgumentError("expected " + std::to_string(expected) + " bits, got " +
                        std::to_string(bits.size()));
  }
  const int m = constellation.bits_per_symbol();
  SymbolVector out;
  out.reserve(n);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < n_fixed) {
      out.push_back(constellation.points[read_block(bits, pos, m)]);
    } else {
      out.push_back(constellation.half_set[read_block(bits, pos, m - 1)]);
    }
  }
  return out;
}

Bits decode_symbols(std::span<const cplx> received, const Constellation& constellation,
                    std::size_t n, std::size_t n_fixed) {
  if (received.size() != n) throw ArgumentError("received length differs from n");
  if (n_fixed > n) throw ArgumentError("n_fixed exceeds the symbol count");
  const int m = constellation.bits_per_symbol();
  Bits out;
  out.reserve(payload_bits(constellation, n, n_fixed));
  for (std::size_t k = 0; k < n; ++k) {
    if (k < n_fixed) {
      const auto label = constellation.index_of(received[k]);
      if (!label) throw DecodeError("symbol " + std::to_string(k) + " is not in the constellation");
      write_block(out, *label, m);
    } else {
      const auto label = constellation.half_index_of(received[k]);
      if (!label) throw DecodeError("symbol " + std::to_string(k) + " is not in ±constellation");
      write_block(out, *label, m - 1);
    }
  }
  return out;
}

double rate_loss(std::size_t n_selected, std::size_t n, std::size_t constellation_size) {
  if (n == 0 || n_selected > n) throw ArgumentError("rate_loss: need 0 <= N_s <= N, N >= 1");
  if (constellation_size < 4 || !std::has_single_bit(constellation_size)) {
    throw ArgumentError("rate_loss: constellation size must be a power of two >= 4");
  }
  const auto bits = static_cast<double>(std::countr_zero(constellation_size));
  return static_cast<double>(n_selected) / (static_cast<double>(n) * bits);
}

}  // namespace signsel
