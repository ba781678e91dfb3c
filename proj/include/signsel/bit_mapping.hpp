#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "signsel/constellation.hpp"
#include "signsel/signal.hpp"

namespace signsel {

using Bits = std::vector<std::uint8_t>;

// Bits needed for one OFDM symbol: the first n_fixed symbols carry
// log2|M| bits each, the remaining ones log2|M| - 1 (their sign is free).
std::size_t payload_bits(const Constellation& constellation, std::size_t n, std::size_t n_fixed);

// First n_fixed symbols map full log2|M|-bit labels into M, the rest map
// (log2|M|-1)-bit labels into the half-set. Blocks are read MSB first.
SymbolVector encode_bits(std::span<const std::uint8_t> bits, const Constellation& constellation,
                         std::size_t n, std::size_t n_fixed);

// Inverse of encode_bits. Symbols at index >= n_fixed may carry either sign.
// Throws DecodeError for a symbol outside M ∪ (-M).
Bits decode_symbols(std::span<const cplx> received, const Constellation& constellation,
                    std::size_t n, std::size_t n_fixed);

// Fraction of the bits of an OFDM symbol spent on sign selection,
// N_s / (N log2 M).
double rate_loss(std::size_t n_selected, std::size_t n, std::size_t constellation_size);

}  // namespace signsel
