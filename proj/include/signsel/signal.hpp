#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "signsel/constellation.hpp"
#include "signsel/dft.hpp"
#include "signsel/rng.hpp"

namespace signsel {

// N subcarriers sampled L times per subcarrier spacing, LN samples per symbol.
struct SignalParams {
  std::size_t subcarriers = 0;
  std::size_t oversample = 4;

  std::size_t samples() const { return subcarriers * oversample; }
  void validate() const;  // N >= 1, L >= 2
};

// Data symbols b of one OFDM symbol.
using SymbolVector = std::vector<cplx>;

// x in {-1, +1}^N.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t n, std::int8_t fill = 1);
  SignVector(std::initializer_list<int> values);
  static SignVector from_values(std::span<const int> values);

  std::size_t size() const { return signs_.size(); }
  std::int8_t operator[](std::size_t i) const { return signs_[i]; }
  void set(std::size_t i, int sign);
  void flip(std::size_t i) { signs_[i] = static_cast<std::int8_t>(-signs_[i]); }
  SignVector negated() const;

  std::span<const std::int8_t> values() const { return signs_; }
  std::span<std::int8_t> mutable_values() { return signs_; }

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<std::int8_t> signs_;
};

// b ⊙ x
SymbolVector apply_signs(std::span<const cplx> b, const SignVector& x);

// I.i.d. uniform draws from the constellation points. Throws ArgumentError for n == 0.
SymbolVector draw_symbols(const Constellation& constellation, std::size_t n, Rng& rng);

// Throws ArgumentError unless every symbol is a constellation point.
void validate_symbols(std::span<const cplx> b, const Constellation& constellation);

// Discrete-time OFDM synthesis s(n) = 1/(σ_b √N) Σ_k b_k x_k e^{i 2π k n / (LN)}.
// Owns an FFT plan and a table of the LN-th roots of unity; not thread-safe,
// give every worker its own instance.
class Synthesizer {
 public:
  explicit Synthesizer(SignalParams params, double sigma_b = 1.0);

  const SignalParams& params() const { return params_; }
  std::size_t subcarriers() const { return params_.subcarriers; }
  std::size_t samples() const { return roots_.size(); }
  double sigma_b() const { return sigma_b_; }
  double scale() const { return scale_; }

  // e^{i 2π m / (LN)}
  cplx root(std::size_t m) const { return roots_[m % roots_.size()]; }
  std::span<const cplx> roots() const { return roots_; }

  // acc[n] += coeff · e^{i 2π k n / (LN)} for all n.
  void accumulate_tone(std::span<cplx> acc, cplx coeff, std::size_t k) const;

  // Unscaled out[n] = Σ_k coeffs[k] e^{i 2π k n / (LN)} through the zero-padded IDFT.
  void synthesize(std::span<const cplx> coeffs, std::span<cplx> out);

  std::vector<cplx> modulate(std::span<const cplx> b, const SignVector& x);

 private:
  SignalParams params_;
  double sigma_b_;
  double scale_;
  std::vector<cplx> roots_;
  InverseDft dft_;
};

std::vector<cplx> modulate(std::span<const cplx> b, const SignVector& signs,
                           const SignalParams& params, double sigma_b = 1.0);

// Unnormalized frequency-to-time partial sum over the decided prefix,
// partial[n] = Σ_{k<j} x_k b_k e^{i 2π k n / (LN)}.
class PrefixState {
 public:
  explicit PrefixState(std::size_t samples) : partial_(samples) {}

  static PrefixState from_scratch(const Synthesizer& synth, std::span<const cplx> b,
                                  const SignVector& x, std::size_t count);

  // Adopts an externally maintained sum over the first `count` indices.
  static PrefixState from_partial(std::span<const cplx> partial, std::size_t count);

  std::span<const cplx> partial() const { return partial_; }
  std::size_t decided_count() const { return decided_; }

  // Adds sign·b_j·e^{i2πjn/(LN)}; j must equal decided_count().
  void extend(const Synthesizer& synth, cplx b_j, std::size_t j, int sign);
  // Removes the most recent decision, which must have been (b_last, sign).
  void retract(const Synthesizer& synth, cplx b_last, int sign);

 private:
  std::vector<cplx> partial_;
  std::size_t decided_ = 0;
};

PrefixState prefix_extend(PrefixState state, const Synthesizer& synth, cplx b_j,
                          std::size_t j, int sign);

}  // namespace signsel
