#include "signsel/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "signsel/errors.hpp"

namespace signsel {

void SignalParams::validate() const {
  if (subcarriers < 1) throw ArgumentError("subcarrier count must be >= 1");
  if (oversample < 2) throw ArgumentError("oversampling factor must be >= 2");
}

namespace {
std::int8_t checked_sign(int v) {
  if (v != 1 && v != -1) {
    throw ArgumentError("sign value must be +1 or -1, got " + std::to_string(v));
  }
  return static_cast<std::int8_t>(v);
}
}  // namespace

SignVector::SignVector(std::size_t n, std::int8_t fill) : signs_(n, checked_sign(fill)) {}

SignVector::SignVector(std::initializer_list<int> values) {
  signs_.reserve(values.size());
  for (int v : values) signs_.push_back(checked_sign(v));
}

SignVector SignVector::from_values(std::span<const int> values) {
  SignVector x;
  x.signs_.reserve(values.size());
  for (int v : values) x.signs_.push_back(checked_sign(v));
  return x;
}

void SignVector::set(std::size_t i, int sign) { signs_.at(i) = checked_sign(sign); }

SignVector SignVector::negated() const {
  SignVector out = *this;
  for (auto& s : out.signs_) s = static_cast<std::int8_t>(-s);
  return out;
}

SymbolVector apply_signs(std::span<const cplx> b, const SignVector& x) {
  if (b.size() != x.size()) throw ArgumentError("symbol and sign vector lengths differ");
  SymbolVector out(b.begin(), b.end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= static_cast<double>(x[k]);
  return out;
}

SymbolVector draw_symbols(const Constellation& constellation, std::size_t n, Rng& rng) {
  if (n == 0) throw ArgumentError("symbol count must be >= 1");
  SymbolVector b(n);
  for (auto& s : b) s = constellation.points[draw_index_pow2(rng, constellation.size())];
  return b;
}

void validate_symbols(std::span<const cplx> b, const Constellation& constellation) {
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!constellation.index_of(b[k])) {
      throw ArgumentError("symbol " + std::to_string(k) + " is not a constellation point");
    }
  }
}

Synthesizer::Synthesizer(SignalParams params, double sigma_b)
    : params_((params.validate(), params)), sigma_b_(sigma_b), scale_(0.0), dft_(params.samples()) {
  if (!(sigma_b > 0.0)) throw ArgumentError("sigma_b must be positive");
  scale_ = 1.0 / (sigma_b_ * std::sqrt(static_cast<double>(params_.subcarriers)));
  const std::size_t m = params_.samples();
  roots_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
    roots_[i] = {std::cos(phase), std::sin(phase)};
  }
}

void Synthesizer::accumulate_tone(std::span<cplx> acc, cplx coeff, std::size_t k) const {
  const std::size_t m = roots_.size();
  const std::size_t step = k % m;
  std::size_t idx = 0;
  for (auto& a : acc) {
    a += coeff * roots_[idx];
    idx += step;
    if (idx >= m) idx -= m;
  }
}

void Synthesizer::synthesize(std::span<const cplx> coeffs, std::span<cplx> out) {
  if (coeffs.size() > params_.subcarriers || out.size() != samples()) {
    throw ArgumentError("synthesize: size mismatch");
  }
  auto buf = dft_.buffer();
  std::copy(coeffs.begin(), coeffs.end(), buf.begin());
  std::fill(buf.begin() + static_cast<std::ptrdiff_t>(coeffs.size()), buf.end(), cplx{});
  dft_.execute();
  std::copy(buf.begin(), buf.end(), out.begin());
}

std::vector<cplx> Synthesizer::modulate(std::span<const cplx> b, const SignVector& x) {
  if (b.size() != params_.subcarriers || x.size() != params_.subcarriers) {
    throw ArgumentError("modulate: expected " + std::to_string(params_.subcarriers) +
                        " symbols and signs, got " + std::to_string(b.size()) + " and " +
                        std::to_string(x.size()));
  }
  auto buf = dft_.buffer();
  for (std::size_t k = 0; k < b.size(); ++k) buf[k] = b[k] * (scale_ * x[k]);
  std::fill(buf.begin() + static_cast<std::ptrdiff_t>(b.size()), buf.end(), cplx{});
  dft_.execute();
  return {buf.begin(), buf.end()};
}

std::vector<cplx> modulate(std::span<const cplx> b, const SignVector& signs,
                           const SignalParams& params, double sigma_b) {
  Synthesizer synth(params, sigma_b);
  return synth.modulate(b, signs);
}

PrefixState PrefixState::from_scratch(const Synthesizer& synth, std::span<const cplx> b,
                                      const SignVector& x, std::size_t count) {
  if (count > b.size() || count > x.size()) throw ArgumentError("prefix longer than input");
  PrefixState state(synth.samples());
  for (std::size_t k = 0; k < count; ++k) {
    synth.accumulate_tone(state.partial_, b[k] * static_cast<double>(x[k]), k);
  }
  state.decided_ = count;
  return state;
}

PrefixState PrefixState::from_partial(std::span<const cplx> partial, std::size_t count) {
  PrefixState state(partial.size());
  std::copy(partial.begin(), partial.end(), state.partial_.begin());
  state.decided_ = count;
  return state;
}

void PrefixState::extend(const Synthesizer& synth, cplx b_j, std::size_t j, int sign) {
  if (j != decided_) {
    throw StateError("prefix holds " + std::to_string(decided_) + " decisions, cannot extend at " +
                     std::to_string(j));
  }
  if (partial_.size() != synth.samples()) throw StateError("prefix length does not match synthesizer");
  synth.accumulate_tone(partial_, b_j * static_cast<double>(checked_sign(sign)), j);
  ++decided_;
}

void PrefixState::retract(const Synthesizer& synth, cplx b_last, int sign) {
  if (decided_ == 0) throw StateError("nothing to retract");
  --decided_;
  synth.accumulate_tone(partial_, -b_last * static_cast<double>(checked_sign(sign)), decided_);
}

PrefixState prefix_extend(PrefixState state, const Synthesizer& synth, cplx b_j, std::size_t j,
                          int sign) {
  state.extend(synth, b_j, j, sign);
  return state;
}

}  // namespace signsel
