#pragma once

// Analytic reference values: asymptotic PAPR and SRCM bounds, the McDiarmid
// deviation bound for the Q-shot estimator, the matching lower bound on Q,
// and the limiting covariances of the sign-randomized signal.

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "signsel/constellation.hpp"

namespace signsel {

struct BoundReport {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  double linear = 0.0;
  std::optional<double> db;

  nlohmann::json to_json() const;
};

// Euler–Mascheroni constant and K = ½ ln(π/3) + γ.
inline constexpr double kEulerGamma = 0.57721566490153286061;
double papr_bound_constant();

// θ ≤ ln N + ½ ln ln N + K. Throws DomainError for N < 3.
BoundReport papr_upper_bound(std::size_t n);

// η ≤ 6 in the large-N limit.
BoundReport srcm_upper_bound();

// d = 2 max|y| / σ_b for the constellation.
double bounded_difference(const Constellation& constellation);

// 2 exp(-2ε² (Q/d²) N/(N-j-1)); `linear` holds the raw value in [0, 2] and
// inputs.clamped the value clipped to 1. Throws DomainError for ε < 0,
// Q = 0, or j > N-2.
BoundReport mcdiarmid_deviation_bound(double eps, std::size_t q, std::size_t n, std::size_t j,
                                      const Constellation& constellation);

// Q₀ = -(d² ln(p/2) / (2ε²)) (1-ρ). Throws DomainError unless 0 < p < 2,
// ε > 0 and 0 <= ρ <= 1.
BoundReport q_lower_bound(double p, double eps, const Constellation& constellation, double rho);

struct CovariancePair {
  double r_rr = 0.0;  // Cov of real parts (equals that of imaginary parts)
  double r_ri = 0.0;  // Cov of real part at t with imaginary part at t + τ
};

// sin(πx)/(πx) with sinc(0) = 1.
double sinc(double x);

// Limit covariances of the normalized signal with the first ρN signs removed:
//   R_rr(τ) = (σ_b²/2)(sinc(2F_sτ) - ρ sinc(2F_sτρ))
//   R_ri(τ) = (σ_b²/2)(cos(2πF_sρτ) - cos(2πF_sτ)) / (2πF_sτ),  R_ri(0) = 0.
// Throws DomainError unless 0 <= ρ <= 1 and F_s > 0.
CovariancePair limit_covariances(double tau, double rho, double f_s, double sigma_b = 1.0);

}  // namespace signsel
