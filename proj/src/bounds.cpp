#include "signsel/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "signsel/errors.hpp"
#include "signsel/metrics.hpp"

namespace signsel {

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j{{"name", name}, {"inputs", inputs}, {"linear", linear}};
  j["db"] = db ? nlohmann::json(*db) : nlohmann::json(nullptr);
  return j;
}

double papr_bound_constant() { return 0.5 * std::log(std::numbers::pi / 3.0) + kEulerGamma; }

BoundReport papr_upper_bound(std::size_t n) {
  if (n < 3) throw DomainError("PAPR bound requires N >= 3");
  const double ln_n = std::log(static_cast<double>(n));
  const double value = ln_n + 0.5 * std::log(ln_n) + papr_bound_constant();
  return {"papr_upper_bound", {{"n", n}}, value, to_db(value)};
}

BoundReport srcm_upper_bound() { return {"srcm_upper_bound", nlohmann::json::object(), 6.0, to_db(6.0)}; }

double bounded_difference(const Constellation& constellation) {
  return 2.0 * constellation.max_magnitude() / constellation.sigma_b;
}

BoundReport mcdiarmid_deviation_bound(double eps, std::size_t q, std::size_t n, std::size_t j,
                                      const Constellation& constellation) {
  if (!(eps >= 0.0)) throw DomainError("epsilon must be >= 0");
  if (q == 0) throw DomainError("Q must be >= 1");
  if (n < 2 || j > n - 2) throw DomainError("j must satisfy j <= N - 2");
  const double d = bounded_difference(constellation);
  const double ratio = static_cast<double>(n) / static_cast<double>(n - j - 1);
  const double value =
      2.0 * std::exp(-2.0 * eps * eps * (static_cast<double>(q) / (d * d)) * ratio);
  BoundReport r{"mcdiarmid_deviation_bound",
                {{"eps", eps},
                 {"q", q},
                 {"n", n},
                 {"j", j},
                 {"constellation", to_string(constellation.kind)},
                 {"d", d}},
                value,
                std::nullopt};
  r.inputs["clamped"] = std::min(value, 1.0);
  return r;
}

BoundReport q_lower_bound(double p, double eps, const Constellation& constellation, double rho) {
  if (!(p > 0.0 && p < 2.0)) throw DomainError("p must lie in (0, 2)");
  if (!(eps > 0.0)) throw DomainError("epsilon must be > 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0, 1]");
  const double d = bounded_difference(constellation);
  const double value = -(d * d * std::log(p / 2.0) / (2.0 * eps * eps)) * (1.0 - rho);
  return {"q_lower_bound",
          {{"p", p},
           {"eps", eps},
           {"rho", rho},
           {"constellation", to_string(constellation.kind)},
           {"d", d}},
          value,
          std::nullopt};
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

CovariancePair limit_covariances(double tau, double rho, double f_s, double sigma_b) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0, 1]");
  if (!(f_s > 0.0)) throw DomainError("F_s must be > 0");
  const double half_power = 0.5 * sigma_b * sigma_b;
  CovariancePair c;
  c.r_rr = half_power * (sinc(2.0 * f_s * tau) - rho * sinc(2.0 * f_s * tau * rho));
  if (tau != 0.0) {
    const double w = 2.0 * std::numbers::pi * f_s * tau;
    c.r_ri = half_power * (std::cos(w * rho) - std::cos(w)) / w;
  }
  return c;
}

}  // namespace signsel
