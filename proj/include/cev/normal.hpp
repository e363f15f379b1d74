#pragma once

#include <cmath>

#include "cev/error.hpp"

namespace cev {

// In-control process model N(mu, sigma). sigma is strictly positive.
struct ProcessParams {
  double mu;
  double sigma;

  ProcessParams(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma))
      fail(errc::domain, "process parameters must be finite");
    if (sigma <= 0.0) fail(errc::domain, "sigma must be > 0");
  }
};

enum class CensorSide { Left };

// Fixed detection limit C. Readings at or below C are reported censored.
struct CensoringScheme {
  double limit_c;
  CensorSide side;

  explicit CensoringScheme(double limit, CensorSide s = CensorSide::Left)
      : limit_c(limit), side(s) {
    if (!std::isfinite(limit)) fail(errc::domain, "detection limit must be finite");
    if (s != CensorSide::Left) fail(errc::domain, "only left censoring is supported");
  }
};

// z_c = (C - mu) / sigma
struct StandardizedCensorPoint {
  double z_c;

  explicit StandardizedCensorPoint(double z) : z_c(z) {
    if (!std::isfinite(z)) fail(errc::domain, "standardized censor point must be finite");
  }
};

/// Standard normal density phi(z) = exp(-z^2/2) / sqrt(2 pi).
double std_normal_pdf(double z);

/// Standard normal distribution Phi(z); absolute error below 1e-10 on |z| <= 8,
/// full relative accuracy in the lower tail.
double std_normal_cdf(double z);

/// Inverse of std_normal_cdf on (0, 1), solved by safeguarded Newton iteration
/// on the cdf itself (no independent approximation to validate).
double std_normal_quantile(double p);

StandardizedCensorPoint censor_point(const ProcessParams& params, const CensoringScheme& scheme);

/// Pc = Phi((C - mu) / sigma), the probability of a censored reading.
double censoring_proportion(const ProcessParams& params, const CensoringScheme& scheme);

/// Lower-tail hazard V(z) = phi(z) / Phi(z). Stable for z down to -30 and
/// beyond; switches to a continued fraction below z = -8.
double mills_hazard(StandardizedCensorPoint z_c);

/// Conditional mean of the censored tail, Wc = E[T | T <= C] = mu - sigma V(z_c).
/// Always below both C and mu.
double cev_weight(const ProcessParams& params, const CensoringScheme& scheme);

/// Variance-correction factor lambda(z) = V(z) (V(z) + z) = 1 - Var(Z | Z <= z),
/// strictly inside (0, 1) for finite z and decreasing in z.
double lambda_factor(StandardizedCensorPoint z_c);

struct ChartConstants {
  double c4;
  double a3;
  double b4;
};

/// Classical Shewhart constants c4, A3, B4 for subgroup size n >= 2.
ChartConstants classical_constants(int n);

namespace detail {
// Raw-double forms used by inner loops; identical arithmetic to the typed API.
double mills(double z);
double lambda(double z);
}  // namespace detail

}  // namespace cev
