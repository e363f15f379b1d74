#include "cev/normal.hpp"

#include <algorithm>
#include <cmath>

namespace cev {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)
constexpr double kInvSqrt2 = 0.70710678118654752440;    // 1/sqrt(2)

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(errc::domain, std::string(what) + " must be finite");
}

// Acklam's rational starting guess for the lower half p in (0, 0.5]. Only a
// seed for the Newton iteration below; its own accuracy is immaterial.
double quantile_guess(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  if (p < 0.02425) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Solves Phi(x) = p for p in (0, 0.5]: Newton steps kept inside a shrinking
// bracket, bisection when a step would leave it.
double quantile_lower(double p) {
  double lo = -40.0;
  double hi = 0.0;
  double x = std::clamp(quantile_guess(p), lo + 1e-12, hi);
  for (int it = 0; it < 120; ++it) {
    const double f = std_normal_cdf(x) - p;
    if (f > 0.0)
      hi = x;
    else if (f < 0.0)
      lo = x;
    else
      return x;
    double next = x - f / std_normal_pdf(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-14 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace

double std_normal_pdf(double z) {
  require_finite(z, "z");
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double std_normal_cdf(double z) {
  require_finite(z, "z");
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(errc::domain, "quantile argument must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -quantile_lower(1.0 - p);
  return quantile_lower(p);
}

StandardizedCensorPoint censor_point(const ProcessParams& params, const CensoringScheme& scheme) {
  return StandardizedCensorPoint((scheme.limit_c - params.mu) / params.sigma);
}

double censoring_proportion(const ProcessParams& params, const CensoringScheme& scheme) {
  return std_normal_cdf(censor_point(params, scheme).z_c);
}

namespace detail {

double mills(double z) {
  if (z < -8.0) {
    // phi(z)/Phi(z) = phi(x)/(1 - Phi(x)) at x = -z, evaluated through the
    // Laplace continued fraction x + 1/(x + 2/(x + 3/(...))), which stays
    // finite long after phi and Phi themselves underflow.
    const double x = -z;
    double r = x;
    for (int k = 40; k >= 1; --k) r = x + k / r;
    return r;
  }
  return std_normal_pdf(z) / std_normal_cdf(z);
}

double lambda(double z) {
  const double v = mills(z);
  return v * (v + z);
}

}  // namespace detail

double mills_hazard(StandardizedCensorPoint z_c) { return detail::mills(z_c.z_c); }

double cev_weight(const ProcessParams& params, const CensoringScheme& scheme) {
  const double z = censor_point(params, scheme).z_c;
  return params.mu - params.sigma * detail::mills(z);
}

double lambda_factor(StandardizedCensorPoint z_c) { return detail::lambda(z_c.z_c); }

ChartConstants classical_constants(int n) {
  if (n < 2) fail(errc::domain, "chart constants require subgroup size n >= 2");
  const double nn = n;
  const double c4 =
      std::sqrt(2.0 / (nn - 1.0)) * std::exp(std::lgamma(nn / 2.0) - std::lgamma((nn - 1.0) / 2.0));
  const double a3 = 3.0 / (c4 * std::sqrt(nn));
  const double b4 = 1.0 + 3.0 * std::sqrt(1.0 - c4 * c4) / c4;
  return {c4, a3, b4};
}

}  // namespace cev
