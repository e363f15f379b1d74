// Test-side reference implementations, deliberately independent of the
// library's code paths: long-double erfc for the normal cdf, brute quadrature
// for truncated moments, series/continued-fraction incomplete gamma for
// chi-square quantiles.
#pragma once

#include <cmath>
#include <stdexcept>

namespace oracles {

inline long double cdf(long double z) {
  return 0.5L * erfcl(-z * 0.70710678118654752440084436210484903L);
}

inline long double pdf(long double z) {
  return 0.39894228040143267793994605993438187L * expl(-0.5L * z * z);
}

// Inverse of cdf by plain bisection.
inline long double quantile(long double p) {
  long double lo = -45.0L, hi = 45.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

namespace detail {

constexpr long double kGlNode[16] = {
    -0.9894009349916499L, -0.9445750230732326L, -0.8656312023878318L, -0.755404408355003L,
    -0.6178762444026438L, -0.45801677765722737L, -0.2816035507792589L, -0.09501250983763745L,
    0.09501250983763745L, 0.2816035507792589L,  0.45801677765722737L, 0.6178762444026438L,
    0.755404408355003L,   0.8656312023878318L,  0.9445750230732326L,  0.9894009349916499L};
constexpr long double kGlWeight[16] = {
    0.027152459411754037L, 0.062253523938647706L, 0.09515851168249259L, 0.12462897125553403L,
    0.14959598881657676L,  0.16915651939500262L,  0.1826034150449236L,  0.18945061045506859L,
    0.18945061045506859L,  0.1826034150449236L,   0.16915651939500262L, 0.14959598881657676L,
    0.12462897125553403L,  0.09515851168249259L,  0.062253523938647706L, 0.027152459411754037L};

template <typename F>
long double gauss_segment(F&& f, long double a, long double b) {
  const long double mid = 0.5L * (a + b);
  const long double half = 0.5L * (b - a);
  long double sum = 0.0L;
  for (int i = 0; i < 16; ++i) sum += kGlWeight[i] * f(mid + half * kGlNode[i]);
  return sum * half;
}

template <typename F>
long double gauss(F&& f, long double a, long double b, long double max_width) {
  const int segments = static_cast<int>(std::ceil(static_cast<double>((b - a) / max_width)));
  long double sum = 0.0L;
  for (int s = 0; s < segments; ++s) {
    const long double lo = a + (b - a) * s / segments;
    const long double hi = a + (b - a) * (s + 1) / segments;
    sum += gauss_segment(f, lo, hi);
  }
  return sum;
}

}  // namespace detail

// Var(Z | Z <= z) by quadrature of the truncated moments.
inline long double truncated_variance(long double z) {
  long double m0, m1, m2;
  if (z < -1.0L) {
    // Substitute t = z - s so the common factor pdf(z) cancels; the integrand
    // exp(z s - s^2/2) never under- or overflows for z < 0.
    const long double S = z + sqrtl(z * z + 120.0L);
    auto g = [&](long double s) { return expl(z * s - 0.5L * s * s); };
    m0 = detail::gauss(g, 0.0L, S, 0.25L);
    m1 = detail::gauss([&](long double s) { return (z - s) * g(s); }, 0.0L, S, 0.25L);
    m2 = detail::gauss([&](long double s) { return (z - s) * (z - s) * g(s); }, 0.0L, S, 0.25L);
  } else {
    const long double hi = z < 9.0L ? z : 9.0L;
    m0 = detail::gauss([](long double t) { return pdf(t); }, -9.0L, hi, 0.5L);
    m1 = detail::gauss([](long double t) { return t * pdf(t); }, -9.0L, hi, 0.5L);
    m2 = detail::gauss([](long double t) { return t * t * pdf(t); }, -9.0L, hi, 0.5L);
  }
  const long double mean = m1 / m0;
  return m2 / m0 - mean * mean;
}

inline long double lambda(long double z) { return 1.0L - truncated_variance(z); }

// Regularized lower incomplete gamma P(a, x).
inline long double gamma_p(long double a, long double x) {
  if (x < 0.0L || a <= 0.0L) throw std::invalid_argument("gamma_p domain");
  if (x == 0.0L) return 0.0L;
  const long double lg = lgammal(a);
  if (x < a + 1.0L) {  // series
    long double term = 1.0L / a;
    long double sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (a + n);
      sum += term;
      if (term < sum * 1e-20L) break;
    }
    return sum * expl(-x + a * logl(x) - lg);
  }
  // continued fraction for Q(a, x), modified Lentz
  const long double tiny = 1e-300L;
  long double b = x + 1.0L - a;
  long double c = 1.0L / tiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i < 500; ++i) {
    const long double an = -static_cast<long double>(i) * (i - a);
    b += 2.0L;
    d = an * d + b;
    if (fabsl(d) < tiny) d = tiny;
    c = b + an / c;
    if (fabsl(c) < tiny) c = tiny;
    d = 1.0L / d;
    const long double delta = d * c;
    h *= delta;
    if (fabsl(delta - 1.0L) < 1e-20L) break;
  }
  return 1.0L - expl(-x + a * logl(x) - lg) * h;
}

inline long double chi2_cdf(long double x, int df) { return gamma_p(0.5L * df, 0.5L * x); }

inline long double chi2_quantile(long double p, int df) {
  long double lo = 0.0L, hi = df + 60.0L * sqrtl(static_cast<long double>(df)) + 120.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (chi2_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

}  // namespace oracles
