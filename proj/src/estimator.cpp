#include "cev/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace cev {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sum_sq_dev(const std::vector<double>& v, double center) {
  double s = 0.0;
  for (double x : v) {
    const double d = x - center;
    s += d * d;
  }
  return s;
}

}  // namespace

CensoredSample::CensoredSample(std::vector<double> values, std::vector<bool> censored,
                               CensoringScheme scheme)
    : values_(std::move(values)), censored_(std::move(censored)), scheme_(scheme) {
  if (values_.empty() || values_.size() != censored_.size())
    fail(errc::domain, "sample needs equal, nonzero value and flag counts");
  const double c = scheme_.limit_c;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) fail(errc::domain, "sample values must be finite");
    if (censored_[i]) {
      values_[i] = c;  // censored readings are recorded at the limit by convention
    } else {
      if (!(values_[i] > c))
        fail(errc::domain, "uncensored value at or below the detection limit");
      ++uncensored_;
    }
  }
}

ProcessParams naive_initial_params(const CensoredSample& sample) {
  const std::size_t n = sample.size();
  if (n < 2) fail(errc::insufficient_data, "initialization needs at least two observations");
  const double m = mean_of(sample.values());
  const double ss = sum_sq_dev(sample.values(), m);
  if (ss <= 0.0)
    fail(errc::degenerate, "all-censored or constant sample: no variation to start from");
  return ProcessParams(m, std::sqrt(ss / static_cast<double>(n - 1)));
}

CevWeightedSample substitute_cev(const CensoredSample& sample, const ProcessParams& params) {
  const double wc = cev_weight(params, sample.scheme());
  CevWeightedSample out;
  out.w_c = wc;
  out.weights.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    out.weights.push_back(sample.censored()[i] ? wc : sample.values()[i]);
  return out;
}

ProcessParams mle_step(const CensoredSample& sample, const ProcessParams& previous,
                       Variant variant) {
  const std::size_t n = sample.size();
  const std::size_t r = sample.uncensored_count();
  if (r == 0)
    fail(errc::all_censored, "all observations censored: estimation refuses to proceed");

  const double z_prev = censor_point(previous, sample.scheme()).z_c;
  const CevWeightedSample w = substitute_cev(sample, previous);
  const double mu_new = mean_of(w.weights);
  const double center = (variant == Variant::Ap2) ? previous.mu : mu_new;
  const double ss = sum_sq_dev(w.weights, center);
  if (ss <= 0.0) fail(errc::degenerate, "zero sum of squared deviations in sigma update");
  const double denom =
      static_cast<double>(r) + static_cast<double>(n - r) * detail::lambda(z_prev);
  return ProcessParams(mu_new, std::sqrt(ss / denom));
}

EstimationResult estimate(const CensoredSample& sample, const EstimationConfig& config) {
  if (config.tolerance <= 0.0) fail(errc::config, "tolerance must be > 0");
  if (config.max_iterations < 1) fail(errc::config, "max_iterations must be >= 1");
  if (sample.uncensored_count() == 0)
    fail(errc::all_censored, "all observations censored: estimation refuses to proceed");

  ProcessParams current = naive_initial_params(sample);
  std::vector<ProcessParams> trace{current};
  bool converged = false;
  int iterations = 0;
  for (int i = 1; i <= config.max_iterations; ++i) {
    const ProcessParams next = mle_step(sample, current, config.variant);
    trace.push_back(next);
    iterations = i;
    const bool mu_ok =
        std::abs(next.mu - current.mu) <= config.tolerance * std::max(1.0, std::abs(current.mu));
    const bool sigma_ok = std::abs(next.sigma - current.sigma) <= config.tolerance * current.sigma;
    current = next;
    if (mu_ok && sigma_ok) {
      converged = true;
      break;
    }
  }

  EstimationResult result{current,
                          cev_weight(current, sample.scheme()),
                          censoring_proportion(current, sample.scheme()),
                          iterations,
                          converged,
                          std::move(trace),
                          {}};
  if (sample.size() < 10)
    result.warnings.push_back("sample has fewer than 10 observations; estimates may be unstable");
  return result;
}

ProcessParams naive_estimate(const CensoredSample& sample, NaiveMethod method) {
  const double c = sample.scheme().limit_c;
  std::vector<double> v;
  v.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!sample.censored()[i]) {
      v.push_back(sample.values()[i]);
    } else {
      switch (method) {
        case NaiveMethod::Zero: v.push_back(0.0); break;
        case NaiveMethod::HalfC: v.push_back(0.5 * c); break;
        case NaiveMethod::AtC: v.push_back(c); break;
        case NaiveMethod::Ignore: break;
      }
    }
  }
  if (method == NaiveMethod::Ignore && v.size() < 2)
    fail(errc::insufficient_data, "ignoring censored values leaves fewer than two observations");
  if (v.size() < 2) fail(errc::insufficient_data, "naive estimation needs at least two values");
  const double m = mean_of(v);
  const double ss = sum_sq_dev(v, m);
  if (ss <= 0.0) fail(errc::degenerate, "naive substitution produced a constant sample");
  return ProcessParams(m, std::sqrt(ss / static_cast<double>(v.size() - 1)));
}

}  // namespace cev
