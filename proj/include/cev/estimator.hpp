#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cev/normal.hpp"

namespace cev {

// Left-censored observations. Censored entries are recorded at the detection
// limit C; uncensored entries lie strictly above it.
class CensoredSample {
 public:
  CensoredSample(std::vector<double> values, std::vector<bool> censored, CensoringScheme scheme);

  const std::vector<double>& values() const { return values_; }
  const std::vector<bool>& censored() const { return censored_; }
  const CensoringScheme& scheme() const { return scheme_; }
  std::size_t size() const { return values_.size(); }
  std::size_t uncensored_count() const { return uncensored_; }  // r
  std::size_t censored_count() const { return values_.size() - uncensored_; }

 private:
  std::vector<double> values_;
  std::vector<bool> censored_;
  CensoringScheme scheme_;
  std::size_t uncensored_ = 0;
};

// w_i = t_i when uncensored, Wc when censored.
struct CevWeightedSample {
  std::vector<double> weights;
  double w_c;
};

enum class Variant { Ap1, Ap2 };

struct EstimationConfig {
  double tolerance = 1e-8;  // relative, applied to both parameters
  int max_iterations = 1000;
  Variant variant = Variant::Ap2;
};

struct EstimationResult {
  ProcessParams params;
  double w_c;
  double p_c;
  int iterations;
  bool converged;
  std::vector<ProcessParams> trace;  // trace[0] is the naive start
  std::vector<std::string> warnings;
};

/// Mean and sample standard deviation (divisor N-1) of the recorded values,
/// censored entries kept at C. The starting point of the iteration.
ProcessParams naive_initial_params(const CensoredSample& sample);

/// Replace every censored observation with Wc computed from `params`.
CevWeightedSample substitute_cev(const CensoredSample& sample, const ProcessParams& params);

/// One update of the iteration: new mean is the average of the CEV weights;
/// new sigma is sqrt(sum (w_i - m)^2 / (r + (N - r) lambda(z_c))) with z_c and
/// Wc taken from `previous`. Ap2 centers the sum at the previous mean, Ap1 at
/// the fresh one.
ProcessParams mle_step(const CensoredSample& sample, const ProcessParams& previous,
                       Variant variant);

/// Full fixed-point estimation from the naive start until both parameters move
/// by at most `tolerance` relatively, or max_iterations is reached.
EstimationResult estimate(const CensoredSample& sample, const EstimationConfig& config = {});

enum class NaiveMethod { Zero, HalfC, AtC, Ignore };

/// The four substitution baselines: censored values as 0, C/2, C, or dropped.
/// Mean and sample standard deviation (divisor count-1) of what remains.
ProcessParams naive_estimate(const CensoredSample& sample, NaiveMethod method);

}  // namespace cev
