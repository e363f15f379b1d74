#pragma once

#include <cstdint>

#include "cev/chart.hpp"

namespace cev {

struct GenSpec {
  double mu;
  double sigma;
  double limit_c;
  int k;
  int n;
  std::uint64_t seed;
};

/// k x n draws from N(mu, sigma) via the inverse-cdf transform of the counter
/// stream; draws at or below limit_c are recorded censored at the limit.
/// Cell (i, j) consumes stream index i*n + j.
SubgroupMatrix generate(const GenSpec& spec);

}  // namespace cev
