#include "cev/datagen.hpp"

#include "cev/rng.hpp"

namespace cev {

SubgroupMatrix generate(const GenSpec& spec) {
  const ProcessParams params(spec.mu, spec.sigma);  // validates mu, sigma
  const CensoringScheme scheme(spec.limit_c);
  if (spec.k < 1) fail(errc::domain, "k must be >= 1");
  if (spec.n < 2) fail(errc::domain, "n must be >= 2");

  const CounterRng rng(spec.seed);
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(spec.k) * static_cast<std::size_t>(spec.n));
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(spec.k) * spec.n; ++i) {
    const double draw = params.mu + params.sigma * rng.normal(static_cast<std::uint64_t>(i));
    cells.push_back(draw <= scheme.limit_c ? scheme.limit_c : draw);
  }
  return SubgroupMatrix(spec.k, spec.n, std::move(cells), scheme);
}

}  // namespace cev
