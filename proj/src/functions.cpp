#include "adkit/functions.hpp"

#include "adkit/rng.hpp"

namespace adkit::bench {

HelmholtzSpec helmholtz_make(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("helmholtz_make: n must be >= 1");
  HelmholtzSpec spec;
  spec.n = n;
  SplitMix64 rng(seed);
  spec.b.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    spec.b[i] = rng.uniform(0.1, 0.2) / static_cast<double>(n);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-0.1, 0.1);
  spec.A = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      spec.A(i, j) = 0.5 * (m(i, j) + m(j, i));
  return spec;
}

}  // namespace adkit::bench
