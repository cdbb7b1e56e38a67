#include "uqlab/random_states.hpp"

#include <cmath>

namespace uqlab::random {

namespace {

ComplexMatrix ginibre(Engine& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

BlochVector unit_vector(Engine& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    BlochVector v{g(rng), g(rng), g(rng)};
    if (norm(v) > 1e-8) return normalized(v);
  }
}

BlochVector bloch_ball_point(Engine& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BlochVector dir = unit_vector(rng);
  const double r = std::cbrt(u(rng));
  return {r * dir[0], r * dir[1], r * dir[2]};
}

DensityMatrix mixed_state(Engine& rng, int d) {
  const ComplexMatrix g = ginibre(rng, d, d);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::from_matrix(rho);
}

DensityMatrix pure_state(Engine& rng, int d) {
  const ComplexMatrix g = ginibre(rng, d, 1);
  return DensityMatrix::from_pure(g.col(0));
}

ComplexMatrix hermitian(Engine& rng, int d) {
  const ComplexMatrix g = ginibre(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

}  // namespace uqlab::random
