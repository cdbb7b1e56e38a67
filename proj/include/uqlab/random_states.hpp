#pragma once

// Seeded random ensembles used by property checks and the acceptance suite.

#include "uqlab/linalg.hpp"

#include <cstdint>
#include <random>

namespace uqlab::random {

using Engine = std::mt19937_64;

/// Haar-uniform direction on S^2.
BlochVector unit_vector(Engine& rng);
/// Point uniform in the closed Bloch ball.
BlochVector bloch_ball_point(Engine& rng);
/// Hilbert-Schmidt (Ginibre) mixed state of dimension d.
DensityMatrix mixed_state(Engine& rng, int d);
/// Haar pure state of dimension d.
DensityMatrix pure_state(Engine& rng, int d);
/// GUE-like Hermitian matrix with unit-scale entries.
ComplexMatrix hermitian(Engine& rng, int d);

}  // namespace uqlab::random
