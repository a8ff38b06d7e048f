#pragma once

#include "qrc/rng.hpp"
#include "qrc/state.hpp"

namespace qrc {

/// Full-rank random density matrix G G^dagger / Tr(G G^dagger), G Ginibre.
QuantumState random_state(int n_spins, Engine& engine);

/// Haar-ish random pure state (normalized complex Gaussian vector).
CVector random_pure_vector(int n_spins, Engine& engine);

/// (A + A^dagger) / 2 with Gaussian entries.
CMatrix random_hermitian(Index dim, Engine& engine);

}  // namespace qrc
