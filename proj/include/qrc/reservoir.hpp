#pragma once

#include "qrc/state.hpp"

#include <cstdint>

namespace qrc {

/// Transverse-field Ising reservoir:
///   H = sum_{i<j} J_ij X_i X_j + (h/2) sum_i Z_i
/// Energies in units of J, times in units of 1/J.
struct ReservoirSpec {
    int n_spins = 6;
    Eigen::MatrixXd couplings;  // strictly upper triangular, n_spins x n_spins
    double field_h = 1.0;
    double dt = 10.0;
    std::uint64_t seed = 0;
    int input_site = 0;

    /// Couplings drawn with sample_couplings(n_spins, seed).
    static ReservoirSpec random(int n_spins, double field_h, std::uint64_t seed, double dt = 10.0);

    void validate() const;
};

/// N(N-1)/2 couplings uniform in [-1/2, 1/2], stored in the strict upper triangle.
Eigen::MatrixXd sample_couplings(int n_spins, std::uint64_t seed);

OperatorMatrix build_hamiltonian(const ReservoirSpec& spec);

/// (sqrt(1-s), sqrt(s)). Throws for s outside [0, 1].
Eigen::Vector2d encode_input(double s);

/// U (|psi_s><psi_s| (x) Tr_input(rho)) U^dagger, re-Hermitized.
QuantumState step_map(const QuantumState& rho_prev, double s, const OperatorMatrix& unitary, int input_site);

/// Precomputed propagator for one reservoir; the trajectory kernels run
/// through this to avoid rebuilding U per step.
class Reservoir {
public:
    explicit Reservoir(ReservoirSpec spec);

    const ReservoirSpec& spec() const { return spec_; }
    const OperatorMatrix& hamiltonian() const { return hamiltonian_; }
    const OperatorMatrix& unitary() const { return unitary_; }
    int n_spins() const { return spec_.n_spins; }

    QuantumState step(const QuantumState& rho_prev, double s) const {
        return step_map(rho_prev, s, unitary_, spec_.input_site);
    }

private:
    ReservoirSpec spec_;
    OperatorMatrix hamiltonian_;
    OperatorMatrix unitary_;
};

}  // namespace qrc
