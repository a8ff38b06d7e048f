#pragma once

// Indirect (weak) measurement model.
//
// A pointer coupled with strength g to sigma^z yields the Kraus family
//   Omega_V = (2 pi)^(-1/4) ( e^{-(V-g)^2/4} |0><0| + e^{-(V+g)^2/4} |1><1| ).
// Averaged over the outcome V, this damps every coherence between basis
// states at Hamming distance d by e^{-g^2 d / 2}, i.e. an element-wise product
// with M = (I + e^{-g^2/2} X)^{(x)N}.

#include "qrc/state.hpp"

#include <vector>

namespace qrc {

struct MeasurementModel {
    double strength_g = 0.0;
    Axis basis = Axis::z;
};

/// Diagonal of Omega_V.
Eigen::Vector2d measurement_kernel(double outcome, double g);

struct BackActionMask {
    Eigen::MatrixXd mask;
    double g = 0.0;
    int n_spins = 0;

    bool is_all_ones() const { return (mask.array() == 1.0).all(); }
};

BackActionMask backaction_mask(double g, int n_spins);
BackActionMask all_ones_mask(int n_spins);

/// M (.) rho. Throws on dimension mismatch.
QuantumState apply_backaction(const QuantumState& rho, const BackActionMask& mask);

/// Single-qubit rotation R with R sigma^basis R^dagger = sigma^z.
Eigen::Matrix2cd axis_rotation(Axis basis);

/// Dense global rotation R^{(x)N}.
OperatorMatrix basis_rotation(Axis basis, int n_spins);

/// rho -> R^{(x)N} rho R^{(x)N dagger} (or its inverse) applied site by site.
void rotate_to_measurement_frame(CMatrix& rho, Axis basis, int n_spins);
void rotate_from_measurement_frame(CMatrix& rho, Axis basis, int n_spins);

/// Features per direction: N single-spin values, N(N-1)/2 pair values for
/// i<j, then N variance columns.
inline int features_per_direction(int n_spins) { return 2 * n_spins + n_spins * (n_spins - 1) / 2; }

/// Reads <Z_i>, <Z_i Z_j> and the variance placeholders from a state that is
/// already in the measurement frame of its direction. Only the diagonal is
/// used.
Eigen::VectorXd extract_features(const QuantumState& rotated);

/// Same, writing into an existing row segment.
void extract_features_into(const CMatrix& rotated, int n_spins, Eigen::Ref<Eigen::VectorXd> out);

/// <Z_i> only, from the diagonal of a rotated state.
void extract_singles_into(const CMatrix& rotated, int n_spins, Eigen::Ref<Eigen::VectorXd> out);

}  // namespace qrc
