#pragma once

// Dense density-matrix kit for small spin registers.
//
// Site 0 is the leftmost Kronecker factor, i.e. the most significant bit of a
// computational-basis index.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string_view>

namespace qrc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr int kMaxSpins = 12;

enum class Axis { x, y, z };

inline constexpr Axis kAxes[] = {Axis::x, Axis::y, Axis::z};

char axis_name(Axis axis);
Axis parse_axis(std::string_view text);

/// Bit mask selecting `site` inside a basis index of an `n_spins` register.
inline Index site_bit(int site, int n_spins) { return Index{1} << (n_spins - 1 - site); }

struct OperatorMatrix {
    CMatrix mat;
    bool hermitian = false;

    Index dim() const { return mat.rows(); }
};

/// Density matrix of an N-spin register.
///
/// Construction through `from_matrix` validates Hermiticity, unit trace and
/// positivity. The simulation kernels build states through `unchecked`, since
/// an eigendecomposition per step would dominate the runtime.
class QuantumState {
public:
    static constexpr double kAlgebraTol = 1e-10;
    static constexpr double kPsdFloor = -1e-9;

    /// |0...0><0...0|
    static QuantumState ground(int n_spins);
    static QuantumState maximally_mixed(int n_spins);
    static QuantumState from_pure(const CVector& psi, int n_spins);
    static QuantumState from_matrix(CMatrix rho, int n_spins);
    static QuantumState unchecked(CMatrix rho, int n_spins) { return QuantumState(std::move(rho), n_spins); }

    const CMatrix& matrix() const { return rho_; }
    CMatrix& mutable_matrix() { return rho_; }
    int n_spins() const { return n_spins_; }
    Index dim() const { return rho_.rows(); }

    double purity() const;

private:
    QuantumState(CMatrix rho, int n_spins) : rho_(std::move(rho)), n_spins_(n_spins) {}

    CMatrix rho_;
    int n_spins_ = 0;
};

void check_spin_count(int n_spins);

double hermiticity_error(const CMatrix& m);
double trace_error(const CMatrix& rho);
double min_eigenvalue(const CMatrix& rho);

/// (rho + rho^dagger) / 2, in place.
void hermitize(CMatrix& rho);

/// I (x) ... (x) sigma^axis (x) ... (x) I with the Pauli at `site`.
OperatorMatrix pauli_on_site(Axis axis, int site, int n_spins);

Eigen::Matrix2cd pauli_matrix(Axis axis);

/// exp(-i H dt) through a Hermitian eigendecomposition of H.
OperatorMatrix propagator(const OperatorMatrix& hamiltonian, double dt);

/// Trace over `input_site`; the remaining sites keep their relative order.
CMatrix partial_trace_input(const QuantumState& state, int input_site);
CMatrix partial_trace_site(const CMatrix& rho, int site, int n_spins);

/// Re Tr(rho O). Throws on dimension mismatch.
double expectation(const QuantumState& state, const OperatorMatrix& op);

/// rho -> G rho G^dagger for a single-qubit gate G on `site`, without
/// building the full 2^N operator.
void apply_local_conjugation(CMatrix& rho, const Eigen::Matrix2cd& gate, int site, int n_spins);

/// psi -> G psi for a single-qubit gate G on `site`.
void apply_local_gate(CVector& psi, const Eigen::Matrix2cd& gate, int site, int n_spins);

/// Embeds a single-site operator into the full register.
CMatrix embed_single(const Eigen::Matrix2cd& gate, int site, int n_spins);

}  // namespace qrc
