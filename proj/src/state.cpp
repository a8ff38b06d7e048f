#include "qrc/state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrc {

char axis_name(Axis axis) {
    switch (axis) {
        case Axis::x: return 'x';
        case Axis::y: return 'y';
        case Axis::z: return 'z';
    }
    return '?';
}

Axis parse_axis(std::string_view text) {
    if (text == "x") return Axis::x;
    if (text == "y") return Axis::y;
    if (text == "z") return Axis::z;
    throw std::invalid_argument("unknown axis '" + std::string(text) + "' (expected x, y or z)");
}

void check_spin_count(int n_spins) {
    if (n_spins < 1 || n_spins > kMaxSpins) {
        throw std::invalid_argument("n_spins must be in [1, " + std::to_string(kMaxSpins) + "], got " +
                                    std::to_string(n_spins));
    }
}

static void check_site(int site, int n_spins) {
    if (site < 0 || site >= n_spins) {
        throw std::out_of_range("site " + std::to_string(site) + " outside [0, " + std::to_string(n_spins) + ")");
    }
}

QuantumState QuantumState::ground(int n_spins) {
    check_spin_count(n_spins);
    const Index dim = Index{1} << n_spins;
    CMatrix rho = CMatrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return QuantumState(std::move(rho), n_spins);
}

QuantumState QuantumState::maximally_mixed(int n_spins) {
    check_spin_count(n_spins);
    const Index dim = Index{1} << n_spins;
    CMatrix rho = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
    return QuantumState(std::move(rho), n_spins);
}

QuantumState QuantumState::from_pure(const CVector& psi, int n_spins) {
    check_spin_count(n_spins);
    if (psi.size() != (Index{1} << n_spins)) throw std::invalid_argument("state vector has wrong dimension");
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > kAlgebraTol) throw std::invalid_argument("state vector is not normalized");
    return QuantumState(psi * psi.adjoint(), n_spins);
}

QuantumState QuantumState::from_matrix(CMatrix rho, int n_spins) {
    check_spin_count(n_spins);
    const Index dim = Index{1} << n_spins;
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("density matrix has wrong dimension");
    if (hermiticity_error(rho) > kAlgebraTol) throw std::invalid_argument("density matrix is not Hermitian");
    if (trace_error(rho) > kAlgebraTol) throw std::invalid_argument("density matrix does not have unit trace");
    if (min_eigenvalue(rho) < kPsdFloor) throw std::invalid_argument("density matrix is not positive semidefinite");
    return QuantumState(std::move(rho), n_spins);
}

double QuantumState::purity() const {
    // Tr(rho^2) = sum |rho_ab|^2 for Hermitian rho
    return rho_.squaredNorm();
}

double hermiticity_error(const CMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_error(const CMatrix& rho) { return std::abs(rho.trace() - cplx(1.0, 0.0)); }

double min_eigenvalue(const CMatrix& rho) {
    CMatrix sym = rho;
    hermitize(sym);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void hermitize(CMatrix& rho) {
    const Index dim = rho.rows();
    for (Index c = 0; c < dim; ++c) {
        rho(c, c) = cplx(rho(c, c).real(), 0.0);
        for (Index r = c + 1; r < dim; ++r) {
            const cplx avg = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
            rho(r, c) = avg;
            rho(c, r) = std::conj(avg);
        }
    }
}

Eigen::Matrix2cd pauli_matrix(Axis axis) {
    Eigen::Matrix2cd p;
    switch (axis) {
        case Axis::x: p << 0.0, 1.0, 1.0, 0.0; break;
        case Axis::y: p << 0.0, cplx(0, -1), cplx(0, 1), 0.0; break;
        case Axis::z: p << 1.0, 0.0, 0.0, -1.0; break;
    }
    return p;
}

CMatrix embed_single(const Eigen::Matrix2cd& gate, int site, int n_spins) {
    check_spin_count(n_spins);
    check_site(site, n_spins);
    const Index dim = Index{1} << n_spins;
    const Index bit = site_bit(site, n_spins);
    CMatrix out = CMatrix::Zero(dim, dim);
    for (Index a = 0; a < dim; ++a) {
        const int ra = (a & bit) ? 1 : 0;
        const Index base = a & ~bit;
        out(a, base) = gate(ra, 0);
        out(a, base | bit) = gate(ra, 1);
    }
    return out;
}

OperatorMatrix pauli_on_site(Axis axis, int site, int n_spins) {
    return {embed_single(pauli_matrix(axis), site, n_spins), true};
}

OperatorMatrix propagator(const OperatorMatrix& hamiltonian, double dt) {
    const CMatrix& h = hamiltonian.mat;
    if (h.rows() != h.cols()) throw std::invalid_argument("Hamiltonian must be square");
    if (hermiticity_error(h) > QuantumState::kAlgebraTol) throw std::invalid_argument("Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of Hamiltonian failed");
    const Eigen::VectorXd& energies = solver.eigenvalues();
    const CMatrix& basis = solver.eigenvectors();
    CVector phases(energies.size());
    for (Index i = 0; i < energies.size(); ++i) phases(i) = std::polar(1.0, -energies(i) * dt);
    CMatrix u = basis * phases.asDiagonal() * basis.adjoint();
    return {std::move(u), false};
}

CMatrix partial_trace_site(const CMatrix& rho, int site, int n_spins) {
    check_spin_count(n_spins);
    check_site(site, n_spins);
    if (rho.rows() != (Index{1} << n_spins)) throw std::invalid_argument("density matrix has wrong dimension");
    const Index sub = Index{1} << (n_spins - 1);
    const Index low_bits = site_bit(site, n_spins) - 1;  // sites to the right of `site`
    auto insert = [&](Index b, Index value) {
        return ((b & ~low_bits) << 1) | (value * (low_bits + 1)) | (b & low_bits);
    };
    CMatrix out(sub, sub);
    for (Index c = 0; c < sub; ++c) {
        const Index c0 = insert(c, 0), c1 = insert(c, 1);
        for (Index r = 0; r < sub; ++r) {
            out(r, c) = rho(insert(r, 0), c0) + rho(insert(r, 1), c1);
        }
    }
    return out;
}

CMatrix partial_trace_input(const QuantumState& state, int input_site) {
    return partial_trace_site(state.matrix(), input_site, state.n_spins());
}

double expectation(const QuantumState& state, const OperatorMatrix& op) {
    if (op.mat.rows() != state.dim() || op.mat.cols() != state.dim()) {
        throw std::invalid_argument("operator dimension " + std::to_string(op.mat.rows()) +
                                    " does not match state dimension " + std::to_string(state.dim()));
    }
    // Tr(rho O) = sum_ab rho_ab O_ba
    const cplx value = (state.matrix().transpose().cwiseProduct(op.mat)).sum();
    return value.real();
}

void apply_local_conjugation(CMatrix& rho, const Eigen::Matrix2cd& gate, int site, int n_spins) {
    const Index dim = rho.rows();
    const Index bit = site_bit(site, n_spins);
    const cplx g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
    // columns: rho G^dagger
    for (Index b = 0; b < dim; ++b) {
        if (b & bit) continue;
        for (Index r = 0; r < dim; ++r) {
            const cplx x0 = rho(r, b), x1 = rho(r, b | bit);
            rho(r, b) = x0 * std::conj(g00) + x1 * std::conj(g01);
            rho(r, b | bit) = x0 * std::conj(g10) + x1 * std::conj(g11);
        }
    }
    // rows: G rho
    for (Index c = 0; c < dim; ++c) {
        for (Index a = 0; a < dim; ++a) {
            if (a & bit) continue;
            const cplx x0 = rho(a, c), x1 = rho(a | bit, c);
            rho(a, c) = g00 * x0 + g01 * x1;
            rho(a | bit, c) = g10 * x0 + g11 * x1;
        }
    }
}

void apply_local_gate(CVector& psi, const Eigen::Matrix2cd& gate, int site, int n_spins) {
    const Index bit = site_bit(site, n_spins);
    for (Index a = 0; a < psi.size(); ++a) {
        if (a & bit) continue;
        const cplx x0 = psi(a), x1 = psi(a | bit);
        psi(a) = gate(0, 0) * x0 + gate(0, 1) * x1;
        psi(a | bit) = gate(1, 0) * x0 + gate(1, 1) * x1;
    }
}

}  // namespace qrc
