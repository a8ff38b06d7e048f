#include "qrc/measurement.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrc {

Eigen::Vector2d measurement_kernel(double outcome, double g) {
    if (!(g >= 0.0)) throw std::invalid_argument("measurement strength g must be non-negative");
    const double norm = std::pow(2.0 * std::numbers::pi, -0.25);
    const double up = outcome - g, down = outcome + g;
    return {norm * std::exp(-up * up / 4.0), norm * std::exp(-down * down / 4.0)};
}

BackActionMask backaction_mask(double g, int n_spins) {
    if (!(g >= 0.0)) throw std::invalid_argument("measurement strength g must be non-negative");
    check_spin_count(n_spins);
    const Index dim = Index{1} << n_spins;
    // damping per differing bit; powers precomputed so the diagonal is exactly 1
    Eigen::VectorXd damping(n_spins + 1);
    for (int d = 0; d <= n_spins; ++d) damping(d) = std::exp(-g * g * d / 2.0);
    Eigen::MatrixXd mask(dim, dim);
    for (Index b = 0; b < dim; ++b)
        for (Index a = 0; a < dim; ++a)
            mask(a, b) = damping(std::popcount(static_cast<std::uint64_t>(a ^ b)));
    return {std::move(mask), g, n_spins};
}

BackActionMask all_ones_mask(int n_spins) {
    check_spin_count(n_spins);
    const Index dim = Index{1} << n_spins;
    return {Eigen::MatrixXd::Ones(dim, dim), 0.0, n_spins};
}

QuantumState apply_backaction(const QuantumState& rho, const BackActionMask& mask) {
    if (mask.mask.rows() != rho.dim() || mask.mask.cols() != rho.dim())
        throw std::invalid_argument("mask dimension does not match state");
    CMatrix out = rho.matrix().cwiseProduct(mask.mask.cast<cplx>());
    return QuantumState::unchecked(std::move(out), rho.n_spins());
}

Eigen::Matrix2cd axis_rotation(Axis basis) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd rot;
    switch (basis) {
        case Axis::z: rot.setIdentity(); break;
        // Hadamard: H X H = Z
        case Axis::x: rot << r, r, r, -r; break;
        // H S^dagger: S^dagger Y S = X, then H X H = Z
        case Axis::y: rot << r, cplx(0, -r), r, cplx(0, r); break;
    }
    return rot;
}

OperatorMatrix basis_rotation(Axis basis, int n_spins) {
    check_spin_count(n_spins);
    const Eigen::Matrix2cd single = axis_rotation(basis);
    CMatrix full = CMatrix::Identity(1, 1);
    for (int site = 0; site < n_spins; ++site) {
        CMatrix next(full.rows() * 2, full.cols() * 2);
        for (Index r = 0; r < full.rows(); ++r)
            for (Index c = 0; c < full.cols(); ++c)
                next.block<2, 2>(2 * r, 2 * c) = full(r, c) * single;
        full = std::move(next);
    }
    return {std::move(full), basis == Axis::z};
}

void rotate_to_measurement_frame(CMatrix& rho, Axis basis, int n_spins) {
    if (basis == Axis::z) return;
    const Eigen::Matrix2cd rot = axis_rotation(basis);
    for (int site = 0; site < n_spins; ++site) apply_local_conjugation(rho, rot, site, n_spins);
}

void rotate_from_measurement_frame(CMatrix& rho, Axis basis, int n_spins) {
    if (basis == Axis::z) return;
    const Eigen::Matrix2cd rot = axis_rotation(basis).adjoint();
    for (int site = 0; site < n_spins; ++site) apply_local_conjugation(rho, rot, site, n_spins);
}

void extract_singles_into(const CMatrix& rotated, int n_spins, Eigen::Ref<Eigen::VectorXd> out) {
    out.head(n_spins).setZero();
    for (Index a = 0; a < rotated.rows(); ++a) {
        const double p = rotated(a, a).real();
        for (int i = 0; i < n_spins; ++i) out(i) += (a & site_bit(i, n_spins)) ? -p : p;
    }
}

void extract_features_into(const CMatrix& rotated, int n_spins, Eigen::Ref<Eigen::VectorXd> out) {
    const int n_pairs = n_spins * (n_spins - 1) / 2;
    if (out.size() != features_per_direction(n_spins)) throw std::invalid_argument("feature row has wrong width");
    out.setZero();
    for (Index a = 0; a < rotated.rows(); ++a) {
        const double p = rotated(a, a).real();
        int k = n_spins;
        for (int i = 0; i < n_spins; ++i) {
            const bool zi = (a & site_bit(i, n_spins)) != 0;
            out(i) += zi ? -p : p;
            for (int j = i + 1; j < n_spins; ++j, ++k) {
                const bool zj = (a & site_bit(j, n_spins)) != 0;
                out(k) += (zi != zj) ? -p : p;
            }
        }
    }
    // <(sigma^d_i)^2> = 1
    out.segment(n_spins + n_pairs, n_spins).setOnes();
}

Eigen::VectorXd extract_features(const QuantumState& rotated) {
    Eigen::VectorXd row(features_per_direction(rotated.n_spins()));
    extract_features_into(rotated.matrix(), rotated.n_spins(), row);
    return row;
}

}  // namespace qrc
