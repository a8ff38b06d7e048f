#include "qrc/random_states.hpp"

namespace qrc {

static CMatrix gaussian_matrix(Index rows, Index cols, Engine& engine) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = cplx(normal(engine), normal(engine));
    return m;
}

QuantumState random_state(int n_spins, Engine& engine) {
    check_spin_count(n_spins);
    const Index dim = Index{1} << n_spins;
    const CMatrix g = gaussian_matrix(dim, dim, engine);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    hermitize(rho);
    return QuantumState::unchecked(std::move(rho), n_spins);
}

CVector random_pure_vector(int n_spins, Engine& engine) {
    check_spin_count(n_spins);
    CVector v = gaussian_matrix(Index{1} << n_spins, 1, engine).col(0);
    return v / v.norm();
}

CMatrix random_hermitian(Index dim, Engine& engine) {
    const CMatrix a = gaussian_matrix(dim, dim, engine);
    return (a + a.adjoint()) / 2.0;
}

}  // namespace qrc
