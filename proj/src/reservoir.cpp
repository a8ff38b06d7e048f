#include "qrc/reservoir.hpp"

#include "qrc/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrc {

Eigen::MatrixXd sample_couplings(int n_spins, std::uint64_t seed) {
    if (n_spins < 2) throw std::invalid_argument("reservoir needs at least 2 spins");
    check_spin_count(n_spins);
    Engine engine = make_engine(derive_seed(seed, {seed_tag::couplings}));
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n_spins, n_spins);
    for (int a = 0; a < n_spins; ++a)
        for (int b = a + 1; b < n_spins; ++b) j(a, b) = dist(engine);
    return j;
}

ReservoirSpec ReservoirSpec::random(int n_spins, double field_h, std::uint64_t seed, double dt) {
    ReservoirSpec spec;
    spec.n_spins = n_spins;
    spec.couplings = sample_couplings(n_spins, seed);
    spec.field_h = field_h;
    spec.dt = dt;
    spec.seed = seed;
    return spec;
}

void ReservoirSpec::validate() const {
    if (n_spins < 2) throw std::invalid_argument("reservoir needs at least 2 spins");
    check_spin_count(n_spins);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (couplings.rows() != n_spins || couplings.cols() != n_spins)
        throw std::invalid_argument("couplings must be an n_spins x n_spins matrix");
    if (input_site < 0 || input_site >= n_spins) throw std::out_of_range("input site outside the register");
    if (!std::isfinite(field_h)) throw std::invalid_argument("field h must be finite");
}

OperatorMatrix build_hamiltonian(const ReservoirSpec& spec) {
    spec.validate();
    const int n = spec.n_spins;
    const Index dim = Index{1} << n;
    CMatrix h = CMatrix::Zero(dim, dim);
    for (Index a = 0; a < dim; ++a) {
        double diag = 0.0;
        for (int i = 0; i < n; ++i) diag += (a & site_bit(i, n)) ? -1.0 : 1.0;
        h(a, a) = 0.5 * spec.field_h * diag;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double jij = spec.couplings(i, j);
                if (jij == 0.0) continue;
                h(a ^ site_bit(i, n) ^ site_bit(j, n), a) += jij;
            }
        }
    }
    return {std::move(h), true};
}

Eigen::Vector2d encode_input(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("input value " + std::to_string(s) + " outside [0, 1]");
    return {std::sqrt(1.0 - s), std::sqrt(s)};
}

QuantumState step_map(const QuantumState& rho_prev, double s, const OperatorMatrix& unitary, int input_site) {
    const int n = rho_prev.n_spins();
    if (unitary.mat.rows() != rho_prev.dim()) throw std::invalid_argument("propagator dimension mismatch");
    const Eigen::Vector2d amp = encode_input(s);
    const CMatrix reduced = partial_trace_input(rho_prev, input_site);

    // U (|psi> (x) I_B) as a dim x dim/2 isometry, so the product only touches
    // the reduced block.
    const Index sub = reduced.rows();
    const Index low_bits = site_bit(input_site, n) - 1;
    CMatrix iso(rho_prev.dim(), sub);
    for (Index b = 0; b < sub; ++b) {
        const Index hi = (b & ~low_bits) << 1, lo = b & low_bits;
        iso.col(b) = amp(0) * unitary.mat.col(hi | lo) + amp(1) * unitary.mat.col(hi | (low_bits + 1) | lo);
    }
    CMatrix out = iso * reduced * iso.adjoint();
    hermitize(out);
    return QuantumState::unchecked(std::move(out), n);
}

Reservoir::Reservoir(ReservoirSpec spec)
    : spec_(std::move(spec)), hamiltonian_(build_hamiltonian(spec_)), unitary_(propagator(hamiltonian_, spec_.dt)) {}

}  // namespace qrc
