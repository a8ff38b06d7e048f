#include "qrc/random_states.hpp"
#include "qrc/state.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qrc;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

// exp(-i H dt) by truncated Taylor series.
CMatrix taylor_exp(const CMatrix& h, double dt, int terms) {
    const Index dim = h.rows();
    const CMatrix step = cplx(0.0, -dt) * h;
    CMatrix term = CMatrix::Identity(dim, dim);
    CMatrix sum = term;
    for (int k = 1; k < terms; ++k) {
        term = term * step / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

}  // namespace

TEST(pauli_on_site, single_qubit_z) {
    const OperatorMatrix z = pauli_on_site(Axis::z, 0, 1);
    CMatrix expected(2, 2);
    expected << 1, 0, 0, -1;
    EXPECT_EQ(z.mat, expected);
    EXPECT_TRUE(z.hermitian);
}

TEST(pauli_on_site, x_on_second_of_two) {
    const CMatrix m = pauli_on_site(Axis::x, 1, 2).mat;
    CMatrix expected = CMatrix::Zero(4, 4);
    // |00><01| + |01><00| + |10><11| + |11><10|
    expected(0, 1) = expected(1, 0) = expected(2, 3) = expected(3, 2) = 1.0;
    EXPECT_EQ(m, expected);
}

TEST(pauli_on_site, involutory_and_hermitian) {
    for (Axis axis : kAxes) {
        for (int site = 0; site < 3; ++site) {
            const CMatrix p = pauli_on_site(axis, site, 3).mat;
            EXPECT_LT(max_abs(p * p - CMatrix::Identity(8, 8)), 1e-15);
            EXPECT_LT(hermiticity_error(p), 1e-15);
        }
    }
}

TEST(pauli_on_site, matches_kronecker_product) {
    const CMatrix id = CMatrix::Identity(2, 2);
    const CMatrix y = pauli_matrix(Axis::y);
    EXPECT_LT(max_abs(pauli_on_site(Axis::y, 1, 3).mat - kron(kron(id, y), id)), 1e-15);
}

TEST(pauli_on_site, rejects_bad_site) {
    EXPECT_THROW(pauli_on_site(Axis::z, 2, 2), std::out_of_range);
    EXPECT_THROW(pauli_on_site(Axis::z, -1, 2), std::out_of_range);
}

TEST(propagator, zero_hamiltonian_is_identity) {
    const OperatorMatrix h{CMatrix::Zero(4, 4), true};
    EXPECT_LT(max_abs(propagator(h, 10.0).mat - CMatrix::Identity(4, 4)), 1e-15);
}

TEST(propagator, half_sigma_z) {
    const OperatorMatrix h{0.5 * pauli_matrix(Axis::z), true};
    const CMatrix u = propagator(h, 10.0).mat;
    EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, -5.0)), 1e-12);
    EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, 5.0)), 1e-12);
    EXPECT_LT(std::abs(u(0, 1)), 1e-12);
    EXPECT_LT(std::abs(u(1, 0)), 1e-12);
}

TEST(propagator, matches_taylor_series) {
    Engine engine = make_engine(21);
    const CMatrix h = random_hermitian(8, engine);
    const CMatrix u = propagator({h, true}, 1.0).mat;
    EXPECT_LT(max_abs(u - taylor_exp(h, 1.0, 50)), 1e-9);
}

TEST(propagator, unitary_for_random_hermitian) {
    Engine engine = make_engine(22);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix u = propagator({random_hermitian(16, engine), true}, 10.0).mat;
        EXPECT_LT(max_abs(u * u.adjoint() - CMatrix::Identity(16, 16)), 1e-10);
    }
}

TEST(propagator, rejects_non_hermitian) {
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 1) = 1.0;
    EXPECT_THROW(propagator({h, false}, 1.0), std::invalid_argument);
}

TEST(partial_trace, product_state_returns_factor) {
    Engine engine = make_engine(23);
    const CVector psi = random_pure_vector(1, engine);
    const QuantumState b = random_state(2, engine);
    const CMatrix full = kron(psi * psi.adjoint(), b.matrix());
    const CMatrix reduced = partial_trace_input(QuantumState::from_matrix(full, 3), 0);
    EXPECT_LT(max_abs(reduced - b.matrix()), 1e-14);
}

TEST(partial_trace, bell_state_marginal_is_maximally_mixed) {
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const CMatrix reduced = partial_trace_input(QuantumState::from_pure(bell, 2), 0);
    EXPECT_LT(max_abs(reduced - CMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(partial_trace, preserves_kept_expectations) {
    Engine engine = make_engine(24);
    const int n = 4;
    for (int trial = 0; trial < 100; ++trial) {
        const QuantumState rho = random_state(n, engine);
        const int traced = trial % n;
        const CMatrix reduced = partial_trace_input(rho, traced);
        EXPECT_LT(std::abs(reduced.trace() - cplx(1.0)), 1e-10);
        EXPECT_LT(hermiticity_error(reduced), 1e-12);
        EXPECT_GT(min_eigenvalue(reduced), -1e-9);
        // observable on kept site k, which becomes site k' in the reduced register
        const int kept = (traced + 1) % n;
        const int kept_reduced = kept < traced ? kept : kept - 1;
        const Axis axis = kAxes[trial % 3];
        const double full = expectation(rho, pauli_on_site(axis, kept, n));
        const double part = expectation(QuantumState::unchecked(reduced, n - 1), pauli_on_site(axis, kept_reduced, n - 1));
        EXPECT_NEAR(full, part, 1e-12);
    }
}

TEST(partial_trace, rejects_bad_site) {
    EXPECT_THROW(partial_trace_input(QuantumState::ground(3), 3), std::out_of_range);
}

TEST(expectation, basic_values) {
    const QuantumState zero = QuantumState::ground(1);
    EXPECT_DOUBLE_EQ(expectation(zero, pauli_on_site(Axis::z, 0, 1)), 1.0);
    EXPECT_DOUBLE_EQ(expectation(zero, pauli_on_site(Axis::x, 0, 1)), 0.0);
    const QuantumState mixed = QuantumState::maximally_mixed(1);
    for (Axis a : kAxes) EXPECT_DOUBLE_EQ(expectation(mixed, pauli_on_site(a, 0, 1)), 0.0);
}

TEST(expectation, linear_and_bounded) {
    Engine engine = make_engine(25);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const QuantumState r1 = random_state(3, engine), r2 = random_state(3, engine);
        const OperatorMatrix o1{random_hermitian(8, engine), true}, o2{random_hermitian(8, engine), true};
        const double a = coef(engine), b = coef(engine);
        const OperatorMatrix mix{a * o1.mat + b * o2.mat, true};
        EXPECT_NEAR(expectation(r1, mix), a * expectation(r1, o1) + b * expectation(r1, o2), 1e-12);
        const double p = 0.3;
        const QuantumState blend = QuantumState::unchecked(p * r1.matrix() + (1 - p) * r2.matrix(), 3);
        EXPECT_NEAR(expectation(blend, o1), p * expectation(r1, o1) + (1 - p) * expectation(r2, o1), 1e-12);
        // imaginary part of Tr(rho O) vanishes
        EXPECT_LT(std::abs((r1.matrix() * o1.mat).trace().imag()), 1e-10);
        const double norm = Eigen::SelfAdjointEigenSolver<CMatrix>(o1.mat).eigenvalues().cwiseAbs().maxCoeff();
        EXPECT_LE(std::abs(expectation(r1, o1)), norm + 1e-12);
    }
}

TEST(expectation, rejects_dimension_mismatch) {
    EXPECT_THROW(expectation(QuantumState::ground(2), pauli_on_site(Axis::z, 0, 1)), std::invalid_argument);
}

TEST(local_conjugation, matches_dense_embedding) {
    Engine engine = make_engine(26);
    const QuantumState rho = random_state(3, engine);
    Eigen::Matrix2cd gate = random_hermitian(2, engine);
    gate = propagator({CMatrix(gate), true}, 0.7).mat;
    for (int site = 0; site < 3; ++site) {
        CMatrix fast = rho.matrix();
        apply_local_conjugation(fast, gate, site, 3);
        const CMatrix g = embed_single(gate, site, 3);
        EXPECT_LT(max_abs(fast - g * rho.matrix() * g.adjoint()), 1e-14);
    }
}

TEST(quantum_state, validation) {
    CMatrix bad = CMatrix::Identity(2, 2);
    EXPECT_THROW(QuantumState::from_matrix(bad, 1), std::invalid_argument);  // trace 2
    bad = CMatrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    EXPECT_THROW(QuantumState::from_matrix(bad, 1), std::invalid_argument);  // negative eigenvalue
    bad = CMatrix::Identity(2, 2) / 2.0;
    bad(0, 1) = 0.1;
    EXPECT_THROW(QuantumState::from_matrix(bad, 1), std::invalid_argument);  // not Hermitian
    EXPECT_THROW(QuantumState::ground(kMaxSpins + 1), std::invalid_argument);
    EXPECT_NO_THROW(QuantumState::from_matrix(CMatrix::Identity(4, 4) / 4.0, 2));
}
