#include "qrc/measurement.hpp"
#include "qrc/random_states.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qrc;
using boost::math::quadrature::gauss_kronrod;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

template <typename F>
double integrate(F f) {
    return gauss_kronrod<double, 61>::integrate(f, -40.0, 40.0, 20, 1e-14);
}

// Unconditional single-qubit channel: int Omega_V rho Omega_V^dagger dV.
CMatrix integrated_channel(const CMatrix& rho, double g) {
    CMatrix out(2, 2);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double factor = integrate([&](double v) {
                const Eigen::Vector2d k = measurement_kernel(v, g);
                return k(a) * k(b);
            });
            out(a, b) = factor * rho(a, b);
        }
    }
    return out;
}

}  // namespace

TEST(measurement_kernel, centered_value) {
    const Eigen::Vector2d k = measurement_kernel(0.0, 0.0);
    const double expected = std::pow(2.0 * std::numbers::pi, -0.25);
    EXPECT_DOUBLE_EQ(k(0), expected);
    EXPECT_DOUBLE_EQ(k(1), expected);
    EXPECT_THROW(measurement_kernel(0.0, -1.0), std::invalid_argument);
}

TEST(measurement_kernel, completeness) {
    for (double g : {0.0, 0.5, 2.0}) {
        for (int a = 0; a < 2; ++a) {
            const double total = integrate([&](double v) {
                const double k = measurement_kernel(v, g)(a);
                return k * k;
            });
            EXPECT_NEAR(total, 1.0, 1e-8) << "g = " << g;
        }
    }
}

TEST(measurement_kernel, off_diagonal_damping) {
    const double cross = integrate([](double v) {
        const Eigen::Vector2d k = measurement_kernel(v, 1.0);
        return k(0) * k(1);
    });
    EXPECT_NEAR(cross, std::exp(-0.5), 1e-6);
    EXPECT_NEAR(cross, 0.6065, 1e-4);
}

TEST(backaction_mask, zero_strength_is_all_ones) {
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(backaction_mask(0.0, n).is_all_ones());
}

TEST(backaction_mask, closed_form_entries) {
    const BackActionMask one = backaction_mask(1.0, 1);
    EXPECT_DOUBLE_EQ(one.mask(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(one.mask(1, 1), 1.0);
    EXPECT_NEAR(one.mask(0, 1), 0.60653, 1e-5);
    EXPECT_DOUBLE_EQ(one.mask(0, 1), one.mask(1, 0));
    EXPECT_NEAR(backaction_mask(1.0, 2).mask(0, 3), 0.36788, 1e-5);
}

TEST(backaction_mask, equals_kronecker_power) {
    for (double g : {0.3, 1.0, 2.5}) {
        const double c = std::exp(-g * g / 2.0);
        Eigen::Matrix2d factor;
        factor << 1.0, c, c, 1.0;
        Eigen::MatrixXd expected = Eigen::MatrixXd::Ones(1, 1);
        for (int site = 0; site < 3; ++site) {
            Eigen::MatrixXd next(expected.rows() * 2, expected.cols() * 2);
            for (Index r = 0; r < expected.rows(); ++r)
                for (Index col = 0; col < expected.cols(); ++col) next.block<2, 2>(2 * r, 2 * col) = expected(r, col) * factor;
            expected = next;
        }
        EXPECT_LT((backaction_mask(g, 3).mask - expected).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(backaction_mask, positive_semidefinite) {
    for (int n = 1; n <= 6; ++n) {
        for (double g : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0}) {
            const Eigen::MatrixXd m = backaction_mask(g, n).mask;
            const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
            EXPECT_GT(min_eig, -1e-9) << "n = " << n << ", g = " << g;
            EXPECT_GT(m.minCoeff(), -1e-300);
            EXPECT_LE(m.maxCoeff(), 1.0);
        }
    }
}

TEST(apply_backaction, all_ones_mask_is_identity) {
    Engine engine = make_engine(41);
    const QuantumState rho = random_state(3, engine);
    EXPECT_EQ(apply_backaction(rho, all_ones_mask(3)).matrix(), rho.matrix());
}

TEST(apply_backaction, strong_measurement_fully_dephases) {
    Engine engine = make_engine(42);
    const QuantumState rho = random_state(3, engine);
    const CMatrix out = apply_backaction(rho, backaction_mask(60.0, 3)).matrix();
    const CMatrix diag = rho.matrix().diagonal().asDiagonal();
    EXPECT_LT(max_abs(out - diag), 1e-300);
}

TEST(apply_backaction, channel_properties_on_random_states) {
    Engine engine = make_engine(43);
    const int n = 4;
    for (double g : {0.1, 0.5, 1.0, 2.0}) {
        const BackActionMask mask = backaction_mask(g, n);
        for (int trial = 0; trial < 100; ++trial) {
            const QuantumState rho = random_state(n, engine);
            const QuantumState out = apply_backaction(rho, mask);
            EXPECT_LT(std::abs(out.matrix().trace() - rho.matrix().trace()), 1e-12);
            EXPECT_LT(hermiticity_error(out.matrix()), 1e-12);
            EXPECT_GT(min_eigenvalue(out.matrix()), -1e-9);
            EXPECT_EQ(out.matrix().diagonal(), rho.matrix().diagonal());
            EXPECT_LE(out.purity(), rho.purity() + 1e-15);
            for (Index a = 0; a < rho.dim(); ++a) {
                for (Index b = 0; b < rho.dim(); ++b) {
                    if (a == b) continue;
                    EXPECT_LT(std::abs(out.matrix()(a, b)), std::abs(rho.matrix()(a, b)));
                }
            }
        }
    }
}

TEST(apply_backaction, z_observables_unchanged) {
    Engine engine = make_engine(44);
    const QuantumState rho = random_state(4, engine);
    const QuantumState out = apply_backaction(rho, backaction_mask(0.5, 4));
    EXPECT_EQ(extract_features(out), extract_features(rho));
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(expectation(out, pauli_on_site(Axis::z, i, 4)), expectation(rho, pauli_on_site(Axis::z, i, 4)), 1e-15);
}

TEST(apply_backaction, matches_integrated_kraus_channel) {
    Engine engine = make_engine(45);
    for (double g : {0.25, 1.0, 3.0}) {
        const QuantumState rho = random_state(1, engine);
        const CMatrix expected = integrated_channel(rho.matrix(), g);
        EXPECT_LT(max_abs(apply_backaction(rho, backaction_mask(g, 1)).matrix() - expected), 1e-6) << "g = " << g;
    }
}

TEST(apply_backaction, rejects_dimension_mismatch) {
    EXPECT_THROW(apply_backaction(QuantumState::ground(2), backaction_mask(1.0, 3)), std::invalid_argument);
}

TEST(basis_rotation, z_is_identity) {
    EXPECT_EQ(basis_rotation(Axis::z, 3).mat, CMatrix::Identity(8, 8));
}

TEST(basis_rotation, maps_axis_to_z) {
    for (Axis axis : {Axis::x, Axis::y}) {
        const CMatrix r = basis_rotation(axis, 1).mat;
        EXPECT_LT(max_abs(r * pauli_matrix(axis) * r.adjoint() - pauli_matrix(Axis::z)), 1e-12);
        for (int site = 0; site < 3; ++site) {
            const CMatrix big = basis_rotation(axis, 3).mat;
            EXPECT_LT(max_abs(big * pauli_on_site(axis, site, 3).mat * big.adjoint() - pauli_on_site(Axis::z, site, 3).mat),
                      1e-12);
        }
    }
}

TEST(basis_rotation, sitewise_rotation_matches_dense) {
    Engine engine = make_engine(46);
    const QuantumState rho = random_state(3, engine);
    for (Axis axis : kAxes) {
        const CMatrix r = basis_rotation(axis, 3).mat;
        CMatrix fast = rho.matrix();
        rotate_to_measurement_frame(fast, axis, 3);
        EXPECT_LT(max_abs(fast - r * rho.matrix() * r.adjoint()), 1e-14);
        rotate_from_measurement_frame(fast, axis, 3);
        EXPECT_LT(max_abs(fast - rho.matrix()), 1e-14);
    }
}

TEST(extract_features, ground_state) {
    const Eigen::VectorXd f = extract_features(QuantumState::ground(6));
    ASSERT_EQ(f.size(), 27);
    EXPECT_TRUE((f.head(6).array() == 1.0).all());
    EXPECT_TRUE((f.segment(6, 15).array() == 1.0).all());
    EXPECT_TRUE((f.tail(6).array() == 1.0).all());
}

TEST(extract_features, maximally_mixed) {
    const Eigen::VectorXd f = extract_features(QuantumState::maximally_mixed(6));
    EXPECT_LT(f.head(21).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_TRUE((f.tail(6).array() == 1.0).all());
    EXPECT_EQ(3 * features_per_direction(6), 81);
}

TEST(extract_features, matches_rotated_expectations) {
    Engine engine = make_engine(47);
    const int n = 4;
    const QuantumState rho = random_state(n, engine);
    for (Axis axis : kAxes) {
        CMatrix rotated = rho.matrix();
        rotate_to_measurement_frame(rotated, axis, n);
        const Eigen::VectorXd f = extract_features(QuantumState::unchecked(rotated, n));
        int k = n;
        for (int i = 0; i < n; ++i) {
            const OperatorMatrix pi = pauli_on_site(axis, i, n);
            EXPECT_NEAR(f(i), expectation(rho, pi), 1e-12);
            for (int j = i + 1; j < n; ++j, ++k) {
                const OperatorMatrix pij{pi.mat * pauli_on_site(axis, j, n).mat, true};
                EXPECT_NEAR(f(k), expectation(rho, pij), 1e-12);
            }
        }
    }
}
