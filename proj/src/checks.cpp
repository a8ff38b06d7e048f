#include "qrc/checks.hpp"

#include "qrc/benchmark.hpp"
#include "qrc/random_states.hpp"
#include "qrc/resources.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace qrc {

namespace {

struct Check {
    std::string name;
    std::function<bool()> body;
};

bool channel_is_cptp() {
    Engine engine = make_engine(11);
    for (double g : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0}) {
        const BackActionMask mask = backaction_mask(g, 4);
        for (int trial = 0; trial < 10; ++trial) {
            const QuantumState rho = random_state(4, engine);
            const QuantumState out = apply_backaction(rho, mask);
            if (std::abs(out.matrix().trace() - rho.matrix().trace()) > 1e-12) return false;
            if (hermiticity_error(out.matrix()) > 1e-12) return false;
            if (min_eigenvalue(out.matrix()) < -1e-9) return false;
            if ((out.matrix().diagonal() - rho.matrix().diagonal()).cwiseAbs().maxCoeff() != 0.0) return false;
        }
    }
    return true;
}

bool kernel_matches_mask() {
    using boost::math::quadrature::gauss_kronrod;
    for (double g : {0.25, 1.0, 3.0}) {
        auto product = [g](int a, int b) {
            return [g, a, b](double v) {
                const Eigen::Vector2d k = measurement_kernel(v, g);
                return k(a) * k(b);
            };
        };
        const double up = gauss_kronrod<double, 61>::integrate(product(0, 0), -40.0, 40.0, 15, 1e-13);
        const double down = gauss_kronrod<double, 61>::integrate(product(1, 1), -40.0, 40.0, 15, 1e-13);
        const double cross = gauss_kronrod<double, 61>::integrate(product(0, 1), -40.0, 40.0, 15, 1e-13);
        if (std::abs(up - 1.0) > 1e-8 || std::abs(down - 1.0) > 1e-8) return false;
        if (std::abs(cross - backaction_mask(g, 1).mask(0, 1)) > 1e-6) return false;
    }
    return true;
}

bool propagator_is_unitary() {
    Engine engine = make_engine(12);
    for (int trial = 0; trial < 5; ++trial) {
        const OperatorMatrix h{random_hermitian(16, engine), true};
        const CMatrix u = propagator(h, 1.7).mat;
        if ((u * u.adjoint() - CMatrix::Identity(16, 16)).cwiseAbs().maxCoeff() > 1e-10) return false;
    }
    return true;
}

bool step_map_is_cptp() {
    Engine engine = make_engine(13);
    const Reservoir reservoir(ReservoirSpec::random(4, 0.5, 3));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const QuantumState out = reservoir.step(random_state(4, engine), unit(engine));
        if (trace_error(out.matrix()) > 1e-10 || min_eigenvalue(out.matrix()) < -1e-9) return false;
    }
    return true;
}

bool olp_matches_rsp_without_backaction() {
    const TimeSeries series = gen_memory_series(5, 60);
    const Reservoir reservoir(ReservoirSpec::random(4, 0.3, 9));
    TrajectoryOptions opts;
    opts.mask_override = all_ones_mask(4);
    return run_olp(series, reservoir, 0.0, opts).rows == run_rsp(series, reservoir).rows;
}

bool shot_budget_matches() {
    const double forward = shots_rsp_equivalent(1.5e6, 2000, 20);
    const double memory = shots_rsp_equivalent(1.5e6, 1000, 20);
    const double round_trip = time_rsp(1000, 20, 10.0, shots_rsp_equivalent(7.0, 1000, 20)) / time_olp(1000, 10.0, 7.0);
    return forward >= 1484 && forward <= 1514 && memory >= 2968 && memory <= 3028 && std::abs(round_trip - 1.0) < 1e-9;
}

bool readout_matches_normal_equations() {
    Engine engine = make_engine(14);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd x(120, 6);
    Eigen::VectorXd y(120);
    for (Index r = 0; r < x.rows(); ++r) {
        for (Index c = 0; c < x.cols(); ++c) x(r, c) = normal(engine);
        y(r) = normal(engine);
    }
    const Readout fit = train_readout(x, y);
    Eigen::MatrixXd design(x.rows(), x.cols() + 1);
    design << x, Eigen::VectorXd::Ones(x.rows());
    const Eigen::VectorXd beta = (design.transpose() * design).ldlt().solve(design.transpose() * y);
    return (fit.weights - beta.head(6)).cwiseAbs().maxCoeff() < 1e-6 && std::abs(fit.intercept - beta(6)) < 1e-6;
}

bool capacity_is_affine_invariant() {
    Engine engine = make_engine(15);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd p(200), t(200);
    for (Index i = 0; i < 200; ++i) {
        t(i) = normal(engine);
        p(i) = t(i) + normal(engine);
    }
    const Eigen::VectorXd q = (-3.0 * p.array() + 2.0).matrix();
    return std::abs(capacity(t, t) - 1.0) < 1e-12 && std::abs(capacity(p, t) - capacity(q, t)) < 1e-10;
}

bool shot_noise_has_target_width() {
    FeatureTable table;
    table.columns = direction_columns(Axis::z, 4);
    table.rows = Eigen::MatrixXd::Zero(2000, static_cast<Index>(table.columns.size()));
    const double shots = 400.0, g = 1.0;
    const FeatureTable noisy = apply_shot_noise(table, g, shots, 99);
    double s1 = 0.0, s2 = 0.0;
    long n1 = 0, n2 = 0;
    for (Index c = 0; c < noisy.n_cols(); ++c) {
        const bool pair = table.columns[static_cast<std::size_t>(c)].kind == ColumnKind::pair;
        (pair ? s2 : s1) += noisy.rows.col(c).squaredNorm();
        (pair ? n2 : n1) += noisy.n_rows();
    }
    return std::abs(std::sqrt(s1 / n1) / sigma_single(g, shots) - 1.0) < 0.02 &&
           std::abs(std::sqrt(s2 / n2) / sigma_pair(g, shots) - 1.0) < 0.02;
}

}  // namespace

bool run_checks(std::ostream& out) {
    const std::vector<Check> checks = {
        {"propagator unitarity", propagator_is_unitary},
        {"step map trace and positivity", step_map_is_cptp},
        {"back-action channel CPTP and diagonal invariance", channel_is_cptp},
        {"measurement kernel completeness and mask consistency", kernel_matches_mask},
        {"OLP with all-ones mask equals RSP", olp_matches_rsp_without_backaction},
        {"RSP shot budget and time round trip", shot_budget_matches},
        {"readout vs normal equations", readout_matches_normal_equations},
        {"capacity affine invariance", capacity_is_affine_invariant},
        {"shot-noise standard deviation", shot_noise_has_target_width},
    };
    bool all = true;
    for (const auto& check : checks) {
        bool ok = false;
        std::string error;
        try {
            ok = check.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        out << (ok ? "PASS  " : "FAIL  ") << check.name;
        if (!error.empty()) out << " (" << error << ')';
        out << '\n';
        all = all && ok;
    }
    return all;
}

}  // namespace qrc
