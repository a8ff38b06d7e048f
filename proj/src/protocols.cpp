#include "qrc/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrc {

void TimeSeries::validate() const {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(values[k] >= 0.0 && values[k] <= 1.0))
            throw std::invalid_argument("series value at index " + std::to_string(k) + " outside [0, 1]");
    }
}

std::string origin_name(SeriesOrigin origin) {
    switch (origin) {
        case SeriesOrigin::santafe: return "santafe";
        case SeriesOrigin::uniform_random: return "uniform-random";
        case SeriesOrigin::custom: return "custom";
    }
    return "custom";
}

std::string Column::name() const {
    const char a = axis_name(axis);
    switch (kind) {
        case ColumnKind::single: return std::string(1, a) + std::to_string(i);
        case ColumnKind::pair: return std::string(1, a) + std::to_string(i) + a + std::to_string(j);
        case ColumnKind::variance: return std::string("var_") + a + std::to_string(i);
    }
    return "?";
}

std::vector<Column> direction_singles(Axis axis, int n_spins) {
    std::vector<Column> cols;
    for (int i = 0; i < n_spins; ++i) cols.push_back({axis, ColumnKind::single, i, -1});
    return cols;
}

std::vector<Column> direction_columns(Axis axis, int n_spins) {
    std::vector<Column> cols = direction_singles(axis, n_spins);
    for (int i = 0; i < n_spins; ++i)
        for (int j = i + 1; j < n_spins; ++j) cols.push_back({axis, ColumnKind::pair, i, j});
    for (int i = 0; i < n_spins; ++i) cols.push_back({axis, ColumnKind::variance, i, -1});
    return cols;
}

FeatureTable FeatureTable::select(const std::function<bool(const Column&)>& keep) const {
    std::vector<Index> idx;
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (keep(columns[c])) idx.push_back(static_cast<Index>(c));
    FeatureTable out;
    out.washout = washout;
    out.rows.resize(rows.rows(), static_cast<Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
        out.rows.col(static_cast<Index>(c)) = rows.col(idx[c]);
        out.columns.push_back(columns[static_cast<std::size_t>(idx[c])]);
    }
    return out;
}

FeatureTable FeatureTable::select(Axis axis) const {
    return select([axis](const Column& c) { return c.axis == axis; });
}

FeatureTable FeatureTable::hconcat(const std::vector<FeatureTable>& parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to concatenate");
    FeatureTable out;
    out.washout = parts.front().washout;
    Index width = 0;
    for (const auto& p : parts) {
        if (p.n_rows() != parts.front().n_rows()) throw std::invalid_argument("row counts differ");
        width += p.n_cols();
    }
    out.rows.resize(parts.front().n_rows(), width);
    Index at = 0;
    for (const auto& p : parts) {
        out.rows.middleCols(at, p.n_cols()) = p.rows;
        out.columns.insert(out.columns.end(), p.columns.begin(), p.columns.end());
        at += p.n_cols();
    }
    return out;
}

namespace {

QuantumState initial_state(const Reservoir& reservoir, const TrajectoryOptions& options) {
    if (!options.initial_state) return QuantumState::ground(reservoir.n_spins());
    if (options.initial_state->n_spins() != reservoir.n_spins())
        throw std::invalid_argument("initial state has the wrong number of spins");
    return *options.initial_state;
}

}  // namespace

FeatureTable run_rsp(const TimeSeries& series, const Reservoir& reservoir, const TrajectoryOptions& options) {
    series.validate();
    const int n = reservoir.n_spins();
    const int width = features_per_direction(n);
    FeatureTable table;
    table.washout = options.washout;
    table.rows.resize(static_cast<Index>(series.size()), 3 * width);
    for (Axis a : kAxes) {
        auto cols = direction_columns(a, n);
        table.columns.insert(table.columns.end(), cols.begin(), cols.end());
    }

    QuantumState state = initial_state(reservoir, options);
    CMatrix rotated;
    Eigen::VectorXd row(width);
    for (std::size_t k = 0; k < series.size(); ++k) {
        state = reservoir.step(state, series[k]);
        for (int d = 0; d < 3; ++d) {
            rotated = state.matrix();
            rotate_to_measurement_frame(rotated, kAxes[d], n);
            extract_features_into(rotated, n, row);
            table.rows.block(static_cast<Index>(k), d * width, 1, width) = row.transpose();
        }
    }
    return table;
}

FeatureTable run_rsp(const TimeSeries& series, const ReservoirSpec& spec, const TrajectoryOptions& options) {
    return run_rsp(series, Reservoir(spec), options);
}

FeatureTable run_olp_direction(const TimeSeries& series, const Reservoir& reservoir, Axis axis,
                               const BackActionMask& mask, const TrajectoryOptions& options) {
    series.validate();
    const int n = reservoir.n_spins();
    if (mask.n_spins != n || mask.mask.rows() != (Index{1} << n))
        throw std::invalid_argument("mask does not match the reservoir size");
    const int width = features_per_direction(n);
    FeatureTable table;
    table.washout = options.washout;
    table.columns = direction_columns(axis, n);
    table.rows.resize(static_cast<Index>(series.size()), width);

    // The back-action is applied as rho += R^dag ((M - 1) (.) R rho R^dag) R,
    // which equals rotate / mask / rotate back, and leaves rho bit-identical
    // when M is all ones.
    const CMatrix damping = (mask.mask.array() - 1.0).matrix().cast<cplx>();

    QuantumState state = initial_state(reservoir, options);
    CMatrix rotated;
    Eigen::VectorXd row(width);
    for (std::size_t k = 0; k < series.size(); ++k) {
        state = reservoir.step(state, series[k]);
        rotated = state.matrix();
        rotate_to_measurement_frame(rotated, axis, n);
        extract_features_into(rotated, n, row);
        table.rows.row(static_cast<Index>(k)) = row.transpose();

        CMatrix delta = rotated.cwiseProduct(damping);
        rotate_from_measurement_frame(delta, axis, n);
        state.mutable_matrix() += delta;
    }
    return table;
}

FeatureTable run_olp(const TimeSeries& series, const Reservoir& reservoir, double g,
                     const TrajectoryOptions& options) {
    if (!options.mask_override) {
        if (!(g >= 0.0)) throw std::invalid_argument("measurement strength g must be non-negative");
        if (g == 0.0)
            throw std::invalid_argument("OLP with g = 0 extracts no information; use run_rsp for the undisturbed model");
    }
    const BackActionMask mask = options.mask_override ? *options.mask_override : backaction_mask(g, reservoir.n_spins());
    std::vector<FeatureTable> passes;
    for (Axis a : kAxes) passes.push_back(run_olp_direction(series, reservoir, a, mask, options));
    return FeatureTable::hconcat(passes);
}

FeatureTable run_olp(const TimeSeries& series, const ReservoirSpec& spec, double g, const TrajectoryOptions& options) {
    return run_olp(series, Reservoir(spec), g, options);
}

FeedbackSpec FeedbackSpec::brick_wall(int n_spins, double a_fb) {
    FeedbackSpec fb;
    fb.a_fb = a_fb;
    for (int i = 0; i + 1 < n_spins; i += 2) fb.pattern.emplace_back(i, i + 1);
    for (int i = 1; i + 1 < n_spins; i += 2) fb.pattern.emplace_back(i, i + 1);
    return fb;
}

void FeedbackSpec::validate(int n_spins) const {
    for (auto [i, j] : pattern) {
        if (i < 0 || j < 0 || i >= n_spins || j >= n_spins || i == j)
            throw std::invalid_argument("feedback module (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") is not a pair of distinct qubits");
    }
    if (!std::isfinite(a_fb)) throw std::invalid_argument("feedback strength must be finite");
}

namespace {

Eigen::Matrix2cd rx(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Eigen::Matrix2cd m;
    m << c, cplx(0, -s), cplx(0, -s), c;
    return m;
}

Eigen::Matrix2cd rz(double theta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, -theta / 2);
    m(1, 1) = std::polar(1.0, theta / 2);
    return m;
}

void apply_cx(CVector& psi, int control, int target, int n) {
    const Index cb = site_bit(control, n), tb = site_bit(target, n);
    for (Index a = 0; a < psi.size(); ++a) {
        if ((a & cb) && !(a & tb)) std::swap(psi(a), psi(a | tb));
    }
}

void apply_module(CVector& psi, int control, int target, double theta, int n) {
    apply_cx(psi, control, target, n);
    apply_local_gate(psi, rz(theta), target, n);
    apply_cx(psi, control, target, n);
    apply_local_gate(psi, rx(theta), target, n);
    apply_local_gate(psi, rx(theta), control, n);
}

}  // namespace

Eigen::Matrix4cd feedback_module(double theta) {
    CMatrix cols = CMatrix::Identity(4, 4);
    for (Index c = 0; c < 4; ++c) {
        CVector v = cols.col(c);
        apply_module(v, 0, 1, theta, 2);
        cols.col(c) = v;
    }
    return cols;
}

OperatorMatrix feedback_layer(const Eigen::VectorXd& expectations, const FeedbackSpec& fb, int n_spins) {
    check_spin_count(n_spins);
    fb.validate(n_spins);
    if (expectations.size() != n_spins) throw std::invalid_argument("need one expectation value per spin");
    const Index dim = Index{1} << n_spins;
    CMatrix u = CMatrix::Identity(dim, dim);
    CVector col(dim);
    for (Index c = 0; c < dim; ++c) {
        col = u.col(c);
        for (auto [i, j] : fb.pattern) apply_module(col, i, j, fb.a_fb * expectations(i), n_spins);
        u.col(c) = col;
    }
    return {std::move(u), false};
}

FeatureTable run_feedback(const TimeSeries& series, const Reservoir& reservoir, const FeedbackSpec& fb,
                          const TrajectoryOptions& options) {
    series.validate();
    const int n = reservoir.n_spins();
    fb.validate(n);
    const Index dim = Index{1} << n;
    const int input = reservoir.spec().input_site;

    FeatureTable table;
    table.washout = options.washout;
    for (Axis a : kAxes) {
        auto cols = direction_singles(a, n);
        table.columns.insert(table.columns.end(), cols.begin(), cols.end());
    }
    table.rows.resize(static_cast<Index>(series.size()), 3 * n);

    Eigen::VectorXd previous = Eigen::VectorXd::Zero(n);  // no measurement before the first input
    CVector psi(dim), rotated(dim);
    Eigen::VectorXd singles(n);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const Eigen::Vector2d amp = encode_input(series[k]);
        psi.setZero();
        psi(0) = amp(0);
        psi(site_bit(input, n)) = amp(1);
        for (auto [i, j] : fb.pattern) apply_module(psi, i, j, fb.a_fb * previous(i), n);
        psi = reservoir.unitary().mat * psi;

        for (int d = 0; d < 3; ++d) {
            rotated = psi;
            const Eigen::Matrix2cd rot = axis_rotation(kAxes[d]);
            if (kAxes[d] != Axis::z)
                for (int site = 0; site < n; ++site) apply_local_gate(rotated, rot, site, n);
            singles.setZero();
            for (Index a = 0; a < dim; ++a) {
                const double p = std::norm(rotated(a));
                for (int i = 0; i < n; ++i) singles(i) += (a & site_bit(i, n)) ? -p : p;
            }
            table.rows.block(static_cast<Index>(k), d * n, 1, n) = singles.transpose();
            if (kAxes[d] == fb.feedback_axis) previous = singles;
        }
    }
    return table;
}

FeatureTable run_feedback(const TimeSeries& series, const ReservoirSpec& spec, const FeedbackSpec& fb,
                          const TrajectoryOptions& options) {
    return run_feedback(series, Reservoir(spec), fb, options);
}

}  // namespace qrc
