#pragma once

// Trajectory drivers for the three processing protocols.
//
//  - RSP: disturbance-free trajectory, every observable read from rho_k.
//  - OLP: one trajectory per measured direction; after each input the state
//    is dephased along that direction with strength g.
//  - feedback: reset after every input, classical memory re-injected through
//    a layer of parameterized two-qubit modules.

#include "qrc/measurement.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/timeseries.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrc {

enum class ColumnKind { single, pair, variance };

struct Column {
    Axis axis = Axis::z;
    ColumnKind kind = ColumnKind::single;
    int i = 0;
    int j = -1;

    /// e.g. "z3", "x0x4", "var_y2"
    std::string name() const;
    bool operator==(const Column&) const = default;
};

/// Column layout of one direction: singles, pairs (i<j), variances.
std::vector<Column> direction_columns(Axis axis, int n_spins);
std::vector<Column> direction_singles(Axis axis, int n_spins);

/// K x F table of expectation values, one row per input.
struct FeatureTable {
    Eigen::MatrixXd rows;
    std::vector<Column> columns;
    int washout = 20;

    Index n_rows() const { return rows.rows(); }
    Index n_cols() const { return rows.cols(); }

    /// Keeps only the columns measured along `axis`.
    FeatureTable select(Axis axis) const;
    FeatureTable select(const std::function<bool(const Column&)>& keep) const;

    /// Column-wise concatenation; row counts must match.
    static FeatureTable hconcat(const std::vector<FeatureTable>& parts);
};

struct TrajectoryOptions {
    /// Defaults to |0...0>.
    std::optional<QuantumState> initial_state;
    /// Replaces the strength-g mask in run_olp (e.g. all ones).
    std::optional<BackActionMask> mask_override;
    int washout = 20;
};

FeatureTable run_rsp(const TimeSeries& series, const Reservoir& reservoir, const TrajectoryOptions& options = {});
FeatureTable run_rsp(const TimeSeries& series, const ReservoirSpec& spec, const TrajectoryOptions& options = {});

/// Single OLP pass measuring along `axis`; returns that direction's columns.
FeatureTable run_olp_direction(const TimeSeries& series, const Reservoir& reservoir, Axis axis,
                               const BackActionMask& mask, const TrajectoryOptions& options = {});

/// Three independent passes (x, y, z) concatenated. g must be > 0 unless a
/// mask override is supplied.
FeatureTable run_olp(const TimeSeries& series, const Reservoir& reservoir, double g,
                     const TrajectoryOptions& options = {});
FeatureTable run_olp(const TimeSeries& series, const ReservoirSpec& spec, double g,
                     const TrajectoryOptions& options = {});

struct FeedbackSpec {
    double a_fb = 0.0;
    /// Modules applied in order; (control, target).
    std::vector<std::pair<int, int>> pattern;
    Axis feedback_axis = Axis::z;

    /// (0,1),(2,3),... followed by (1,2),(3,4),...
    static FeedbackSpec brick_wall(int n_spins, double a_fb);

    void validate(int n_spins) const;
};

/// R(theta) = RX_c RX_t CX RZ_t CX on (control, target) as a 4x4 matrix with
/// the control as the high bit.
Eigen::Matrix4cd feedback_module(double theta);

/// Product of modules over the pattern, module (i, j) using
/// theta = a_fb * expectations(i).
OperatorMatrix feedback_layer(const Eigen::VectorXd& expectations, const FeedbackSpec& fb, int n_spins);

/// Output has 3N single-spin columns (x, y, z).
FeatureTable run_feedback(const TimeSeries& series, const Reservoir& reservoir, const FeedbackSpec& fb,
                          const TrajectoryOptions& options = {});
FeatureTable run_feedback(const TimeSeries& series, const ReservoirSpec& spec, const FeedbackSpec& fb,
                          const TrajectoryOptions& options = {});

}  // namespace qrc
