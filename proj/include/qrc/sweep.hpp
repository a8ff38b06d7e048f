#pragma once

// (g, h) parameter sweeps over reservoir realizations.

#include "qrc/benchmark.hpp"
#include "qrc/resources.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qrc {

enum class ShotMode { infinite, finite };
enum class DirectionFilter { all, x, y, z };

std::string filter_name(DirectionFilter filter);
DirectionFilter parse_filter(std::string_view text);
std::optional<Axis> filter_axis(DirectionFilter filter);

/// Strictly increasing log-spaced grid with `count` points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

struct SweepConfig {
    TaskKind task = TaskKind::memory;
    int eta_max = 25;
    long series_length = 1000;
    int washout = 20;
    int n_spins = 6;
    double dt = 10.0;
    std::vector<double> g_grid;
    std::vector<double> h_grid;
    int realizations = 5;
    ShotMode shot_mode = ShotMode::infinite;
    double n_shots_olp = 1.5e6;
    DirectionFilter direction_filter = DirectionFilter::all;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;
    std::string santafe_path;

    /// 33 x 40 log grid, 50 realizations, full series lengths.
    static SweepConfig paper(TaskKind task);
    /// 5 x 5 grid, 5 realizations, K = 300, memory task.
    static SweepConfig desk();

    void validate() const;
    /// Shots for the RSP at equal experimental time (finite mode only).
    double n_shots_rsp() const;
};

/// Flat `key = value` text; `#` starts a comment. Grids are comma separated
/// lists or `logspace(lo, hi, count)`.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::filesystem::path& path);
std::string format_config(const SweepConfig& config);

struct CellRecord {
    std::string protocol;  // "rsp" or "olp"
    int g_index = -1;      // -1 for the RSP
    int h_index = 0;
    double g = 0.0;
    double h = 0.0;
    int realization = 0;
    double sum_capacity = 0.0;
    std::vector<double> capacities;
};

struct CellAggregate {
    int g_index = 0;
    int h_index = 0;
    double g = 0.0;
    double h = 0.0;
    double mean_pr = 0.0;
    double std_pr = 0.0;  // population standard deviation over realizations
};

struct SweepResult {
    SweepConfig config;
    std::vector<CellRecord> records;  // RSP first, then OLP, each in (g, h, realization) order
    std::vector<double> rsp_mean;     // per h
    int rsp_best_index = 0;
    double rsp_best_h = 0.0;
    double rsp_best_sum = 0.0;
    std::vector<CellAggregate> aggregates;  // (g, h) order
    double best_g = 0.0;
    double best_h = 0.0;
    double best_pr = 0.0;

    const CellAggregate& aggregate(int g_index, int h_index) const;
    /// Realization-mean capacity curve of a protocol at a grid cell.
    std::vector<double> mean_capacities(const std::string& protocol, int g_index, int h_index) const;
};

/// Input series of a sweep: generated for the memory task, loaded from
/// `santafe_path` (or QRC_SANTAFE_PATH) for forward prediction.
TimeSeries sweep_series(const SweepConfig& config);

/// Couplings of realization r; shared by every protocol and field value.
ReservoirSpec realization_spec(const SweepConfig& config, int realization, double field_h);

/// RSP sum capacity on every h, averaged over realizations; fills the RSP
/// fields and records.
SweepResult sweep_rsp(const SweepConfig& config);

/// OLP P_R on every (g, h) against `rsp_best`; g = 0 cells are defined as 0.
SweepResult sweep_olp(const SweepConfig& config, double rsp_best);

/// sweep_rsp followed by sweep_olp with its best value.
SweepResult run_sweep(const SweepConfig& config);

struct DirectionOptimum {
    Axis axis = Axis::z;
    double rsp_best_h = 0.0;
    double rsp_best_sum = 0.0;
    double g = 0.0;
    double h = 0.0;
    double pr = 0.0;
};

struct PerDirectionResult {
    std::vector<DirectionOptimum> directions;  // x, y, z
    double joint_rsp_best_sum = 0.0;
    double combined_sum = 0.0;  // mean over realizations
    double combined_pr = 0.0;
    std::vector<double> combined_capacities;
};

/// Optimizes (g, h) per measured direction, then scores the dataset built
/// from each direction's columns at its own optimum.
PerDirectionResult per_direction_optimize(const SweepConfig& config);

struct FeedbackComparisonConfig {
    TaskKind task = TaskKind::memory;
    int eta_max = 25;
    long series_length = 300;
    int washout = 20;
    int n_spins = 6;
    double dt = 10.0;
    double feedback_h = 10.0;
    std::vector<double> a_fb_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.63, 0.8, 1.0, 1.5};
    double olp_g = 0.355;
    double olp_h = 0.066;
    int realizations = 5;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;
    std::string santafe_path;
};

struct FeedbackComparison {
    std::vector<double> a_fb_grid;
    std::vector<double> feedback_mean_sum;  // per a_fb
    int best_index = 0;
    double best_a_fb = 0.0;
    std::vector<std::vector<double>> feedback_best_capacities;  // [realization][eta-1]
    std::vector<std::vector<double>> olp_capacities;            // [realization][eta-1]
    std::vector<double> feedback_best_mean;
    std::vector<double> olp_mean;
};

FeedbackComparison compare_feedback(const FeedbackComparisonConfig& config);

/// Writes cells.csv, aggregate.csv, summary.json, and capacities_rsp_best.csv
/// plus capacities_olp_best.csv into `dir`.
void emit_results(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace qrc
