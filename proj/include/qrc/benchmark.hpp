#pragma once

// Tasks, linear readout and capacity metrics.

#include "qrc/protocols.hpp"
#include "qrc/timeseries.hpp"

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace qrc {

inline constexpr std::size_t kSantaFeLength = 2000;
inline constexpr std::size_t kMemoryLength = 1000;
inline constexpr double kTrainFraction = 0.7;

/// First `length` values of a one-value-per-line file, min-max normalized.
TimeSeries load_santafe(const std::filesystem::path& path, std::size_t length = kSantaFeLength);

/// i.i.d. uniform values on [0, 1].
TimeSeries gen_memory_series(std::uint64_t seed, std::size_t length = kMemoryLength);

enum class TaskKind { forward, memory };

TaskKind parse_task(std::string_view text);
std::string task_name(TaskKind kind);

struct TaskSpec {
    TaskKind kind = TaskKind::memory;
    int eta = 1;
    int eta_max = 25;

    void validate() const;
};

/// Default sub-task count: 10 for forward prediction, 25 for memory.
int default_eta_max(TaskKind kind);

/// Targets paired with feature rows: values[i] is the target of row first_row + i.
struct AlignedTargets {
    Index first_row = 0;
    std::vector<double> values;
};

/// forward: t_k = s_{k+eta}; memory: t_k = s_{k-eta}. Rows without a target
/// are dropped. Throws if eta >= K or eta < 1.
AlignedTargets make_target(const TimeSeries& series, const TaskSpec& task);

/// Affine least-squares readout.
struct Readout {
    Eigen::VectorXd weights;
    double intercept = 0.0;
    Index rank = 0;

    Eigen::VectorXd predict(const Eigen::MatrixXd& features) const;
};

/// Least squares with intercept via an SVD pseudo-inverse (relative cutoff
/// 1e-10). Throws if there are fewer than F + 1 rows.
Readout train_readout(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets);

/// Squared Pearson correlation; 0 when either side has zero variance.
double capacity(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets);

double sum_capacity(const std::vector<double>& capacities);

/// OLP sum capacity over the best RSP sum capacity. Throws if rsp_best <= 0.
double performance_ratio(double olp_sum, double rsp_best_sum);

struct CapacityReport {
    std::vector<double> capacities;  // eta = 1..eta_max
    double sum_capacity = 0.0;
};

/// Per-eta readouts trained on the first 70% of the aligned post-washout rows
/// and scored on the remaining 30%.
double evaluate_subtask(const FeatureTable& table, const TimeSeries& series, const TaskSpec& task);
CapacityReport evaluate_task(const FeatureTable& table, const TimeSeries& series, TaskKind kind, int eta_max);

}  // namespace qrc
