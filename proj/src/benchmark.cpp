#include "qrc/benchmark.hpp"

#include "qrc/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace qrc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

TimeSeries load_santafe(const std::filesystem::path& path, std::size_t length) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Santa Fe data file '" + path.string() + "'");
    std::vector<double> raw;
    raw.reserve(length);
    std::string line;
    std::size_t line_no = 0;
    while (raw.size() < length && std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value))
            throw std::runtime_error("non-numeric value on line " + std::to_string(line_no) + " of '" +
                                     path.string() + "'");
        raw.push_back(value);
    }
    if (raw.size() < length)
        throw std::runtime_error("Santa Fe data file '" + path.string() + "' has " + std::to_string(raw.size()) +
                                 " values, need " + std::to_string(length));
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const double min = *lo, range = *hi - *lo;
    if (!(range > 0.0)) throw std::runtime_error("Santa Fe data is constant; cannot normalize");
    TimeSeries series;
    series.origin = SeriesOrigin::santafe;
    series.values.reserve(raw.size());
    for (double v : raw) series.values.push_back(std::clamp((v - min) / range, 0.0, 1.0));
    return series;
}

TimeSeries gen_memory_series(std::uint64_t seed, std::size_t length) {
    Engine engine = make_engine(derive_seed(seed, {seed_tag::series}));
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    TimeSeries series;
    series.origin = SeriesOrigin::uniform_random;
    series.values.resize(length);
    for (double& v : series.values) v = dist(engine);
    return series;
}

TaskKind parse_task(std::string_view text) {
    if (text == "forward") return TaskKind::forward;
    if (text == "memory") return TaskKind::memory;
    throw std::invalid_argument("unknown task '" + std::string(text) + "' (expected forward or memory)");
}

std::string task_name(TaskKind kind) { return kind == TaskKind::forward ? "forward" : "memory"; }

int default_eta_max(TaskKind kind) { return kind == TaskKind::forward ? 10 : 25; }

void TaskSpec::validate() const {
    if (eta_max < 1) throw std::invalid_argument("eta_max must be at least 1");
    if (eta < 1 || eta > eta_max)
        throw std::invalid_argument("eta must be in [1, eta_max], got " + std::to_string(eta));
}

AlignedTargets make_target(const TimeSeries& series, const TaskSpec& task) {
    task.validate();
    const auto k = static_cast<Index>(series.size());
    if (task.eta >= k) throw std::invalid_argument("eta must be smaller than the series length");
    AlignedTargets out;
    if (task.kind == TaskKind::forward) {
        out.first_row = 0;
        out.values.assign(series.values.begin() + task.eta, series.values.end());
    } else {
        out.first_row = task.eta;
        out.values.assign(series.values.begin(), series.values.end() - task.eta);
    }
    return out;
}

Eigen::VectorXd Readout::predict(const Eigen::MatrixXd& features) const {
    if (features.cols() != weights.size()) throw std::invalid_argument("feature width does not match readout");
    return (features * weights).array() + intercept;
}

Readout train_readout(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets) {
    if (features.rows() != targets.size()) throw std::invalid_argument("features and targets are not aligned");
    const Index f = features.cols();
    if (features.rows() < f + 1)
        throw std::invalid_argument("ill-posed readout: " + std::to_string(features.rows()) + " rows for " +
                                    std::to_string(f) + " features plus intercept");
    Eigen::MatrixXd design(features.rows(), f + 1);
    design.leftCols(f) = features;
    design.col(f).setOnes();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    const Eigen::VectorXd solution = svd.solve(targets);
    Readout r;
    r.weights = solution.head(f);
    r.intercept = solution(f);
    r.rank = svd.rank();
    return r;
}

double capacity(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets) {
    if (predictions.size() != targets.size()) throw std::invalid_argument("predictions and targets differ in length");
    if (predictions.size() < 2) throw std::invalid_argument("capacity needs at least two samples");
    const Eigen::ArrayXd p = predictions.array() - predictions.mean();
    const Eigen::ArrayXd t = targets.array() - targets.mean();
    const double var_p = p.square().sum(), var_t = t.square().sum();
    if (!(var_p > 0.0) || !(var_t > 0.0)) return 0.0;
    const double cov = (p * t).sum();
    return std::clamp(cov * cov / (var_p * var_t), 0.0, 1.0);
}

double sum_capacity(const std::vector<double>& capacities) {
    double total = 0.0;
    for (double c : capacities) total += c;
    return total;
}

double performance_ratio(double olp_sum, double rsp_best_sum) {
    if (!(rsp_best_sum > 0.0)) throw std::invalid_argument("performance ratio undefined for a zero RSP capacity");
    return olp_sum / rsp_best_sum;
}

double evaluate_subtask(const FeatureTable& table, const TimeSeries& series, const TaskSpec& task) {
    if (table.n_rows() != static_cast<Index>(series.size()))
        throw std::invalid_argument("feature table and series differ in length");
    const AlignedTargets aligned = make_target(series, task);
    const Index last = aligned.first_row + static_cast<Index>(aligned.values.size());  // exclusive
    const Index first = std::max<Index>(aligned.first_row, table.washout);
    const Index count = last - first;
    if (count < 4) throw std::invalid_argument("too few rows left after washout");
    const auto n_train = static_cast<Index>(std::floor(kTrainFraction * static_cast<double>(count)));
    const Index n_test = count - n_train;

    Eigen::VectorXd target(count);
    for (Index i = 0; i < count; ++i) target(i) = aligned.values[static_cast<std::size_t>(first - aligned.first_row + i)];
    const Readout readout = train_readout(table.rows.middleRows(first, n_train), target.head(n_train));
    const Eigen::VectorXd predicted = readout.predict(table.rows.middleRows(first + n_train, n_test));
    return capacity(predicted, target.tail(n_test));
}

CapacityReport evaluate_task(const FeatureTable& table, const TimeSeries& series, TaskKind kind, int eta_max) {
    CapacityReport report;
    report.capacities.reserve(static_cast<std::size_t>(eta_max));
    for (int eta = 1; eta <= eta_max; ++eta)
        report.capacities.push_back(evaluate_subtask(table, series, {kind, eta, eta_max}));
    report.sum_capacity = sum_capacity(report.capacities);
    return report;
}

}  // namespace qrc
