#include "qrc/sweep.hpp"

#include "qrc/parallel.hpp"
#include "qrc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qrc {

std::string filter_name(DirectionFilter filter) {
    switch (filter) {
        case DirectionFilter::all: return "all";
        case DirectionFilter::x: return "x";
        case DirectionFilter::y: return "y";
        case DirectionFilter::z: return "z";
    }
    return "all";
}

DirectionFilter parse_filter(std::string_view text) {
    if (text == "all") return DirectionFilter::all;
    if (text == "x") return DirectionFilter::x;
    if (text == "y") return DirectionFilter::y;
    if (text == "z") return DirectionFilter::z;
    throw std::invalid_argument("unknown direction filter '" + std::string(text) + "' (expected all, x, y or z)");
}

std::optional<Axis> filter_axis(DirectionFilter filter) {
    switch (filter) {
        case DirectionFilter::x: return Axis::x;
        case DirectionFilter::y: return Axis::y;
        case DirectionFilter::z: return Axis::z;
        case DirectionFilter::all: break;
    }
    return std::nullopt;
}

static DirectionFilter axis_filter(Axis axis) {
    switch (axis) {
        case Axis::x: return DirectionFilter::x;
        case Axis::y: return DirectionFilter::y;
        case Axis::z: return DirectionFilter::z;
    }
    return DirectionFilter::all;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 1) throw std::invalid_argument("log grid needs 0 < lo < hi and count >= 1");
    if (count == 1) return {lo};
    std::vector<double> grid(static_cast<std::size_t>(count));
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    grid.back() = hi;
    return grid;
}

SweepConfig SweepConfig::paper(TaskKind task) {
    SweepConfig c;
    c.task = task;
    c.eta_max = default_eta_max(task);
    c.series_length = task == TaskKind::forward ? static_cast<long>(kSantaFeLength) : static_cast<long>(kMemoryLength);
    c.g_grid = log_grid(0.03, 3.0, 33);
    c.h_grid = log_grid(0.01, 40.0, 40);
    c.realizations = 50;
    return c;
}

SweepConfig SweepConfig::desk() {
    SweepConfig c;
    c.task = TaskKind::memory;
    c.eta_max = default_eta_max(TaskKind::memory);
    c.series_length = 300;
    c.g_grid = {0.1, 0.26, 0.5, 1.0, 2.0};
    c.h_grid = {0.03, 0.066, 0.1, 0.3, 1.0};
    c.realizations = 5;
    return c;
}

static void check_grid(const std::vector<double>& grid, const char* name, bool allow_zero) {
    if (grid.empty()) throw std::invalid_argument(std::string(name) + " is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = grid[i];
        if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0))
            throw std::invalid_argument(std::string(name) + " has an invalid value");
        if (i > 0 && !(v > grid[i - 1])) throw std::invalid_argument(std::string(name) + " must be strictly increasing");
    }
}

void SweepConfig::validate() const {
    check_grid(g_grid, "g_grid", true);
    check_grid(h_grid, "h_grid", false);
    if (realizations < 1) throw std::invalid_argument("realizations must be at least 1");
    if (eta_max < 1) throw std::invalid_argument("eta_max must be at least 1");
    if (washout < 0) throw std::invalid_argument("washout must be non-negative");
    if (series_length <= washout + eta_max) throw std::invalid_argument("series too short for washout and eta_max");
    if (n_spins < 2) throw std::invalid_argument("n_spins must be at least 2");
    check_spin_count(n_spins);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (shot_mode == ShotMode::finite && !(n_shots_olp > 0.0)) throw std::invalid_argument("n_shots_olp must be positive");
}

double SweepConfig::n_shots_rsp() const { return shots_rsp_equivalent(n_shots_olp, series_length, washout); }

const CellAggregate& SweepResult::aggregate(int g_index, int h_index) const {
    return aggregates.at(static_cast<std::size_t>(g_index) * config.h_grid.size() + static_cast<std::size_t>(h_index));
}

std::vector<double> SweepResult::mean_capacities(const std::string& protocol, int g_index, int h_index) const {
    std::vector<double> mean(static_cast<std::size_t>(config.eta_max), 0.0);
    int count = 0;
    for (const auto& r : records) {
        if (r.protocol != protocol || r.g_index != g_index || r.h_index != h_index) continue;
        if (r.capacities.size() != mean.size()) continue;
        for (std::size_t e = 0; e < mean.size(); ++e) mean[e] += r.capacities[e];
        ++count;
    }
    if (count == 0) throw std::out_of_range("no records for the requested cell");
    for (double& m : mean) m /= count;
    return mean;
}

TimeSeries sweep_series(const SweepConfig& config) {
    const auto length = static_cast<std::size_t>(config.series_length);
    if (config.task == TaskKind::memory) return gen_memory_series(config.master_seed, length);
    std::string path = config.santafe_path;
    if (path.empty()) {
        if (const char* env = std::getenv("QRC_SANTAFE_PATH")) path = env;
    }
    if (path.empty()) throw std::invalid_argument("forward task needs santafe_path or QRC_SANTAFE_PATH");
    return load_santafe(path, length);
}

ReservoirSpec realization_spec(const SweepConfig& config, int realization, double field_h) {
    return ReservoirSpec::random(config.n_spins, field_h,
                                 derive_seed(config.master_seed, {static_cast<std::uint64_t>(realization)}), config.dt);
}

namespace {

FeatureTable filtered(const FeatureTable& table, DirectionFilter filter) {
    const auto axis = filter_axis(filter);
    return axis ? table.select(*axis) : table;
}

CapacityReport score(const FeatureTable& table, const TimeSeries& series, const SweepConfig& config) {
    return evaluate_task(table, series, config.task, config.eta_max);
}

}  // namespace

SweepResult sweep_rsp(const SweepConfig& config) {
    config.validate();
    const TimeSeries series = sweep_series(config);
    const std::size_t n_h = config.h_grid.size();
    const auto n_r = static_cast<std::size_t>(config.realizations);

    SweepResult result;
    result.config = config;
    result.records.resize(n_h * n_r);
    parallel_for(n_h * n_r, config.threads, [&](std::size_t unit) {
        const auto hi = static_cast<int>(unit / n_r), r = static_cast<int>(unit % n_r);
        const double h = config.h_grid[static_cast<std::size_t>(hi)];
        TrajectoryOptions opts;
        opts.washout = config.washout;
        FeatureTable table = run_rsp(series, Reservoir(realization_spec(config, r, h)), opts);
        if (config.shot_mode == ShotMode::finite) {
            table = apply_shot_noise(table, kProjective, config.n_shots_rsp(),
                                     derive_seed(config.master_seed, {seed_tag::noise_rsp, std::uint64_t(hi), std::uint64_t(r)}));
        }
        const CapacityReport report = score(filtered(table, config.direction_filter), series, config);
        result.records[unit] = {"rsp", -1, hi, 0.0, h, r, report.sum_capacity, report.capacities};
    });

    result.rsp_mean.assign(n_h, 0.0);
    for (const auto& rec : result.records) result.rsp_mean[static_cast<std::size_t>(rec.h_index)] += rec.sum_capacity;
    for (double& m : result.rsp_mean) m /= static_cast<double>(n_r);
    const auto best = std::max_element(result.rsp_mean.begin(), result.rsp_mean.end());
    result.rsp_best_index = static_cast<int>(best - result.rsp_mean.begin());
    result.rsp_best_h = config.h_grid[static_cast<std::size_t>(result.rsp_best_index)];
    result.rsp_best_sum = *best;
    return result;
}

SweepResult sweep_olp(const SweepConfig& config, double rsp_best) {
    config.validate();
    if (!(rsp_best > 0.0)) throw std::invalid_argument("best RSP sum capacity must be positive");
    const TimeSeries series = sweep_series(config);
    const std::size_t n_g = config.g_grid.size(), n_h = config.h_grid.size();
    const auto n_r = static_cast<std::size_t>(config.realizations);
    const auto axis = filter_axis(config.direction_filter);

    SweepResult result;
    result.config = config;
    result.rsp_best_sum = rsp_best;
    result.records.resize(n_g * n_h * n_r);
    parallel_for(result.records.size(), config.threads, [&](std::size_t unit) {
        const auto gi = static_cast<int>(unit / (n_h * n_r));
        const auto hi = static_cast<int>((unit / n_r) % n_h);
        const auto r = static_cast<int>(unit % n_r);
        const double g = config.g_grid[static_cast<std::size_t>(gi)], h = config.h_grid[static_cast<std::size_t>(hi)];
        CellRecord rec{"olp", gi, hi, g, h, r, 0.0, {}};
        if (g == 0.0) {
            rec.capacities.assign(static_cast<std::size_t>(config.eta_max), 0.0);
            result.records[unit] = std::move(rec);
            return;
        }
        TrajectoryOptions opts;
        opts.washout = config.washout;
        const Reservoir reservoir(realization_spec(config, r, h));
        FeatureTable table = axis ? run_olp_direction(series, reservoir, *axis, backaction_mask(g, config.n_spins), opts)
                                  : run_olp(series, reservoir, g, opts);
        if (config.shot_mode == ShotMode::finite) {
            table = apply_shot_noise(
                table, g, config.n_shots_olp,
                derive_seed(config.master_seed, {seed_tag::noise_olp, std::uint64_t(gi), std::uint64_t(hi), std::uint64_t(r)}));
        }
        const CapacityReport report = score(table, series, config);
        rec.sum_capacity = report.sum_capacity;
        rec.capacities = report.capacities;
        result.records[unit] = std::move(rec);
    });

    result.aggregates.reserve(n_g * n_h);
    for (std::size_t gi = 0; gi < n_g; ++gi) {
        for (std::size_t hi = 0; hi < n_h; ++hi) {
            const std::size_t base = (gi * n_h + hi) * n_r;
            double mean = 0.0;
            for (std::size_t r = 0; r < n_r; ++r) mean += performance_ratio(result.records[base + r].sum_capacity, rsp_best);
            mean /= static_cast<double>(n_r);
            double var = 0.0;
            for (std::size_t r = 0; r < n_r; ++r) {
                const double d = performance_ratio(result.records[base + r].sum_capacity, rsp_best) - mean;
                var += d * d;
            }
            var /= static_cast<double>(n_r);
            result.aggregates.push_back(
                {static_cast<int>(gi), static_cast<int>(hi), config.g_grid[gi], config.h_grid[hi], mean, std::sqrt(var)});
        }
    }
    const auto best = std::max_element(result.aggregates.begin(), result.aggregates.end(),
                                       [](const auto& a, const auto& b) { return a.mean_pr < b.mean_pr; });
    result.best_g = best->g;
    result.best_h = best->h;
    result.best_pr = best->mean_pr;
    return result;
}

SweepResult run_sweep(const SweepConfig& config) {
    SweepResult rsp = sweep_rsp(config);
    SweepResult olp = sweep_olp(config, rsp.rsp_best_sum);
    olp.records.insert(olp.records.begin(), rsp.records.begin(), rsp.records.end());
    olp.rsp_mean = std::move(rsp.rsp_mean);
    olp.rsp_best_index = rsp.rsp_best_index;
    olp.rsp_best_h = rsp.rsp_best_h;
    olp.rsp_best_sum = rsp.rsp_best_sum;
    return olp;
}

PerDirectionResult per_direction_optimize(const SweepConfig& config) {
    config.validate();
    PerDirectionResult out;
    for (Axis axis : kAxes) {
        SweepConfig sub = config;
        sub.direction_filter = axis_filter(axis);
        const SweepResult res = run_sweep(sub);
        out.directions.push_back({axis, res.rsp_best_h, res.rsp_best_sum, res.best_g, res.best_h, res.best_pr});
    }

    SweepConfig joint = config;
    joint.direction_filter = DirectionFilter::all;
    out.joint_rsp_best_sum = sweep_rsp(joint).rsp_best_sum;

    const TimeSeries series = sweep_series(config);
    const auto n_r = static_cast<std::size_t>(config.realizations);
    std::vector<CapacityReport> reports(n_r);
    parallel_for(n_r, config.threads, [&](std::size_t r) {
        std::vector<FeatureTable> parts;
        for (const auto& opt : out.directions) {
            TrajectoryOptions opts;
            opts.washout = config.washout;
            const Reservoir reservoir(realization_spec(config, static_cast<int>(r), opt.h));
            FeatureTable part = run_olp_direction(series, reservoir, opt.axis, backaction_mask(opt.g, config.n_spins), opts);
            if (config.shot_mode == ShotMode::finite) {
                part = apply_shot_noise(part, opt.g, config.n_shots_olp,
                                        derive_seed(config.master_seed, {seed_tag::noise_olp, 1000 + std::uint64_t(opt.axis),
                                                                         std::uint64_t(r)}));
            }
            parts.push_back(std::move(part));
        }
        reports[r] = evaluate_task(FeatureTable::hconcat(parts), series, config.task, config.eta_max);
    });
    out.combined_capacities.assign(static_cast<std::size_t>(config.eta_max), 0.0);
    for (const auto& rep : reports) {
        out.combined_sum += rep.sum_capacity / static_cast<double>(n_r);
        for (std::size_t e = 0; e < rep.capacities.size(); ++e)
            out.combined_capacities[e] += rep.capacities[e] / static_cast<double>(n_r);
    }
    out.combined_pr = performance_ratio(out.combined_sum, out.joint_rsp_best_sum);
    return out;
}

FeedbackComparison compare_feedback(const FeedbackComparisonConfig& config) {
    if (config.a_fb_grid.empty()) throw std::invalid_argument("a_fb grid is empty");
    if (config.realizations < 1) throw std::invalid_argument("realizations must be at least 1");
    SweepConfig base;
    base.task = config.task;
    base.eta_max = config.eta_max;
    base.series_length = config.series_length;
    base.washout = config.washout;
    base.n_spins = config.n_spins;
    base.dt = config.dt;
    base.master_seed = config.master_seed;
    base.santafe_path = config.santafe_path;
    const TimeSeries series = sweep_series(base);

    const std::size_t n_a = config.a_fb_grid.size();
    const auto n_r = static_cast<std::size_t>(config.realizations);
    // per realization: n_a feedback runs then one OLP run
    std::vector<CapacityReport> reports(n_r * (n_a + 1));
    parallel_for(reports.size(), config.threads, [&](std::size_t unit) {
        const auto r = static_cast<int>(unit / (n_a + 1));
        const std::size_t slot = unit % (n_a + 1);
        TrajectoryOptions opts;
        opts.washout = config.washout;
        FeatureTable table;
        if (slot < n_a) {
            const Reservoir reservoir(realization_spec(base, r, config.feedback_h));
            table = run_feedback(series, reservoir, FeedbackSpec::brick_wall(config.n_spins, config.a_fb_grid[slot]), opts);
        } else {
            table = run_olp(series, Reservoir(realization_spec(base, r, config.olp_h)), config.olp_g, opts);
        }
        reports[unit] = evaluate_task(table, series, config.task, config.eta_max);
    });

    FeedbackComparison out;
    out.a_fb_grid = config.a_fb_grid;
    out.feedback_mean_sum.assign(n_a, 0.0);
    for (std::size_t r = 0; r < n_r; ++r)
        for (std::size_t a = 0; a < n_a; ++a)
            out.feedback_mean_sum[a] += reports[r * (n_a + 1) + a].sum_capacity / static_cast<double>(n_r);
    out.best_index = static_cast<int>(std::max_element(out.feedback_mean_sum.begin(), out.feedback_mean_sum.end()) -
                                      out.feedback_mean_sum.begin());
    out.best_a_fb = config.a_fb_grid[static_cast<std::size_t>(out.best_index)];

    const auto n_eta = static_cast<std::size_t>(config.eta_max);
    out.feedback_best_mean.assign(n_eta, 0.0);
    out.olp_mean.assign(n_eta, 0.0);
    for (std::size_t r = 0; r < n_r; ++r) {
        const auto& fb = reports[r * (n_a + 1) + static_cast<std::size_t>(out.best_index)].capacities;
        const auto& olp = reports[r * (n_a + 1) + n_a].capacities;
        out.feedback_best_capacities.push_back(fb);
        out.olp_capacities.push_back(olp);
        for (std::size_t e = 0; e < n_eta; ++e) {
            out.feedback_best_mean[e] += fb[e] / static_cast<double>(n_r);
            out.olp_mean[e] += olp[e] / static_cast<double>(n_r);
        }
    }
    return out;
}

}  // namespace qrc
