#include "qrc/sweep.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace qrc;

namespace {

SweepConfig tiny_config() {
    SweepConfig c;
    c.task = TaskKind::memory;
    c.eta_max = 5;
    c.series_length = 120;
    c.washout = 20;
    c.n_spins = 4;
    c.g_grid = {0.3, 1.0};
    c.h_grid = {0.1, 0.5};
    c.realizations = 2;
    c.master_seed = 11;
    c.threads = 1;
    return c;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("qrc_sweep_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

}  // namespace

TEST(log_grid, endpoints_and_ratio) {
    const auto g = log_grid(0.03, 3.0, 33);
    ASSERT_EQ(g.size(), 33u);
    EXPECT_DOUBLE_EQ(g.front(), 0.03);
    EXPECT_DOUBLE_EQ(g.back(), 3.0);
    for (std::size_t i = 2; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-12);
    EXPECT_THROW(log_grid(0.0, 1.0, 3), std::invalid_argument);
}

TEST(sweep_config, presets) {
    const SweepConfig paper = SweepConfig::paper(TaskKind::forward);
    EXPECT_EQ(paper.g_grid.size(), 33u);
    EXPECT_EQ(paper.h_grid.size(), 40u);
    EXPECT_EQ(paper.realizations, 50);
    EXPECT_EQ(paper.eta_max, 10);
    EXPECT_EQ(paper.series_length, 2000);
    const SweepConfig desk = SweepConfig::desk();
    EXPECT_EQ(desk.series_length, 300);
    EXPECT_EQ(desk.g_grid.size(), 5u);
    EXPECT_NO_THROW(desk.validate());
}

TEST(parse_config, values_comments_and_logspace) {
    std::istringstream in(
        "# desk sweep\n"
        "task = memory\n"
        "K = 200   # alias\n"
        "g_grid = 0.1, 0.5,1\n"
        "h_grid = logspace(0.01, 1, 3)\n"
        "realizations = 3\n"
        "shot_mode = finite\n"
        "n_shots_olp = 1e5\n"
        "direction_filter = z\n"
        "master_seed = 99\n");
    const SweepConfig c = parse_config(in);
    EXPECT_EQ(c.series_length, 200);
    EXPECT_EQ(c.g_grid, (std::vector<double>{0.1, 0.5, 1.0}));
    ASSERT_EQ(c.h_grid.size(), 3u);
    EXPECT_NEAR(c.h_grid[1], 0.1, 1e-15);
    EXPECT_EQ(c.realizations, 3);
    EXPECT_EQ(c.shot_mode, ShotMode::finite);
    EXPECT_EQ(c.n_shots_olp, 1e5);
    EXPECT_EQ(c.direction_filter, DirectionFilter::z);
    EXPECT_EQ(c.master_seed, 99u);
    EXPECT_EQ(c.eta_max, 25);
}

TEST(parse_config, round_trip_through_format) {
    const SweepConfig c = tiny_config();
    std::istringstream in(format_config(c));
    const SweepConfig back = parse_config(in);
    EXPECT_EQ(back.g_grid, c.g_grid);
    EXPECT_EQ(back.h_grid, c.h_grid);
    EXPECT_EQ(back.series_length, c.series_length);
    EXPECT_EQ(back.eta_max, c.eta_max);
    EXPECT_EQ(back.master_seed, c.master_seed);
}

TEST(parse_config, errors) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in);
    };
    EXPECT_THROW(parse("bogus = 1\n"), std::invalid_argument);
    EXPECT_THROW(parse("realizations\n"), std::invalid_argument);
    EXPECT_THROW(parse("realizations = two\n"), std::invalid_argument);
    EXPECT_THROW(parse("g_grid = 1, 0.5\n"), std::invalid_argument);
    EXPECT_THROW(parse("h_grid = 0, 1\n"), std::invalid_argument);
    EXPECT_THROW(parse("shot_mode = some\n"), std::invalid_argument);
    EXPECT_THROW(parse("task = narma\n"), std::invalid_argument);
    EXPECT_THROW(parse("K = 30\n"), std::invalid_argument);
    EXPECT_THROW(load_config("/nonexistent/qrc.cfg"), std::runtime_error);
}

TEST(realization_spec, couplings_shared_across_fields) {
    const SweepConfig c = tiny_config();
    const ReservoirSpec a = realization_spec(c, 0, 0.1), b = realization_spec(c, 0, 0.5);
    EXPECT_EQ(a.couplings, b.couplings);
    EXPECT_NE(realization_spec(c, 1, 0.1).couplings, a.couplings);
}

TEST(run_sweep, shapes_and_outputs) {
    const SweepConfig c = tiny_config();
    const SweepResult res = run_sweep(c);
    EXPECT_EQ(res.records.size(), 2u * 2 + 2u * 2 * 2);
    EXPECT_EQ(res.records.front().protocol, "rsp");
    EXPECT_EQ(res.records.back().protocol, "olp");
    ASSERT_EQ(res.aggregates.size(), 4u);
    EXPECT_EQ(res.rsp_mean.size(), 2u);
    EXPECT_GT(res.rsp_best_sum, 0.0);
    for (const auto& rec : res.records) {
        EXPECT_EQ(rec.capacities.size(), 5u);
        EXPECT_NEAR(rec.sum_capacity, sum_capacity(rec.capacities), 1e-12);
    }

    const auto dir = fresh_dir("shapes");
    emit_results(res, dir);
    const auto cells = read_csv(dir / "cells.csv");
    ASSERT_EQ(cells.size(), res.records.size() + 1);
    EXPECT_EQ(cells[0], (std::vector<std::string>{"task", "protocol", "g", "h", "realization", "sum_capacity"}));
    const auto agg = read_csv(dir / "aggregate.csv");
    ASSERT_EQ(agg.size(), 5u);
    EXPECT_EQ(agg[0], (std::vector<std::string>{"g", "h", "mean_PR", "std_PR"}));

    std::ifstream json_in(dir / "summary.json");
    const nlohmann::json summary = nlohmann::json::parse(json_in);
    EXPECT_EQ(summary["config"]["master_seed"].get<std::uint64_t>(), c.master_seed);
    const double best_pr = summary["olp_best"]["P_R"].get<double>();
    double csv_best = 0.0;
    for (std::size_t i = 1; i < agg.size(); ++i) {
        const double pr = std::stod(agg[i][2]);
        csv_best = std::max(csv_best, pr);
        EXPECT_NEAR(pr, res.aggregates[i - 1].mean_pr, 1e-12);
    }
    EXPECT_NEAR(csv_best, best_pr, 1e-12);
    EXPECT_NEAR(summary["rsp_best"]["sum_capacity"].get<double>(), res.rsp_best_sum, 1e-12);
    EXPECT_TRUE(std::filesystem::exists(dir / "capacities_rsp_best.csv"));
    EXPECT_EQ(read_csv(dir / "capacities_olp_best.csv").size(), 6u);
    std::filesystem::remove_all(dir);
}

TEST(run_sweep, deterministic_across_thread_counts) {
    SweepConfig c = tiny_config();
    c.g_grid = {0.5};
    c.shot_mode = ShotMode::finite;
    c.n_shots_olp = 1e5;
    const SweepResult a = run_sweep(c);
    c.threads = 3;
    const SweepResult b = run_sweep(c);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].capacities, b.records[i].capacities);
    EXPECT_EQ(a.best_pr, b.best_pr);
    c.master_seed = 12;
    EXPECT_NE(run_sweep(c).best_pr, a.best_pr);
}

TEST(run_sweep, zero_strength_cell_is_zero) {
    SweepConfig c = tiny_config();
    c.g_grid = {0.0, 0.5};
    c.h_grid = {0.3};
    const SweepResult res = run_sweep(c);
    EXPECT_EQ(res.aggregate(0, 0).mean_pr, 0.0);
    EXPECT_EQ(res.aggregate(0, 0).std_pr, 0.0);
    EXPECT_GT(res.aggregate(1, 0).mean_pr, 0.0);
}

TEST(direction_filter, single_pass_equals_columns_of_full_run) {
    const SweepConfig c = tiny_config();
    const TimeSeries series = sweep_series(c);
    const Reservoir reservoir(realization_spec(c, 0, 0.3));
    const FeatureTable full = run_olp(series, reservoir, 0.5);
    for (Axis axis : kAxes) {
        const FeatureTable one = run_olp_direction(series, reservoir, axis, backaction_mask(0.5, 4));
        EXPECT_EQ(one.rows, full.select(axis).rows);
    }
    EXPECT_EQ(parse_filter("z"), DirectionFilter::z);
    EXPECT_EQ(filter_axis(DirectionFilter::all), std::nullopt);
    EXPECT_THROW(parse_filter("w"), std::invalid_argument);
}

TEST(sweep_series, forward_needs_data_file) {
    SweepConfig c = tiny_config();
    c.task = TaskKind::forward;
    c.santafe_path = "/nonexistent/santafe.dat";
    EXPECT_THROW(sweep_series(c), std::runtime_error);
}

TEST(compare_feedback, small_run) {
    FeedbackComparisonConfig c;
    c.n_spins = 4;
    c.series_length = 120;
    c.eta_max = 4;
    c.realizations = 2;
    c.a_fb_grid = {0.0, 0.63};
    c.threads = 1;
    const FeedbackComparison cmp = compare_feedback(c);
    EXPECT_EQ(cmp.feedback_mean_sum.size(), 2u);
    EXPECT_EQ(cmp.feedback_best_capacities.size(), 2u);
    EXPECT_EQ(cmp.olp_mean.size(), 4u);
    EXPECT_EQ(cmp.best_a_fb, c.a_fb_grid[static_cast<std::size_t>(cmp.best_index)]);
    c.a_fb_grid.clear();
    EXPECT_THROW(compare_feedback(c), std::invalid_argument);
}
