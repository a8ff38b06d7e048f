#include "qrc/cli.hpp"

#include "qrc/checks.hpp"
#include "qrc/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>

namespace qrc {

namespace {

struct RunArgs {
    std::string task = "memory";
    std::string protocol = "olp";
    double g = 0.355;
    double h = 0.066;
    double a_fb = 0.63;
    double shots = 0.0;  // 0 = infinite
    int eta_max = 0;     // 0 = task default
    std::uint64_t seed = 1;
    long length = 0;  // 0 = task default
    int washout = 20;
    int n_spins = 6;
    double dt = 10.0;
    std::string santafe_file;
    std::string out;
};

struct SweepArgs {
    std::string config;
    std::string out_dir;
    int threads = -1;
    bool per_direction = false;
};

struct FeedbackArgs {
    FeedbackComparisonConfig config;
    std::string task = "memory";
    std::string out;
};

void write_json(const nlohmann::json& doc, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    out << doc.dump(2) << '\n';
}

std::string santafe_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("QRC_SANTAFE_PATH")) return env;
    return {};
}

int do_run(const RunArgs& a) {
    const TaskKind task = parse_task(a.task);
    const int eta_max = a.eta_max > 0 ? a.eta_max : default_eta_max(task);
    const long length = a.length > 0 ? a.length
                                     : static_cast<long>(task == TaskKind::forward ? kSantaFeLength : kMemoryLength);
    TimeSeries series;
    if (task == TaskKind::memory) {
        series = gen_memory_series(a.seed, static_cast<std::size_t>(length));
    } else {
        const std::string path = santafe_path(a.santafe_file);
        if (path.empty()) throw std::invalid_argument("forward task needs --santafe-file or QRC_SANTAFE_PATH");
        series = load_santafe(path, static_cast<std::size_t>(length));
    }
    const Reservoir reservoir(ReservoirSpec::random(a.n_spins, a.h, a.seed, a.dt));
    TrajectoryOptions opts;
    opts.washout = a.washout;

    FeatureTable table;
    double noise_g = kProjective;
    if (a.protocol == "rsp") {
        table = run_rsp(series, reservoir, opts);
    } else if (a.protocol == "olp") {
        table = run_olp(series, reservoir, a.g, opts);
        noise_g = a.g;
    } else if (a.protocol == "feedback") {
        table = run_feedback(series, reservoir, FeedbackSpec::brick_wall(a.n_spins, a.a_fb), opts);
    } else {
        throw std::invalid_argument("unknown protocol '" + a.protocol + "' (expected rsp, olp or feedback)");
    }
    if (a.shots < 0.0) throw std::invalid_argument("--shots must be positive (or 0 for infinite)");
    if (a.shots > 0.0) table = apply_shot_noise(table, noise_g, a.shots, a.seed);

    const CapacityReport report = evaluate_task(table, series, task, eta_max);
    nlohmann::json doc = {
        {"task", task_name(task)},
        {"protocol", a.protocol},
        {"h", a.h},
        {"seed", a.seed},
        {"series_length", length},
        {"washout", a.washout},
        {"n_features", table.n_cols()},
        {"eta_max", eta_max},
        {"capacities", report.capacities},
        {"sum_capacity", report.sum_capacity},
    };
    if (a.protocol == "olp") doc["g"] = a.g;
    if (a.protocol == "feedback") doc["a_fb"] = a.a_fb;
    doc["shots"] = a.shots > 0.0 ? nlohmann::json(a.shots) : nlohmann::json("infinite");
    write_json(doc, a.out);
    return 0;
}

int do_sweep(const SweepArgs& a) {
    SweepConfig config = load_config(a.config);
    if (a.threads >= 0) config.threads = static_cast<unsigned>(a.threads);
    if (a.per_direction) {
        const PerDirectionResult res = per_direction_optimize(config);
        nlohmann::json doc;
        for (const auto& d : res.directions) {
            doc["directions"][std::string(1, axis_name(d.axis))] = {
                {"rsp_best_h", d.rsp_best_h}, {"rsp_best_sum", d.rsp_best_sum}, {"g", d.g}, {"h", d.h}, {"P_R", d.pr}};
        }
        doc["combined"] = {{"sum_capacity", res.combined_sum},
                           {"P_R", res.combined_pr},
                           {"capacities", res.combined_capacities},
                           {"joint_rsp_best_sum", res.joint_rsp_best_sum}};
        std::filesystem::create_directories(a.out_dir);
        write_json(doc, (std::filesystem::path(a.out_dir) / "per_direction.json").string());
        return 0;
    }
    const SweepResult result = run_sweep(config);
    emit_results(result, a.out_dir);
    std::cout << "rsp best h' = " << result.rsp_best_h << " (C_sum = " << result.rsp_best_sum << ")\n"
              << "olp best g = " << result.best_g << ", h = " << result.best_h << ", P_R = " << result.best_pr << '\n';
    return 0;
}

int do_compare(FeedbackArgs a) {
    a.config.task = parse_task(a.task);
    a.config.santafe_path = santafe_path(a.config.santafe_path);
    const FeedbackComparison cmp = compare_feedback(a.config);
    nlohmann::json doc = {
        {"a_fb_grid", cmp.a_fb_grid},
        {"feedback_mean_sum_capacity", cmp.feedback_mean_sum},
        {"best_a_fb", cmp.best_a_fb},
        {"feedback_best_capacities_mean", cmp.feedback_best_mean},
        {"olp_capacities_mean", cmp.olp_mean},
        {"feedback_best_capacities", cmp.feedback_best_capacities},
        {"olp_capacities", cmp.olp_capacities},
        {"feedback_h", a.config.feedback_h},
        {"olp_g", a.config.olp_g},
        {"olp_h", a.config.olp_h},
        {"realizations", a.config.realizations},
        {"master_seed", a.config.master_seed},
    };
    write_json(doc, a.out);
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Quantum reservoir computing with tunable indirect measurements"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");  // -h would clash with the field option

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Single trajectory and its per-eta capacities");
    run_cmd->add_option("--task", run.task, "forward | memory")->check(CLI::IsMember({"forward", "memory"}));
    run_cmd->add_option("--protocol", run.protocol, "rsp | olp | feedback")->check(CLI::IsMember({"rsp", "olp", "feedback"}));
    run_cmd->add_option("--g", run.g, "measurement strength (olp)");
    run_cmd->add_option("--h", run.h, "transverse field");
    run_cmd->add_option("--a-fb", run.a_fb, "feedback strength (feedback)");
    run_cmd->add_option("--shots", run.shots, "shots per expectation value; 0 = infinite");
    run_cmd->add_option("--eta-max", run.eta_max, "number of sub-tasks; 0 = task default");
    run_cmd->add_option("--seed", run.seed, "seed for couplings, series and shot noise");
    run_cmd->add_option("--K", run.length, "series length; 0 = task default");
    run_cmd->add_option("--washout", run.washout, "discarded initial rows");
    run_cmd->add_option("--n-spins", run.n_spins, "reservoir size");
    run_cmd->add_option("--dt", run.dt, "evolution time per input");
    run_cmd->add_option("--santafe-file", run.santafe_file, "Santa Fe data (one value per line)");
    run_cmd->add_option("--out", run.out, "output JSON path (default stdout)");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "(g, h) grid sweep over reservoir realizations");
    sweep_cmd->add_option("--config", sweep.config, "key = value config file")->required();
    sweep_cmd->add_option("--out-dir", sweep.out_dir, "directory for CSV/JSON results")->required();
    sweep_cmd->add_option("--threads", sweep.threads, "worker count override (0 = all cores)");
    sweep_cmd->add_flag("--per-direction", sweep.per_direction, "optimize each measured direction separately");

    FeedbackArgs fb;
    auto* fb_cmd = app.add_subcommand("compare-feedback", "Feedback-driven protocol against the OLP");
    fb_cmd->add_option("--task", fb.task)->check(CLI::IsMember({"forward", "memory"}));
    fb_cmd->add_option("--h-fb", fb.config.feedback_h, "field of the feedback reservoir");
    fb_cmd->add_option("--a-fb-grid", fb.config.a_fb_grid, "feedback strengths")->delimiter(',');
    fb_cmd->add_option("--g", fb.config.olp_g, "OLP measurement strength");
    fb_cmd->add_option("--h", fb.config.olp_h, "OLP field");
    fb_cmd->add_option("--realizations", fb.config.realizations);
    fb_cmd->add_option("--K", fb.config.series_length, "series length");
    fb_cmd->add_option("--eta-max", fb.config.eta_max);
    fb_cmd->add_option("--seed", fb.config.master_seed);
    fb_cmd->add_option("--threads", fb.config.threads);
    fb_cmd->add_option("--santafe-file", fb.config.santafe_path);
    fb_cmd->add_option("--out", fb.out, "output JSON path (default stdout)");

    auto* check_cmd = app.add_subcommand("check", "Run the invariant and oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run_cmd->parsed()) return do_run(run);
        if (sweep_cmd->parsed()) return do_sweep(sweep);
        if (fb_cmd->parsed()) return do_compare(fb);
        if (check_cmd->parsed()) return run_checks(std::cout) ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace qrc
