#include "qrc/sweep.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qrc {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text, const std::string& key) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw std::invalid_argument("config key '" + key + "': '" + text + "' is not a number");
    return value;
}

long parse_long(const std::string& text, const std::string& key) {
    long value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw std::invalid_argument("config key '" + key + "': '" + text + "' is not an integer");
    return value;
}

std::vector<double> parse_grid(const std::string& text, const std::string& key) {
    if (text.rfind("logspace(", 0) == 0) {
        if (text.back() != ')') throw std::invalid_argument("config key '" + key + "': unterminated logspace(");
        std::vector<std::string> args;
        std::stringstream ss(text.substr(9, text.size() - 10));
        for (std::string part; std::getline(ss, part, ',');) args.push_back(trim(part));
        if (args.size() != 3) throw std::invalid_argument("config key '" + key + "': logspace needs (lo, hi, count)");
        return log_grid(parse_double(args[0], key), parse_double(args[1], key), static_cast<int>(parse_long(args[2], key)));
    }
    std::vector<double> grid;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        const std::string value = trim(part);
        if (!value.empty()) grid.push_back(parse_double(value, key));
    }
    return grid;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + num(values[i]);
    return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void write_capacities(const std::filesystem::path& path, const std::vector<double>& capacities) {
    auto out = open_output(path);
    out << "eta,capacity\n";
    for (std::size_t e = 0; e < capacities.size(); ++e) out << (e + 1) << ',' << num(capacities[e]) << '\n';
}

}  // namespace

SweepConfig parse_config(std::istream& in) {
    SweepConfig c = SweepConfig::desk();
    bool eta_max_set = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(text.substr(0, eq)), value = trim(text.substr(eq + 1));
        if (value.empty()) throw std::invalid_argument("config key '" + key + "' has no value");

        if (key == "task") {
            c.task = parse_task(value);
        } else if (key == "eta_max") {
            c.eta_max = static_cast<int>(parse_long(value, key));
            eta_max_set = true;
        } else if (key == "series_length" || key == "K") {
            c.series_length = parse_long(value, key);
        } else if (key == "washout") {
            c.washout = static_cast<int>(parse_long(value, key));
        } else if (key == "n_spins") {
            c.n_spins = static_cast<int>(parse_long(value, key));
        } else if (key == "dt") {
            c.dt = parse_double(value, key);
        } else if (key == "g_grid") {
            c.g_grid = parse_grid(value, key);
        } else if (key == "h_grid") {
            c.h_grid = parse_grid(value, key);
        } else if (key == "realizations") {
            c.realizations = static_cast<int>(parse_long(value, key));
        } else if (key == "shot_mode") {
            if (value == "infinite") c.shot_mode = ShotMode::infinite;
            else if (value == "finite") c.shot_mode = ShotMode::finite;
            else throw std::invalid_argument("config key 'shot_mode': expected infinite or finite");
        } else if (key == "n_shots_olp") {
            c.n_shots_olp = parse_double(value, key);
        } else if (key == "direction_filter") {
            c.direction_filter = parse_filter(value);
        } else if (key == "master_seed") {
            c.master_seed = static_cast<std::uint64_t>(parse_long(value, key));
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(parse_long(value, key));
        } else if (key == "santafe_path") {
            c.santafe_path = value;
        } else {
            throw std::invalid_argument("unknown config key '" + key + "' on line " + std::to_string(line_no));
        }
    }
    if (!eta_max_set) c.eta_max = default_eta_max(c.task);
    c.validate();
    return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path.string() + "'");
    return parse_config(in);
}

std::string format_config(const SweepConfig& c) {
    std::ostringstream out;
    out << "task = " << task_name(c.task) << '\n'
        << "eta_max = " << c.eta_max << '\n'
        << "series_length = " << c.series_length << '\n'
        << "washout = " << c.washout << '\n'
        << "n_spins = " << c.n_spins << '\n'
        << "dt = " << num(c.dt) << '\n'
        << "g_grid = " << join(c.g_grid) << '\n'
        << "h_grid = " << join(c.h_grid) << '\n'
        << "realizations = " << c.realizations << '\n'
        << "shot_mode = " << (c.shot_mode == ShotMode::finite ? "finite" : "infinite") << '\n'
        << "n_shots_olp = " << num(c.n_shots_olp) << '\n'
        << "direction_filter = " << filter_name(c.direction_filter) << '\n'
        << "master_seed = " << c.master_seed << '\n'
        << "threads = " << c.threads << '\n';
    if (!c.santafe_path.empty()) out << "santafe_path = " << c.santafe_path << '\n';
    return out.str();
}

void emit_results(const SweepResult& result, const std::filesystem::path& dir) {
    const SweepConfig& c = result.config;
    if (c.g_grid.empty() || c.h_grid.empty() || result.aggregates.empty())
        throw std::invalid_argument("cannot emit an empty sweep");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    {
        auto out = open_output(dir / "cells.csv");
        out << "task,protocol,g,h,realization,sum_capacity\n";
        for (const auto& r : result.records) {
            out << csv_field(task_name(c.task)) << ',' << csv_field(r.protocol) << ',' << num(r.g) << ',' << num(r.h)
                << ',' << r.realization << ',' << num(r.sum_capacity) << '\n';
        }
    }
    {
        auto out = open_output(dir / "aggregate.csv");
        out << "g,h,mean_PR,std_PR\n";
        for (const auto& a : result.aggregates)
            out << num(a.g) << ',' << num(a.h) << ',' << num(a.mean_pr) << ',' << num(a.std_pr) << '\n';
    }

    nlohmann::json summary;
    summary["config"] = {
        {"task", task_name(c.task)},
        {"eta_max", c.eta_max},
        {"series_length", c.series_length},
        {"washout", c.washout},
        {"n_spins", c.n_spins},
        {"dt", c.dt},
        {"g_grid", c.g_grid},
        {"h_grid", c.h_grid},
        {"realizations", c.realizations},
        {"shot_mode", c.shot_mode == ShotMode::finite ? "finite" : "infinite"},
        {"n_shots_olp", c.n_shots_olp},
        {"direction_filter", filter_name(c.direction_filter)},
        {"master_seed", c.master_seed},
    };
    if (c.shot_mode == ShotMode::finite) summary["n_shots_rsp"] = c.n_shots_rsp();
    summary["rsp_best"] = {{"h", result.rsp_best_h}, {"sum_capacity", result.rsp_best_sum}};
    summary["rsp_mean_sum_capacity"] = result.rsp_mean;
    summary["olp_best"] = {{"g", result.best_g}, {"h", result.best_h}, {"P_R", result.best_pr}};
    {
        auto out = open_output(dir / "summary.json");
        out << summary.dump(2) << '\n';
    }

    if (!result.rsp_mean.empty()) write_capacities(dir / "capacities_rsp_best.csv", result.mean_capacities("rsp", -1, result.rsp_best_index));
    const auto best = std::max_element(result.aggregates.begin(), result.aggregates.end(),
                                       [](const auto& a, const auto& b) { return a.mean_pr < b.mean_pr; });
    write_capacities(dir / "capacities_olp_best.csv", result.mean_capacities("olp", best->g_index, best->h_index));
}

}  // namespace qrc
