#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "benchsim/config.hpp"
#include "benchsim/csv.hpp"
#include "benchsim/experiments.hpp"

namespace fs = std::filesystem;
using namespace benchsim;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw SimError("cannot open: " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw SimError("cannot open for writing: " + path.string());
    }
    f << content;
    if (!f) {
        throw SimError("write failed: " + path.string());
    }
}

std::string joined(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) {
            out += "; ";
        }
        out += p;
    }
    return out;
}

BenchConfig load_config(const std::string& path) {
    const ParseResult parsed = parse_config(read_file(path));
    if (!parsed.ok()) {
        throw SimError(path + ": " + joined(parsed.errors));
    }
    return *parsed.config;
}

std::string run_filename(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "run_%03zu.csv", index);
    return buf;
}

// One-line human digest of the protocol outcome.
std::string headline(const BenchConfig& cfg, const ExperimentResult& res) {
    std::ostringstream out;
    switch (res.protocol) {
        case Protocol::repeatability: {
            double mean = 0.0;
            for (double a : res.amplitude_est_n) {
                mean += a;
            }
            if (!res.amplitude_est_n.empty()) {
                mean /= static_cast<double>(res.amplitude_est_n.size());
            }
            out << "amplitude mean " << format_double(mean) << " N (reference "
                << format_double(cfg.reference.amplitude) << " N), worst pointwise std "
                << format_double(res.max_force_std_n) << " N";
            break;
        }
        case Protocol::blocked: {
            double mean = 0.0;
            for (double p : res.peak_displacement_m) {
                mean += p;
            }
            if (!res.peak_displacement_m.empty()) {
                mean /= static_cast<double>(res.peak_displacement_m.size());
            }
            out << "peak displacement mean " << format_double(mean * 1e6) << " um over "
                << res.runs.size() << " runs";
            break;
        }
        case Protocol::stiffness_id:
            if (res.stiffness.has_value()) {
                out << "stiffness " << format_double(res.stiffness->slope) << " N/m (R = "
                    << format_double(res.stiffness->correlation_r) << ")";
            }
            break;
        case Protocol::generic:
            out << "worst pointwise force std " << format_double(res.max_force_std_n) << " N";
            break;
    }
    return out.str();
}

void write_outputs(const fs::path& out_dir, const BenchConfig& cfg,
                   const ExperimentResult& res) {
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < res.runs.size(); ++i) {
        write_file(out_dir / run_filename(i), run_csv_text(res.runs[i]));
    }
    write_file(out_dir / "resolved.cfg", render_config(cfg));
    write_file(out_dir / "summary.csv", summary_csv(cfg, res));
    if (res.stiffness.has_value() && !res.runs.empty()) {
        std::string curve = "time_s,mean_position_m,mean_force_n\n";
        for (std::size_t i = 0; i < res.mean_position_m.size(); ++i) {
            curve += format_double(res.runs[0].time_s[i]) + "," +
                     format_double(res.mean_position_m[i]) + "," +
                     format_double(res.mean_force_n[i]) + "\n";
        }
        write_file(out_dir / "mean_cycle.csv", curve);
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed, std::optional<int> runs) {
    BenchConfig cfg = load_config(config_path);
    if (seed.has_value()) {
        cfg.sim.seed = *seed;
    }
    if (runs.has_value()) {
        cfg.experiment.runs = *runs;
    }
    const auto errors = validate_config(cfg);
    if (!errors.empty()) {
        throw SimError(joined(errors));
    }
    const ExperimentResult res = run_experiment(cfg);
    write_outputs(out_dir, cfg, res);
    std::cout << "wrote " << res.runs.size() << " runs to " << out_dir << "\n";
    const std::string line = headline(cfg, res);
    if (!line.empty()) {
        std::cout << line << "\n";
    }
    return 0;
}

int cmd_summarize(const std::string& dir) {
    const fs::path root(dir);
    BenchConfig cfg = load_config((root / "resolved.cfg").string());
    std::vector<std::string> files;
    if (!fs::is_directory(root)) {
        throw SimError("not a directory: " + dir);
    }
    for (const auto& entry : fs::directory_iterator(root)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("run_", 0) == 0 && name.size() > 8 &&
            name.compare(name.size() - 4, 4, ".csv") == 0) {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw SimError("no run_*.csv files in " + dir);
    }
    std::vector<TimeSeries> runs;
    std::vector<std::uint64_t> seeds;
    runs.reserve(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        runs.push_back(read_run_csv(files[i]));
        seeds.push_back(run_seed(cfg, static_cast<int>(i)));
    }
    const ExperimentResult res = compute_statistics(cfg, std::move(runs), std::move(seeds));
    std::cout << summary_csv(cfg, res);
    return 0;
}

int cmd_presets() {
    const std::vector<std::pair<std::string, std::string>> blurbs = {
        {"electric-repeatability",
         "10 seeded runs, linear-motor bench vs. spring, 75 N 2 Hz sine tracking"},
        {"hydraulic-repeatability",
         "10 seeded runs, servovalve bench vs. spring, 50 N 0.1 Hz sine tracking"},
        {"blocked", "force step into a blocked car; displacement from load-path compliance"},
        {"stiffness-id", "hand-driven compression cycles vs. spring; regression of the mean"},
    };
    for (const auto& [name, blurb] : blurbs) {
        std::cout << name << " - " << blurb << "\n";
    }
    return 0;
}

// Keys whose override invalidates a generated hand profile.
bool regenerates_profile(const std::string& param) {
    return param == "experiment.compression_span_m" ||
           param == "experiment.compression_frequency_hz" || param == "experiment.ramp_fraction";
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, const std::string& out_dir) {
    std::vector<std::string> values;
    std::size_t start = 0;
    while (start <= values_csv.size()) {
        const std::size_t comma = values_csv.find(',', start);
        values.push_back(comma == std::string::npos ? values_csv.substr(start)
                                                    : values_csv.substr(start, comma - start));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (values.empty() || (values.size() == 1 && values[0].empty())) {
        throw SimError("sweep needs at least one value");
    }
    const std::string base_text = read_file(config_path);
    fs::create_directories(out_dir);
    std::string table = "param,value,metric,metric_value\n";
    for (const auto& value : values) {
        ParseResult parsed = parse_config(base_text);
        if (!parsed.ok()) {
            throw SimError(config_path + ": " + joined(parsed.errors));
        }
        BenchConfig cfg = *parsed.config;
        const std::string msg = apply_override(cfg, param, value);
        if (!msg.empty()) {
            throw SimError(msg);
        }
        if (regenerates_profile(param) && cfg.experiment.protocol == Protocol::stiffness_id &&
            cfg.reference.kind == RefKind::profile) {
            cfg.reference = make_compression_profile(cfg.experiment.compression_span_m,
                                                     cfg.experiment.compression_frequency_hz,
                                                     cfg.experiment.ramp_fraction);
        }
        const auto errors = validate_config(cfg);
        if (!errors.empty()) {
            throw SimError(param + "=" + value + ": " + joined(errors));
        }
        const ExperimentResult res = run_experiment(cfg);
        std::string dir_name = param + "=" + value;
        std::replace(dir_name.begin(), dir_name.end(), '.', '_');
        write_outputs(fs::path(out_dir) / dir_name, cfg, res);
        std::cout << param << " = " << value << ": " << headline(cfg, res) << "\n";

        auto emit = [&table, &param, &value](const std::string& metric, double v) {
            table += param + "," + value + "," + metric + "," + format_double(v) + "\n";
        };
        if (!res.amplitude_est_n.empty()) {
            double mean = 0.0;
            for (double a : res.amplitude_est_n) {
                mean += a;
            }
            emit("force_amplitude_mean_n",
                 mean / static_cast<double>(res.amplitude_est_n.size()));
        }
        emit("max_force_std_n", res.max_force_std_n);
        if (!res.peak_displacement_m.empty()) {
            double mean = 0.0;
            for (double p : res.peak_displacement_m) {
                mean += p;
            }
            emit("peak_displacement_mean_m",
                 mean / static_cast<double>(res.peak_displacement_m.size()));
        }
        if (res.stiffness.has_value()) {
            emit("stiffness_n_per_m", res.stiffness->slope);
            emit("stiffness_r", res.stiffness->correlation_r);
        }
    }
    write_file(fs::path(out_dir) / "sweep.csv", table);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impedance-control actuator test bench simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment and record CSVs");
    run_cmd->add_option("config", config_path, "Config file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (default: out)");
    run_cmd->add_option("--seed", seed, "Override the base seed");
    run_cmd->add_option("--runs", runs, "Override the run count")->check(CLI::PositiveNumber);

    std::string sum_dir;
    auto* sum_cmd = app.add_subcommand("summarize", "Recompute statistics from recorded runs");
    sum_cmd->add_option("dir", sum_dir, "Directory written by `run`")->required();

    app.add_subcommand("presets", "List built-in experiment presets");

    std::string sweep_config;
    std::string sweep_param;
    std::string sweep_values;
    std::string sweep_out = "sweep_out";
    auto* sweep_cmd = app.add_subcommand("sweep", "Re-run one config across parameter values");
    sweep_cmd->add_option("config", sweep_config, "Config file")->required();
    sweep_cmd->add_option("--param", sweep_param, "Dotted key, e.g. plant.coulomb_n")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output directory (default: sweep_out)");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("run")) {
            return cmd_run(config_path, out_dir, seed, runs);
        }
        if (app.got_subcommand("summarize")) {
            return cmd_summarize(sum_dir);
        }
        if (app.got_subcommand("presets")) {
            return cmd_presets();
        }
        if (app.got_subcommand("sweep")) {
            return cmd_sweep(sweep_config, sweep_param, sweep_values, sweep_out);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
