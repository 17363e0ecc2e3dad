// nlscan: nonlinearity testing for return series.
//
//   nlscan analyze <files...> --window 28 --c 0.4 --alpha 0.05 --max-ar 10
//                  --lags 5,15,20 --out DIR --format json,csv,svg
//   nlscan simulate --process SPEC.json --test ID --mode size|power
//                   --reps N --seed S --out DIR

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nlscan/epochs.hpp"
#include "nlscan/nonlin.hpp"
#include "nlscan/report.hpp"
#include "nlscan/series.hpp"
#include "nlscan/synth.hpp"
#include "nlscan/unitroot.hpp"

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRalsMaxLag = 4;
constexpr std::size_t kRalsTableReps = 2000;
constexpr std::uint64_t kRalsTableSeed = 0x5eedULL;

struct AnalyzeOptions {
    std::vector<std::string> files;
    std::size_t window = 28;
    double c = 0.4;
    double alpha = 0.05;
    std::size_t max_ar = 10;
    std::string lags = "5,15,20";
    std::string out_dir = ".";
    std::string formats = "json";
    std::string date_style = "iso";
};

std::vector<std::size_t> parse_lags(const std::string& text) {
    std::vector<std::size_t> lags;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) lags.push_back(std::stoul(part));
    return lags;
}

bool has_format(const std::string& formats, const std::string& f) {
    std::stringstream ss(formats);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part == f) return true;
    }
    return false;
}

int cmd_analyze(const AnalyzeOptions& opts) {
    fs::create_directories(opts.out_dir);
    nlscan::WindowSpec wspec{opts.window, opts.c, opts.alpha};
    wspec.validate();

    nlscan::BatteryConfig battery_config;
    battery_config.lags = parse_lags(opts.lags);
    battery_config.alpha = opts.alpha;
    battery_config.validate();

    nlohmann::ordered_json errors = nlohmann::ordered_json::array();
    std::map<std::size_t, nlscan::RalsCriticalValues> rals_tables;

    for (const auto& file : opts.files) {
        const std::string id = fs::path(file).stem().string();
        try {
            std::ifstream in(file);
            if (!in) throw std::runtime_error("cannot open " + file);
            auto prices = nlscan::load_prices(in, id);
            auto returns = nlscan::log_returns(prices);
            auto values = returns.values();

            nlscan::InstrumentReport report;
            report.instrument_id = id;
            report.summary = nlscan::summary_stats(returns);
            report.adf_outcome =
                nlscan::adf(values, nlscan::default_adf_max_lag(values.size()));
            auto table_it = rals_tables.find(values.size());
            if (table_it == rals_tables.end())
                table_it = rals_tables
                               .emplace(values.size(),
                                        nlscan::critical_values_rals(values.size(), kRalsTableReps,
                                                                     kRalsTableSeed, kRalsMaxLag))
                               .first;
            report.rals_outcome = nlscan::rals(values, kRalsMaxLag, table_it->second);
            report.ar_fit = nlscan::select_order(values, opts.max_ar);
            auto resid = nlscan::prewhiten(returns, opts.max_ar);
            report.battery = nlscan::run_battery(resid, battery_config);
            report.scan = nlscan::scan(returns, wspec, opts.max_ar);

            const fs::path base = fs::path(opts.out_dir) / id;
            if (has_format(opts.formats, "json"))
                nlscan::atomic_write(base.string() + ".json", nlscan::to_json(report));
            if (has_format(opts.formats, "csv")) {
                nlscan::atomic_write(base.string() + "_battery.csv",
                                     nlscan::to_csv(report.battery));
                nlscan::atomic_write(base.string() + "_scan.csv",
                                     nlscan::to_csv(report.scan, opts.date_style == "us"));
            }
            if (has_format(opts.formats, "svg"))
                nlscan::atomic_write(base.string() + ".svg",
                                     nlscan::render_svg(returns, report.scan));
        } catch (const std::exception& e) {
            errors.push_back({{"instrument_id", id}, {"file", file}, {"error", e.what()}});
        }
    }

    if (!errors.empty()) {
        nlscan::atomic_write(fs::path(opts.out_dir) / "errors.json", errors.dump(2));
        std::cerr << errors.dump(2) << '\n';
        return 1;
    }
    return 0;
}

struct SimulateOptions {
    std::string process_file;
    std::string test_id;
    std::string mode = "size";
    std::size_t reps = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string formats = "json";
};

int cmd_simulate(const SimulateOptions& opts) {
    if (!nlscan::known_test_id(opts.test_id)) {
        std::cerr << "{\"error\": \"unknown test id: " << opts.test_id << "\"}\n";
        return 1;
    }
    std::ifstream in(opts.process_file);
    if (!in) {
        std::cerr << "{\"error\": \"cannot open " << opts.process_file << "\"}\n";
        return 1;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto spec = nlscan::ProcessSpec::from_json(buf.str());

    auto result = opts.mode == "power"
                      ? nlscan::empirical_power(opts.test_id, spec, opts.reps, opts.alpha, opts.seed)
                      : nlscan::empirical_size(opts.test_id, spec, opts.reps, opts.alpha, opts.seed);

    fs::create_directories(opts.out_dir);
    std::string stem = opts.test_id;
    for (auto& ch : stem)
        if (ch == ':' || ch == '.') ch = '_';
    const fs::path base = fs::path(opts.out_dir) / (std::string("mc_") + stem);
    if (has_format(opts.formats, "json"))
        nlscan::atomic_write(base.string() + ".json", nlscan::to_json(result));
    if (has_format(opts.formats, "csv"))
        nlscan::atomic_write(base.string() + ".csv", nlscan::to_csv(result));
    std::cout << nlscan::to_json(result) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear serial dependence testing for return series"};
    app.require_subcommand(1);

    AnalyzeOptions aopts;
    auto* analyze = app.add_subcommand("analyze", "Analyze price CSVs end to end");
    analyze->add_option("files", aopts.files, "Input CSV files (date,price)")->required();
    analyze->add_option("--window", aopts.window, "Window length");
    analyze->add_option("--c", aopts.c, "Lag exponent");
    analyze->add_option("--alpha", aopts.alpha, "Significance threshold");
    analyze->add_option("--max-ar", aopts.max_ar, "Maximum AR order for pre-whitening");
    analyze->add_option("--lags", aopts.lags, "Battery lags, comma separated");
    analyze->add_option("--out", aopts.out_dir, "Output directory");
    analyze->add_option("--format", aopts.formats, "Output formats: json,csv,svg");
    analyze->add_option("--date-style", aopts.date_style, "iso or us");

    SimulateOptions sopts;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo size/power runs");
    simulate->add_option("--process", sopts.process_file, "Process spec JSON file")->required();
    simulate->add_option("--test", sopts.test_id, "Test id, e.g. mcleod_li:15 or bds:2:0.5")
        ->required();
    simulate->add_option("--mode", sopts.mode, "size or power");
    simulate->add_option("--reps", sopts.reps, "Replications");
    simulate->add_option("--alpha", sopts.alpha, "Significance level");
    simulate->add_option("--seed", sopts.seed, "Master seed");
    simulate->add_option("--out", sopts.out_dir, "Output directory");
    simulate->add_option("--format", sopts.formats, "Output formats: json,csv");

    // Environment override for the output directory only.
    if (const char* env_out = std::getenv("NLSCAN_OUT_DIR")) {
        aopts.out_dir = env_out;
        sopts.out_dir = env_out;
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(aopts);
        return cmd_simulate(sopts);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    }
}
