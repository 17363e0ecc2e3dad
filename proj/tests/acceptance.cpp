// End-to-end acceptance suite. Each numbered check prints a single PASS/FAIL
// line; the process exits nonzero if any check fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nlscan/armodel.hpp"
#include "nlscan/dist.hpp"
#include "nlscan/epochs.hpp"
#include "nlscan/nonlin.hpp"
#include "nlscan/series.hpp"
#include "nlscan/synth.hpp"
#include "nlscan/unitroot.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace nlscan;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
    ProcessSpec spec;
    spec.family = ProcessFamily::GaussianIid;
    spec.n = n;
    spec.seed = seed;
    return generate(spec);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// ---- 1: window arithmetic on a full-length series -------------------------

void criterion_window_arithmetic() {
    ProcessSpec spec;
    spec.family = ProcessFamily::Ar;
    spec.ar_coefficients = {0.5, -0.3};
    spec.n = 4266;
    spec.seed = 20260823;
    auto returns = generate(spec);

    PriceSeries prices;
    prices.instrument_id = "synthetic";
    double level = 100.0;
    int y = 2000, m = 1, d = 1;
    prices.observations.push_back({{y, m, d}, level});
    for (double r : returns) {
        level *= std::exp(0.01 * r);
        if (++d > 28) {
            d = 1;
            if (++m > 12) {
                m = 1;
                ++y;
            }
        }
        prices.observations.push_back({{y, m, d}, level});
    }

    auto rets = log_returns(prices);
    auto resid = prewhiten(rets, 10);
    WindowSpec wspec;
    auto windows = partition_windows(resid.values, wspec);
    const std::size_t discarded = resid.values.size() - windows.size() * wspec.n;

    const bool ok = prices.observations.size() == 4267 && rets.observations.size() == 4266 &&
                    resid.source_order == 2 && resid.values.size() == 4264 &&
                    windows.size() == 152 && discarded == 8;
    report(1, ok,
           "window arithmetic 4267 prices -> " + std::to_string(rets.observations.size()) +
               " returns -> AR(" + std::to_string(resid.source_order) + ") residuals " +
               std::to_string(resid.values.size()) + " -> " + std::to_string(windows.size()) +
               " windows, " + std::to_string(discarded) + " discarded");
}

// ---- 2: lag rule ----------------------------------------------------------

void criterion_lag_rule() {
    WindowSpec spec;
    const bool ok = spec.n == 28 && spec.c == 0.4 && spec.lag_count() == 3 && spec.dof() == 3;
    report(2, ok,
           "lag rule n=28, c=0.4 -> L=" + std::to_string(spec.lag_count()) +
               ", df=" + std::to_string(spec.dof()));
}

// ---- 3: H-statistic oracle equivalence ------------------------------------

void criterion_h_oracle() {
    WindowSpec spec;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto w = gaussian(28, 31000 + seed);
        const double lib = h_statistic(w, spec).h_raw;
        const double ref = oracle::h_stat(w, 0.4);
        worst = std::max(worst, std::abs(lib - ref));
    }
    report(3, worst < 1e-10,
           "H vs triple-loop oracle on 100 windows, max |diff| = " + std::to_string(worst));
}

// ---- 4: H null distribution -----------------------------------------------

void criterion_h_null() {
    WindowSpec spec;
    const std::size_t reps = 5000;
    std::vector<double> hs;
    hs.reserve(reps);
    double mean = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        auto w = gaussian(28, 400000 + i);
        const double h = h_statistic(w, spec).h_statistic;
        hs.push_back(h);
        mean += h;
    }
    mean /= reps;
    const double mean_tol = 3.0 * std::sqrt(2.0 * 3.0 / reps);  // ~0.104

    std::sort(hs.begin(), hs.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        const double f = dist::chi_squared_cdf(hs[i], 3.0);
        ks = std::max(ks, std::max(std::abs((i + 1.0) / reps - f), std::abs(i / double(reps) - f)));
    }
    const double ks_crit_1pct = 1.6276 / std::sqrt(static_cast<double>(reps));

    const bool ok = std::abs(mean - 3.0) < mean_tol && ks < ks_crit_1pct;
    report(4, ok,
           "H null over 5000 windows: mean=" + fmt(mean) + " (tol " + fmt(mean_tol) +
               " around 3), KS=" + fmt(ks) + " vs 1% critical " + fmt(ks_crit_1pct));
}

// ---- 5 and parts of 9: size suite -----------------------------------------

struct SizeRow {
    std::string test_id;
    double lo, hi;
    double rate = 0.0;
};

double g_h_null_rate = 0.05;
double g_tsay5_null_rate = 0.05;
double g_adf_rw_rate = 1.0;

void criterion_size_suite() {
    ProcessSpec iid;
    iid.family = ProcessFamily::GaussianIid;
    iid.n = 1000;
    ProcessSpec window_iid = iid;
    window_iid.n = 28;
    ProcessSpec walk;
    walk.family = ProcessFamily::RandomWalk;
    walk.n = 1000;

    std::vector<SizeRow> rows{
        {"mcleod_li:5", 0.03, 0.07}, {"mcleod_li:15", 0.03, 0.07}, {"mcleod_li:20", 0.03, 0.07},
        {"tsay:5", 0.03, 0.07},      {"tsay:15", 0.03, 0.07},      {"tsay:20", 0.03, 0.07},
        {"arch_lm:5", 0.03, 0.07},   {"arch_lm:15", 0.03, 0.07},   {"arch_lm:20", 0.03, 0.07},
        {"bds:2:0.5", 0.02, 0.09},   {"h", 0.03, 0.07},            {"adf", 0.03, 0.07},
    };

    bool ok = true;
    std::string detail;
    for (auto& row : rows) {
        const ProcessSpec& null_spec =
            row.test_id == "h" ? window_iid : (row.test_id == "adf" ? walk : iid);
        auto r = empirical_size(row.test_id, null_spec, 1000, 0.05, 0xACCE5501);
        row.rate = r.rejection_rate;
        if (row.test_id == "h") g_h_null_rate = row.rate;
        if (row.test_id == "tsay:5") g_tsay5_null_rate = row.rate;
        if (row.test_id == "adf") g_adf_rw_rate = row.rate;
        const bool in_band = row.rate >= row.lo && row.rate <= row.hi;
        if (!in_band) {
            ok = false;
            detail += " " + row.test_id + "=" + fmt(row.rate) + " outside [" + fmt(row.lo) +
                      "," + fmt(row.hi) + "]";
        }
    }
    if (ok) {
        detail = "all 12 empirical sizes in band at alpha=0.05, 1000 reps (";
        for (std::size_t i = 0; i < rows.size(); ++i)
            detail += (i ? " " : "") + rows[i].test_id + "=" + fmt(rows[i].rate);
        detail += ")";
    } else {
        detail = "size out of band:" + detail;
    }
    report(5, ok, detail);
}

// ---- 6: power suite -------------------------------------------------------

void criterion_power_suite() {
    ProcessSpec garch;
    garch.family = ProcessFamily::Garch11;
    garch.n = 2000;

    ProcessSpec logistic;
    logistic.family = ProcessFamily::LogisticMap;
    logistic.n = 1000;

    ProcessSpec bilinear;
    bilinear.family = ProcessFamily::Bilinear;
    bilinear.n = 2000;

    ProcessSpec bilinear_windows = bilinear;
    bilinear_windows.n = 280;  // ten windows per replication

    const double ml = empirical_power("mcleod_li:5", garch, 500, 0.05, 0xACCE5502).rejection_rate;
    const double al = empirical_power("arch_lm:5", garch, 500, 0.05, 0xACCE5503).rejection_rate;
    const double bd = empirical_power("bds:2:0.5", logistic, 500, 0.05, 0xACCE5504).rejection_rate;
    const double ts = empirical_power("tsay:5", bilinear, 500, 0.05, 0xACCE5505).rejection_rate;
    const double hw =
        empirical_power("h", bilinear_windows, 500, 0.05, 0xACCE5506).rejection_rate;

    const bool ok = ml >= 0.90 && al >= 0.90 && bd == 1.0 &&
                    ts >= 3.0 * g_tsay5_null_rate && hw >= 3.0 * g_h_null_rate;
    report(6, ok,
           "power: mcleod_li=" + fmt(ml) + " arch_lm=" + fmt(al) + " (need 0.90), bds=" +
               fmt(bd) + " (need 1.0), tsay=" + fmt(ts) + " (need " +
               fmt(3.0 * g_tsay5_null_rate) + "), h windows=" + fmt(hw) + " (need " +
               fmt(3.0 * g_h_null_rate) + ")");
}

// ---- 7: epoch localization ------------------------------------------------

void criterion_epoch_localization() {
    ProcessSpec spec;
    spec.family = ProcessFamily::Episodic;
    spec.n = 40 * 28;
    spec.episodic_bursts = {{10 * 28, 20 * 28}};
    WindowSpec wspec;

    std::size_t in_hits = 0, out_hits = 0, in_total = 0, out_total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        spec.seed = 700000 + seed;
        auto rep = scan_values(generate(spec), wspec, 10);
        for (const auto& w : rep.windows) {
            if (w.degenerate) continue;
            const bool in_burst = w.index >= 10 && w.index < 20;
            (in_burst ? in_total : out_total) += 1;
            if (w.significant) (in_burst ? in_hits : out_hits) += 1;
        }
    }
    const double in_rate = static_cast<double>(in_hits) / in_total;
    const double out_rate = static_cast<double>(out_hits) / out_total;
    const bool ok = in_rate >= 3.0 * out_rate;
    report(7, ok,
           "episodic localization over 200 seeds: in-burst rate=" + fmt(in_rate) +
               ", out-of-burst rate=" + fmt(out_rate) + " (need 3x)");
}

// ---- 8: brute-force equivalence -------------------------------------------

void criterion_bruteforce() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        ProcessSpec spec;
        spec.family = i % 2 == 0 ? ProcessFamily::GaussianIid : ProcessFamily::Garch11;
        spec.n = 220 + 4 * i;  // up to 296
        spec.seed = 80000 + i;
        auto x = generate(spec);

        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= x.size();
        double var = 0.0;
        for (double v : x) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / x.size());

        worst = std::max(worst,
                         std::abs(mcleod_li(x, 5).statistic - oracle::mcleod_li_q(x, 5)));
        worst = std::max(worst, std::abs(arch_lm(x, 5).statistic - oracle::arch_lm_stat(x, 5)));
        worst = std::max(worst, std::abs(tsay(x, 5).statistic - oracle::tsay_f(x, 5)));
        worst = std::max(worst,
                         std::abs(bds(x, 2, 0.5 * sd).statistic -
                                  oracle::bds_parts(x, 2, 0.5 * sd).w));
    }
    report(8, worst < 1e-8,
           "battery statistics vs naive oracles on 20 series, max |diff| = " +
               std::to_string(worst));
}

// ---- 9: unit-root behavior ------------------------------------------------

void criterion_unit_root() {
    ProcessSpec ar1;
    ar1.family = ProcessFamily::Ar;
    ar1.ar_coefficients = {0.5};
    ar1.n = 1000;
    const double adf_power =
        empirical_power("adf", ar1, 500, 0.05, 0xACCE5509).rejection_rate;

    ProcessSpec walk;
    walk.family = ProcessFamily::RandomWalk;
    walk.n = 1000;
    const double rals_size = empirical_size("rals", walk, 1000, 0.05, 0xACCE550A).rejection_rate;

    const bool ok = adf_power >= 0.99 && g_adf_rw_rate <= 0.10 && rals_size >= 0.03 &&
                    rals_size <= 0.07;
    report(9, ok,
           "unit root: ADF power on AR(1) phi=0.5 = " + fmt(adf_power) +
               " (need 0.99), random-walk rejection = " + fmt(g_adf_rw_rate) +
               " (need <=0.10), RALS size = " + fmt(rals_size) + " (need [0.03,0.07])");
}

// ---- 10: CLI determinism --------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NLSCAN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

void criterion_cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / "nlscan_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ProcessSpec g;
    g.family = ProcessFamily::Garch11;
    g.n = 1200;
    g.seed = 17;
    auto returns = generate(g);
    const fs::path csv = dir / "series.csv";
    {
        std::ofstream out(csv);
        out << "date,price\n";
        double level = 100.0;
        int y = 2001, m = 1, d = 1;
        out << "2001-01-01,100\n";
        for (double r : returns) {
            level *= std::exp(0.01 * r);
            if (++d > 28) {
                d = 1;
                if (++m > 12) {
                    m = 1;
                    ++y;
                }
            }
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
            out << buf << ',' << level << '\n';
        }
    }

    const fs::path a = dir / "a", b = dir / "b";
    bool ok = run_cli("analyze " + csv.string() + " --out " + a.string()) == 0 &&
              run_cli("analyze " + csv.string() + " --out " + b.string()) == 0 &&
              slurp(a / "series.json") == slurp(b / "series.json") &&
              !slurp(a / "series.json").empty();

    const fs::path spec_file = dir / "proc.json";
    std::ofstream(spec_file) << R"({"family":"gaussian_iid","n":300,"seed":0})";
    const fs::path sa = dir / "sa", sb = dir / "sb";
    ok = ok &&
         run_cli("simulate --process " + spec_file.string() +
                 " --test mcleod_li:5 --mode size --reps 200 --seed 4 --out " + sa.string()) ==
             0 &&
         run_cli("simulate --process " + spec_file.string() +
                 " --test mcleod_li:5 --mode size --reps 200 --seed 4 --out " + sb.string()) ==
             0 &&
         slurp(sa / "mc_mcleod_li_5.json") == slurp(sb / "mc_mcleod_li_5.json") &&
         !slurp(sa / "mc_mcleod_li_5.json").empty();

    report(10, ok, "analyze and simulate outputs byte-identical across repeated runs");
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();

    criterion_window_arithmetic();
    criterion_lag_rule();
    criterion_h_oracle();
    criterion_h_null();
    criterion_size_suite();
    criterion_power_suite();
    criterion_epoch_localization();
    criterion_bruteforce();
    criterion_unit_root();
    criterion_cli_determinism();

    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(clock::now() - t0).count();
    std::printf("%d/10 criteria passed in %llds\n", 10 - g_failures,
                static_cast<long long>(secs));
    return g_failures == 0 ? 0 : 1;
}
