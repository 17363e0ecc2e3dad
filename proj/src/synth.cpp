#include "nlscan/synth.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nlscan/epochs.hpp"
#include "nlscan/kernels.hpp"
#include "nlscan/nonlin.hpp"
#include "nlscan/rng.hpp"
#include "nlscan/unitroot.hpp"

namespace nlscan {

namespace {

const std::map<std::string, ProcessFamily> kFamilyNames = {
    {"gaussian_iid", ProcessFamily::GaussianIid},
    {"student_t_iid", ProcessFamily::StudentTIid},
    {"garch11", ProcessFamily::Garch11},
    {"bilinear", ProcessFamily::Bilinear},
    {"tar", ProcessFamily::Tar},
    {"logistic_map", ProcessFamily::LogisticMap},
    {"random_walk", ProcessFamily::RandomWalk},
    {"ar", ProcessFamily::Ar},
    {"episodic", ProcessFamily::Episodic},
};

std::string family_name(ProcessFamily f) {
    for (const auto& [name, fam] : kFamilyNames)
        if (fam == f) return name;
    return "unknown";
}

double sample_sd(const std::vector<double>& x) {
    const double mean = kernels::sum(x) / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size()));
}

}  // namespace

void ProcessSpec::validate() const {
    if (n == 0) throw std::invalid_argument("process spec: n must be positive");
    switch (family) {
        case ProcessFamily::Garch11:
            if (!(garch_omega > 0.0) || garch_alpha < 0.0 || garch_beta < 0.0 ||
                garch_alpha + garch_beta >= 1.0)
                throw std::invalid_argument(
                    "garch11 requires omega > 0, alpha, beta >= 0, alpha + beta < 1");
            break;
        case ProcessFamily::LogisticMap:
            if (!(logistic_x0 > 0.0 && logistic_x0 < 1.0) || logistic_x0 == 0.25 ||
                logistic_x0 == 0.5 || logistic_x0 == 0.75)
                throw std::invalid_argument(
                    "logistic_map requires x0 in (0,1) away from fixed points");
            break;
        case ProcessFamily::StudentTIid:
            if (t_df < 3.0 || t_df != std::floor(t_df))
                throw std::invalid_argument("student_t_iid requires integer df >= 3");
            break;
        case ProcessFamily::Episodic:
            for (const auto& [a, b] : episodic_bursts)
                if (a >= b || b > n)
                    throw std::invalid_argument("episodic burst ranges must be within [0, n)");
            break;
        default:
            break;
    }
}

std::vector<double> generate(const ProcessSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::size_t total = spec.n + spec.burn_in;
    std::vector<double> out;
    out.reserve(spec.n);

    switch (spec.family) {
        case ProcessFamily::GaussianIid: {
            for (std::size_t t = 0; t < spec.n; ++t) out.push_back(rng.next_gaussian());
            break;
        }
        case ProcessFamily::StudentTIid: {
            const int df = static_cast<int>(spec.t_df);
            for (std::size_t t = 0; t < spec.n; ++t) {
                const double z = rng.next_gaussian();
                double chi2 = 0.0;
                for (int i = 0; i < df; ++i) {
                    const double g = rng.next_gaussian();
                    chi2 += g * g;
                }
                out.push_back(z / std::sqrt(chi2 / spec.t_df));
            }
            break;
        }
        case ProcessFamily::Garch11: {
            double h = spec.garch_omega / (1.0 - spec.garch_alpha - spec.garch_beta);
            double x = 0.0;
            for (std::size_t t = 0; t < total; ++t) {
                h = spec.garch_omega + spec.garch_alpha * x * x + spec.garch_beta * h;
                x = std::sqrt(h) * rng.next_gaussian();
                if (t >= spec.burn_in) out.push_back(x);
            }
            break;
        }
        case ProcessFamily::Bilinear: {
            double x = 0.0, e_prev = 0.0;
            for (std::size_t t = 0; t < total; ++t) {
                const double e = rng.next_gaussian();
                x = spec.bilinear_b * x * e_prev + e;
                e_prev = e;
                if (t >= spec.burn_in) out.push_back(x);
            }
            break;
        }
        case ProcessFamily::Tar: {
            double x = 0.0;
            for (std::size_t t = 0; t < total; ++t) {
                const double phi = x <= spec.tar_threshold ? spec.tar_phi_low : spec.tar_phi_high;
                x = phi * x + rng.next_gaussian();
                if (t >= spec.burn_in) out.push_back(x);
            }
            break;
        }
        case ProcessFamily::LogisticMap: {
            double x = spec.logistic_x0;
            for (std::size_t t = 0; t < total; ++t) {
                x = 4.0 * x * (1.0 - x);
                if (t >= spec.burn_in) out.push_back(x);
            }
            break;
        }
        case ProcessFamily::RandomWalk: {
            double level = 0.0;
            for (std::size_t t = 0; t < spec.n; ++t) {
                level += rng.next_gaussian();
                out.push_back(level);
            }
            break;
        }
        case ProcessFamily::Ar: {
            const auto& phi = spec.ar_coefficients;
            std::vector<double> hist(phi.size(), 0.0);
            for (std::size_t t = 0; t < total; ++t) {
                double x = rng.next_gaussian();
                for (std::size_t i = 0; i < phi.size(); ++i) x += phi[i] * hist[i];
                for (std::size_t i = phi.size(); i-- > 1;) hist[i] = hist[i - 1];
                if (!hist.empty()) hist[0] = x;
                if (t >= spec.burn_in) out.push_back(x);
            }
            break;
        }
        case ProcessFamily::Episodic: {
            // Gaussian base with the bilinear recursion switched on inside the
            // burst ranges. No burn-in: bursts are anchored to output indices.
            double x = 0.0, e_prev = 0.0;
            for (std::size_t t = 0; t < spec.n; ++t) {
                bool in_burst = false;
                for (const auto& [a, b] : spec.episodic_bursts)
                    if (t >= a && t < b) {
                        in_burst = true;
                        break;
                    }
                const double e = rng.next_gaussian();
                x = in_burst ? spec.episodic_burst_b * x * e_prev + e : e;
                e_prev = e;
                out.push_back(x);
            }
            break;
        }
    }
    return out;
}

ProcessSpec ProcessSpec::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ProcessSpec spec;
    const std::string fam = j.at("family").get<std::string>();
    auto it = kFamilyNames.find(fam);
    if (it == kFamilyNames.end()) throw std::invalid_argument("unknown process family: " + fam);
    spec.family = it->second;
    spec.n = j.at("n").get<std::size_t>();
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.burn_in = j.value("burn_in",
                           spec.family == ProcessFamily::LogisticMap ? std::size_t{100}
                                                                     : std::size_t{500});
    spec.t_df = j.value("df", 5.0);
    spec.garch_omega = j.value("omega", 0.05);
    spec.garch_alpha = j.value("alpha", 0.10);
    spec.garch_beta = j.value("beta", 0.80);
    spec.bilinear_b = j.value("b", 0.6);
    spec.tar_threshold = j.value("threshold", 0.0);
    spec.tar_phi_low = j.value("phi_low", 0.5);
    spec.tar_phi_high = j.value("phi_high", -0.5);
    spec.logistic_x0 = j.value("x0", 0.3);
    if (j.contains("coefficients")) spec.ar_coefficients = j["coefficients"].get<std::vector<double>>();
    spec.episodic_burst_b = j.value("burst_b", 0.6);
    if (j.contains("bursts"))
        for (const auto& r : j["bursts"])
            spec.episodic_bursts.emplace_back(r.at(0).get<std::size_t>(),
                                              r.at(1).get<std::size_t>());
    spec.validate();
    return spec;
}

std::string ProcessSpec::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    j["n"] = n;
    j["seed"] = seed;
    j["burn_in"] = burn_in;
    switch (family) {
        case ProcessFamily::StudentTIid:
            j["df"] = t_df;
            break;
        case ProcessFamily::Garch11:
            j["omega"] = garch_omega;
            j["alpha"] = garch_alpha;
            j["beta"] = garch_beta;
            break;
        case ProcessFamily::Bilinear:
            j["b"] = bilinear_b;
            break;
        case ProcessFamily::Tar:
            j["threshold"] = tar_threshold;
            j["phi_low"] = tar_phi_low;
            j["phi_high"] = tar_phi_high;
            break;
        case ProcessFamily::LogisticMap:
            j["x0"] = logistic_x0;
            break;
        case ProcessFamily::Ar:
            j["coefficients"] = ar_coefficients;
            break;
        case ProcessFamily::Episodic: {
            j["burst_b"] = episodic_burst_b;
            auto bursts = nlohmann::ordered_json::array();
            for (const auto& [a, b] : episodic_bursts) bursts.push_back({a, b});
            j["bursts"] = std::move(bursts);
            break;
        }
        default:
            break;
    }
    return j.dump();
}

namespace {

struct TestId {
    std::string name;
    std::size_t lag = 0;
    std::size_t m = 0;
    double eps_multiple = 0.0;
};

TestId parse_test_id(const std::string& id) {
    std::vector<std::string> parts;
    std::stringstream ss(id);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.empty()) throw std::invalid_argument("empty test id");
    TestId t;
    t.name = parts[0];
    if (t.name == "mcleod_li" || t.name == "tsay" || t.name == "arch_lm") {
        if (parts.size() != 2) throw std::invalid_argument("test id '" + id + "' needs a lag");
        t.lag = std::stoul(parts[1]);
    } else if (t.name == "bds") {
        if (parts.size() != 3)
            throw std::invalid_argument("test id '" + id + "' needs dimension and eps multiple");
        t.m = std::stoul(parts[1]);
        t.eps_multiple = std::stod(parts[2]);
    } else if (t.name == "adf" || t.name == "rals" || t.name == "h") {
        if (parts.size() != 1) throw std::invalid_argument("test id '" + id + "' takes no arguments");
    } else {
        throw std::invalid_argument("unknown test id: " + id);
    }
    return t;
}

constexpr std::size_t kUnitRootMaxLag = 4;  // harness-wide, keeps the MC tractable

const RalsCriticalValues& cached_rals_table(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, RalsCriticalValues> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(n);
    if (it == tables.end())
        it = tables.emplace(n, critical_values_rals(n, 2000, 0x5eedULL, kUnitRootMaxLag)).first;
    return it->second;
}

MonteCarloResult run_monte_carlo(const std::string& test_id, const ProcessSpec& process,
                                 std::size_t replications, double alpha, std::uint64_t seed) {
    if (replications < 100)
        throw std::invalid_argument("monte carlo: need at least 100 replications");
    process.validate();
    const TestId id = parse_test_id(test_id);

    std::size_t rejections = 0;
    std::size_t trials = 0;
    for (std::size_t rep = 0; rep < replications; ++rep) {
        ProcessSpec draw = process;
        draw.seed = Rng::substream(seed, rep).next_u64();
        auto series = generate(draw);

        if (id.name == "h") {
            // Window-level rejections pooled across replications.
            WindowSpec wspec;
            wspec.alpha = alpha;
            auto windows = partition_windows(series, wspec);
            for (const auto& w : windows) {
                auto res = h_statistic(w, wspec);
                if (res.degenerate) continue;
                ++trials;
                if (alpha > 0.0 && res.p_value < alpha) ++rejections;
            }
            continue;
        }

        ++trials;
        if (alpha <= 0.0) continue;
        if (id.name == "adf") {
            if (adf(series, kUnitRootMaxLag).reject_at_5pct) ++rejections;
        } else if (id.name == "rals") {
            if (rals(series, kUnitRootMaxLag, cached_rals_table(series.size())).reject_at_5pct)
                ++rejections;
        } else {
            TestOutcome outcome;
            if (id.name == "mcleod_li")
                outcome = mcleod_li(series, id.lag);
            else if (id.name == "tsay")
                outcome = tsay(series, id.lag);
            else if (id.name == "arch_lm")
                outcome = arch_lm(series, id.lag);
            else
                outcome = bds(series, id.m, id.eps_multiple * sample_sd(series));
            if (outcome.p_value && *outcome.p_value < alpha) ++rejections;
        }
    }

    MonteCarloResult result;
    result.test_id = test_id;
    result.process = process;
    result.replications = replications;
    result.alpha = alpha;
    result.rejection_rate =
        trials == 0 ? 0.0 : static_cast<double>(rejections) / static_cast<double>(trials);
    result.standard_error = std::sqrt(result.rejection_rate * (1.0 - result.rejection_rate) /
                                      static_cast<double>(trials == 0 ? 1 : trials));
    return result;
}

}  // namespace

bool known_test_id(const std::string& test_id) {
    try {
        parse_test_id(test_id);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

MonteCarloResult empirical_size(const std::string& test_id, const ProcessSpec& null_template,
                                std::size_t replications, double alpha, std::uint64_t seed) {
    return run_monte_carlo(test_id, null_template, replications, alpha, seed);
}

MonteCarloResult empirical_power(const std::string& test_id, const ProcessSpec& alt_template,
                                 std::size_t replications, double alpha, std::uint64_t seed) {
    return run_monte_carlo(test_id, alt_template, replications, alpha, seed);
}

std::string to_json(const MonteCarloResult& r) {
    nlohmann::ordered_json j;
    j["test_id"] = r.test_id;
    j["process"] = nlohmann::ordered_json::parse(r.process.to_json());
    j["replications"] = r.replications;
    j["alpha"] = r.alpha;
    j["rejection_rate"] = r.rejection_rate;
    j["standard_error"] = r.standard_error;
    return j.dump();
}

std::string to_csv(const MonteCarloResult& r) {
    std::ostringstream os;
    os << "test_id,family,n,replications,alpha,rejection_rate,standard_error\n";
    os << r.test_id << ',' << family_name(r.process.family) << ',' << r.process.n << ','
       << r.replications << ',' << r.alpha << ',' << r.rejection_rate << ','
       << r.standard_error << '\n';
    return os.str();
}

}  // namespace nlscan
