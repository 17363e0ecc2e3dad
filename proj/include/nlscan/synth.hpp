#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nlscan {

enum class ProcessFamily {
    GaussianIid,
    StudentTIid,
    Garch11,
    Bilinear,
    Tar,
    LogisticMap,
    RandomWalk,
    Ar,
    Episodic,
};

// Seeded specification of a data-generating process. Identical specs always
// produce identical output.
struct ProcessSpec {
    ProcessFamily family = ProcessFamily::GaussianIid;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t burn_in = 500;

    // family parameters (used per family)
    double t_df = 5.0;                                  // student_t_iid
    double garch_omega = 0.05, garch_alpha = 0.10, garch_beta = 0.80;
    double bilinear_b = 0.6;
    double tar_threshold = 0.0, tar_phi_low = 0.5, tar_phi_high = -0.5;
    double logistic_x0 = 0.3;
    std::vector<double> ar_coefficients;
    // episodic: base is gaussian_iid, bursts use the bilinear recursion inside
    // the given half-open observation ranges (post burn-in indices).
    double episodic_burst_b = 0.6;
    std::vector<std::pair<std::size_t, std::size_t>> episodic_bursts;

    void validate() const;  // throws std::invalid_argument

    static ProcessSpec from_json(const std::string& text);
    std::string to_json() const;
};

std::vector<double> generate(const ProcessSpec& spec);

struct MonteCarloResult {
    std::string test_id;
    ProcessSpec process;
    std::size_t replications = 0;
    double alpha = 0.05;
    double rejection_rate = 0.0;
    double standard_error = 0.0;
};

// Test identifiers understood by the harness:
//   mcleod_li:LAG   tsay:LAG   arch_lm:LAG   bds:M:EPS_MULT   adf   rals   h
// The `h` id counts rejections per window, pooled across replications.
bool known_test_id(const std::string& test_id);

MonteCarloResult empirical_size(const std::string& test_id, const ProcessSpec& null_template,
                                std::size_t replications, double alpha, std::uint64_t seed);

MonteCarloResult empirical_power(const std::string& test_id, const ProcessSpec& alt_template,
                                 std::size_t replications, double alpha, std::uint64_t seed);

std::string to_json(const MonteCarloResult& result);
std::string to_csv(const MonteCarloResult& result);

}  // namespace nlscan
