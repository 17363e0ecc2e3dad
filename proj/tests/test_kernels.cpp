#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nlscan/kernels.hpp"
#include "nlscan/rng.hpp"

using namespace nlscan;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_gaussian();
    return v;
}

}  // namespace

TEST_CASE("scalar kernel basics") {
    std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> b{2.0, 2.0, 2.0, 2.0, 2.0};
    CHECK(kernels::detail::sum_scalar(a) == doctest::Approx(15.0));
    CHECK(kernels::detail::dot_scalar(a, b) == doctest::Approx(30.0));
    CHECK(kernels::detail::sum_sq_scalar(a) == doctest::Approx(55.0));
    // (1*2*3 + 2*3*4) with r=1, s=2
    CHECK(kernels::detail::triple_lag_sum_scalar(std::vector<double>{1, 2, 3, 4}, 1, 2) ==
          doctest::Approx(30.0));
    CHECK(kernels::detail::count_within_scalar(a, 3.0, 1.0) == 3);
    // autocov at lag 1 around mean 3: (1-3)(2-3)+(2-3)(3-3)+(3-3)(4-3)+(4-3)(5-3)
    CHECK(kernels::detail::autocov_sum_scalar(a, 1, 3.0) == doctest::Approx(4.0));
}

TEST_CASE("triple_lag_sum rejects bad lags") {
    std::vector<double> z{1.0, 2.0, 3.0};
    CHECK_THROWS(kernels::triple_lag_sum(z, 2, 1));
    CHECK_THROWS(kernels::triple_lag_sum(z, 1, 3));
}

TEST_CASE("simd backend matches scalar reference") {
    if (!kernels::detail::avx2_available()) {
        MESSAGE("avx2 unavailable, skipping equivalence checks");
        return;
    }
    // Lengths chosen to exercise remainders around the 4-lane width.
    for (std::size_t n : {1u, 3u, 4u, 5u, 7u, 8u, 33u, 100u, 1001u}) {
        auto a = random_vec(n, 11 * n + 1);
        auto b = random_vec(n, 17 * n + 3);
        const double tol = 1e-12 * static_cast<double>(n) + 1e-13;
        CHECK(kernels::detail::sum_avx2(a) ==
              doctest::Approx(kernels::detail::sum_scalar(a)).epsilon(tol));
        CHECK(kernels::detail::dot_avx2(a, b) ==
              doctest::Approx(kernels::detail::dot_scalar(a, b)).epsilon(tol));
        CHECK(kernels::detail::sum_sq_avx2(a) ==
              doctest::Approx(kernels::detail::sum_sq_scalar(a)).epsilon(tol));
        for (std::size_t lag : {0u, 1u, 2u}) {
            if (lag >= n) continue;
            CHECK(kernels::detail::autocov_sum_avx2(a, lag, 0.25) ==
                  doctest::Approx(kernels::detail::autocov_sum_scalar(a, lag, 0.25)).epsilon(tol));
        }
        if (n > 3) {
            CHECK(kernels::detail::triple_lag_sum_avx2(a, 1, 3) ==
                  doctest::Approx(kernels::detail::triple_lag_sum_scalar(a, 1, 3)).epsilon(tol));
        }
        CHECK(kernels::detail::count_within_avx2(a, a[0], 0.8) ==
              kernels::detail::count_within_scalar(a, a[0], 0.8));
    }
}

TEST_CASE("backend forcing round trips") {
    const std::string original(kernels::backend_name());
    kernels::force_backend("scalar");
    CHECK(kernels::backend_name() == "scalar");
    CHECK_THROWS(kernels::force_backend("sse9"));
    kernels::force_backend(original);
    CHECK(kernels::backend_name() == original);
}
