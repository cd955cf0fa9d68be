#include <doctest.h>

#include "amc/kernels.hpp"
#include "amc/rng.hpp"
#include "amc/types.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace amc;
using namespace amc::kernels;

namespace {

std::vector<cplx> random_stream(std::size_t n, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    std::vector<cplx> y(n);
    for (auto& v : y) {
        double a, b;
        rng.normal_pair(a, b);
        v = cplx(a, b);
    }
    return y;
}

void check_sums_close(const MomentSums& a, const MomentSums& b, double tol) {
    CHECK(a.y2_re == doctest::Approx(b.y2_re).epsilon(tol));
    CHECK(a.y2_im == doctest::Approx(b.y2_im).epsilon(tol));
    CHECK(a.a2 == doctest::Approx(b.a2).epsilon(tol));
    CHECK(a.a4 == doctest::Approx(b.a4).epsilon(tol));
    CHECK(a.a6 == doctest::Approx(b.a6).epsilon(tol));
    CHECK(a.a2y2_re == doctest::Approx(b.a2y2_re).epsilon(tol));
    CHECK(a.a2y2_im == doctest::Approx(b.a2y2_im).epsilon(tol));
}

} // namespace

TEST_CASE("scalar moment sums match a naive loop") {
    const auto y = random_stream(1001, 1);
    MomentSums naive{};
    for (const auto& v : y) {
        const double re = v.real(), im = v.imag();
        const double p2 = re * re + im * im;
        naive.y2_re += re * re - im * im;
        naive.y2_im += 2 * re * im;
        naive.a2 += p2;
        naive.a4 += p2 * p2;
        naive.a6 += p2 * p2 * p2;
        naive.a2y2_re += p2 * (re * re - im * im);
        naive.a2y2_im += p2 * 2 * re * im;
    }
    check_sums_close(moment_sums_scalar(y.data(), y.size()), naive, 1e-12);
}

#ifdef AMC_HAVE_AVX2
TEST_CASE("avx2 and scalar kernels agree") {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                          std::size_t{7}, std::size_t{64}, std::size_t{1000},
                          std::size_t{100001}}) {
        const auto y = random_stream(n, 77 + n);
        check_sums_close(moment_sums_avx2(y.data(), n),
                         moment_sums_scalar(y.data(), n), 1e-11);
    }
}

TEST_CASE("avx2 and scalar scaled_add agree") {
    for (std::size_t n : {std::size_t{1}, std::size_t{5}, std::size_t{1024},
                          std::size_t{4099}}) {
        const auto x = random_stream(n, 3 * n + 1);
        std::vector<cplx> acc_s(n, cplx(0.25, -0.5)), acc_v = acc_s;
        scaled_add_scalar(acc_s.data(), x.data(), 1.7, n);
        scaled_add_avx2(acc_v.data(), x.data(), 1.7, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(acc_s[i].real() == doctest::Approx(acc_v[i].real()).epsilon(1e-14));
            CHECK(acc_s[i].imag() == doctest::Approx(acc_v[i].imag()).epsilon(1e-14));
        }
    }
}
#endif

TEST_CASE("kernel selection is visible and switchable") {
    const std::string original(active_kernel());
    CHECK((original == "scalar" || original == "avx2"));
    CHECK(select_kernel("scalar"));
    CHECK(active_kernel() == "scalar");
    const auto y = random_stream(257, 9);
    check_sums_close(moment_sums(y.data(), y.size()),
                     moment_sums_scalar(y.data(), y.size()), 1e-15);
#ifdef AMC_HAVE_AVX2
    if (select_kernel("avx2")) {
        CHECK(active_kernel() == "avx2");
        check_sums_close(moment_sums(y.data(), y.size()),
                         moment_sums_avx2(y.data(), y.size()), 1e-15);
    }
#endif
    CHECK(!select_kernel("neon"));
    select_kernel(original);
}

TEST_CASE("chunked accumulation merges to the whole-stream sums") {
    const auto y = random_stream(10000, 5);
    const auto whole = moment_sums_scalar(y.data(), y.size());
    MomentSums merged{};
    const std::size_t chunk = 17;
    for (std::size_t i = 0; i < y.size(); i += chunk) {
        const std::size_t len = std::min(chunk, y.size() - i);
        merged += moment_sums_scalar(y.data() + i, len);
    }
    check_sums_close(merged, whole, 1e-12);
}
