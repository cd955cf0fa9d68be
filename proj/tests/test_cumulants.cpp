#include <doctest.h>

#include "amc/cumulants.hpp"
#include "amc/rng.hpp"
#include "amc/signal.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace amc;

namespace {

// A stream visiting every alphabet point equally often has sample moments
// equal to the exact alphabet moments.
std::vector<cplx> exhaustive_stream(ModulationType m, int repeats) {
    const auto& pts = alphabet(m).points;
    std::vector<cplx> y;
    y.reserve(pts.size() * static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) y.insert(y.end(), pts.begin(), pts.end());
    return y;
}

} // namespace

TEST_CASE("exhaustive alphabet streams reproduce the exact cumulants") {
    for (auto m : kBuiltinModulations) {
        const auto y = exhaustive_stream(m, 3);
        const auto est = estimate_cumulants(y);
        const auto th = theoretical_cumulants(m);
        CHECK(est.c21 == doctest::Approx(th.c21).epsilon(1e-12));
        CHECK(est.c42.real() == doctest::Approx(th.c42).epsilon(1e-12));
        CHECK(est.c42.imag() == 0.0);
        CHECK(est.c63.real() == doctest::Approx(th.c63).epsilon(1e-12));
        CHECK(std::abs(est.c63.imag()) < 1e-12);
    }
}

TEST_CASE("frozen four-point examples") {
    const std::vector<cplx> qpsk_like = {cplx(1, 0), cplx(0, 1), cplx(-1, 0),
                                         cplx(0, -1)};
    CHECK(estimate_c42(qpsk_like).real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(estimate_c63(qpsk_like).real() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(estimate_fc(qpsk_like) == doctest::Approx(0.39685).epsilon(1e-5));

    const std::vector<cplx> bpsk_like = {cplx(1, 0), cplx(-1, 0)};
    CHECK(estimate_c42(bpsk_like).real() == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(estimate_c63(bpsk_like).real() == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("sample moments match the naive long-double oracle") {
    Xoshiro256pp rng(2024);
    std::vector<cplx> y(4097);
    for (auto& v : y) {
        double a, b;
        rng.normal_pair(a, b);
        v = cplx(1.5 * a - 0.3, 0.7 * b + 0.1);
    }
    const auto fast = sample_moments(y);
    const auto slow = oracle::naive_sample_moments(y);
    CHECK(fast.m20.real() == doctest::Approx(slow.m20.real()).epsilon(1e-12));
    CHECK(fast.m20.imag() == doctest::Approx(slow.m20.imag()).epsilon(1e-12));
    CHECK(fast.m21 == doctest::Approx(slow.m21).epsilon(1e-12));
    CHECK(fast.m42 == doctest::Approx(slow.m42).epsilon(1e-12));
    CHECK(fast.m41.real() == doctest::Approx(slow.m41.real()).epsilon(1e-12));
    CHECK(fast.m41.imag() == doctest::Approx(slow.m41.imag()).epsilon(1e-12));
    CHECK(fast.m63 == doctest::Approx(slow.m63).epsilon(1e-12));
}

TEST_CASE("moment inequalities hold on random data") {
    Xoshiro256pp rng(99);
    std::vector<cplx> y(2000);
    for (auto& v : y) {
        double a, b;
        rng.normal_pair(a, b);
        v = cplx(a, b);
    }
    const auto m = sample_moments(y);
    CHECK(m.m42 >= m.m21 * m.m21); // Jensen
    CHECK(m.m63 >= 0.0);
    CHECK(m.m21 >= 0.0);
}

TEST_CASE("empty input and degenerate features throw") {
    CHECK_THROWS_AS(sample_moments({}), std::invalid_argument);
    const std::vector<cplx> zeros(64, cplx(0, 0));
    CHECK_THROWS_AS(estimate_fc(zeros), DegenerateFeatureError);
    // A huge relative floor forces the degenerate branch on healthy data.
    const std::vector<cplx> ok = {cplx(1, 0), cplx(-1, 0), cplx(1, 0),
                                  cplx(-1, 0)};
    CHECK_THROWS_AS(estimate_fc(ok, 1e9), DegenerateFeatureError);
    CHECK_THROWS_AS(estimate_fsc(ok, 0, 1.0), std::invalid_argument);
    // c21 below the noise floor: no signal power left after compensation.
    const std::vector<cplx> faint(256, cplx(0.01, 0.0));
    CHECK_THROWS_AS(estimate_fsc(faint, 2, 1.0), NegativeSignalPowerError);
}

TEST_CASE("noise-free estimates converge at one-in-a-million length") {
    for (auto m : kBuiltinModulations) {
        Scenario sc;
        sc.transmitters = {{m, 1.0, 0.0}};
        sc.noise_variance = 0.0;
        sc.n_symbols = 1000000;
        sc.seed = derive_seed(31337, {static_cast<std::uint64_t>(m)});
        const auto y = synthesize(sc);
        const auto est = estimate_cumulants(y);
        const auto th = theoretical_cumulants(m);
        CHECK(std::abs(est.c42 - cplx(th.c42, 0)) <= 0.01);
        CHECK(std::abs(est.c63 - cplx(th.c63, 0)) <= 0.05);
    }
}

TEST_CASE("circular gaussian noise is invisible to c42 and c63") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        Xoshiro256pp rng(seed);
        std::vector<cplx> g(100000);
        const double s = std::sqrt(0.5); // unit total variance
        for (auto& v : g) {
            double a, b;
            rng.normal_pair(a, b);
            v = cplx(s * a, s * b);
        }
        const auto est = estimate_cumulants(g);
        CHECK(std::abs(est.c42) <= 0.05);
        CHECK(std::abs(est.c63) <= 0.5);
    }
}

TEST_CASE("feature is invariant to scale and phase over many streams") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
        const auto m = kBuiltinModulations[seed % 4];
        Scenario sc;
        sc.transmitters = {{m, 1.0, 0.0}};
        sc.noise_variance = 0.0;
        sc.n_symbols = 512;
        sc.seed = derive_seed(555, {seed});
        const auto y = synthesize(sc);

        Xoshiro256pp rng(derive_seed(556, {seed}));
        const double alpha = rng.uniform(0.1, 10.0);
        const double phi = rng.uniform(0.0, 6.283185307179586);
        const cplx rot = std::polar(1.0, phi);

        std::vector<cplx> scaled(y.size()), rotated(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            scaled[i] = alpha * y[i];
            rotated[i] = rot * y[i];
        }

        const double f0 = estimate_fc(y);
        CHECK(estimate_fc(scaled) == doctest::Approx(f0).epsilon(1e-9));
        CHECK(estimate_fc(rotated) == doctest::Approx(f0).epsilon(1e-9));

        // Cumulant scale laws: c42 ~ alpha^4, c63 ~ alpha^6.
        const auto e0 = estimate_cumulants(y);
        const auto es = estimate_cumulants(scaled);
        const double a4 = alpha * alpha * alpha * alpha;
        CHECK(es.c42.real() ==
              doctest::Approx(a4 * e0.c42.real()).epsilon(1e-9));
        CHECK(es.c63.real() ==
              doctest::Approx(a4 * alpha * alpha * e0.c63.real()).epsilon(1e-9));
        // Phase rotation leaves all three cumulants unchanged.
        const auto er = estimate_cumulants(rotated);
        CHECK(er.c21 == doctest::Approx(e0.c21).epsilon(1e-9));
        CHECK(er.c42.real() == doctest::Approx(e0.c42.real()).epsilon(1e-9));
        CHECK(std::abs(er.c63 - e0.c63) <=
              1e-9 * std::max(1.0, std::abs(e0.c63)));
        checked += 6;
    }
    CHECK(checked >= 1000);
}

TEST_CASE("fsc uses the per-transmitter power normalization") {
    // Noise-free single BPSK at amplitude a, claimed as M transmitters:
    // c21 = a^2, c42 = -2 a^4, so fsc = -2 M^2 exactly.
    Scenario sc;
    sc.transmitters = {{ModulationType::BPSK, 2.0, 0.0}};
    sc.noise_variance = 0.0;
    sc.n_symbols = 4096;
    sc.seed = 8;
    const auto y = synthesize(sc);
    CHECK(estimate_fsc(y, 1, 0.0) == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(estimate_fsc(y, 2, 0.0) == doctest::Approx(-8.0).epsilon(1e-9));
    CHECK(estimate_fsc(y, 3, 0.0) == doctest::Approx(-18.0).epsilon(1e-9));
}
