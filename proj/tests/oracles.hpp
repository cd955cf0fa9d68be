// Test-local oracles, written independently of the library internals:
// exact moments of a superposition of alphabets by brute force over the
// joint symbol space, and a naive direct-formula cumulant estimator.
#pragma once

#include "amc/constellation.hpp"
#include "amc/cumulants.hpp"

#include <span>
#include <vector>

namespace oracle {

using amc::cplx;

// Exact moments of z = sum_k a_k x_k with x_k uniform on alphabet_k,
// independent across k, by enumerating the joint alphabet.
inline amc::MomentSet joint_moments(
    const std::vector<std::vector<cplx>>& alphabets,
    const std::vector<double>& amplitudes) {
    std::size_t total = 1;
    for (const auto& a : alphabets) total *= a.size();
    amc::MomentSet m{};
    cplx m20{}, m41{};
    double m21 = 0, m42 = 0, m63 = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        cplx z = 0;
        for (std::size_t k = 0; k < alphabets.size(); ++k) {
            const auto& a = alphabets[k];
            z += amplitudes[k] * a[rest % a.size()];
            rest /= a.size();
        }
        const double p2 = std::norm(z);
        m20 += z * z;
        m21 += p2;
        m42 += p2 * p2;
        m41 += p2 * z * z;
        m63 += p2 * p2 * p2;
    }
    const double inv = 1.0 / static_cast<double>(total);
    m.m20 = m20 * inv;
    m.m21 = m21 * inv;
    m.m42 = m42 * inv;
    m.m41 = m41 * inv;
    m.m63 = m63 * inv;
    return m;
}

// Zero-mean cumulants from moments, written out independently.
struct Cumulants {
    double c21;
    cplx c42;
    cplx c63;
};

inline Cumulants cumulants_of(const amc::MomentSet& m) {
    Cumulants c;
    c.c21 = m.m21;
    c.c42 = cplx(m.m42, 0.0) - std::norm(m.m20) - 2.0 * m.m21 * m.m21;
    c.c63 = cplx(m.m63, 0.0) - 9.0 * m.m42 * m.m21 -
            3.0 * std::conj(m.m41) * m.m20 - 3.0 * m.m41 * std::conj(m.m20) +
            18.0 * std::norm(m.m20) * m.m21 + 12.0 * m.m21 * m.m21 * m.m21;
    return c;
}

// Naive direct-loop sample moments (no kernel dispatch, long double sums).
inline amc::MomentSet naive_sample_moments(std::span<const cplx> y) {
    long double m20r = 0, m20i = 0, m21 = 0, m42 = 0, m41r = 0, m41i = 0,
                m63 = 0;
    for (const cplx& v : y) {
        const long double re = v.real(), im = v.imag();
        const long double p2 = re * re + im * im;
        const long double y2r = re * re - im * im;
        const long double y2i = 2 * re * im;
        m20r += y2r;
        m20i += y2i;
        m21 += p2;
        m42 += p2 * p2;
        m41r += p2 * y2r;
        m41i += p2 * y2i;
        m63 += p2 * p2 * p2;
    }
    const long double inv = 1.0L / static_cast<long double>(y.size());
    amc::MomentSet m;
    m.m20 = cplx(static_cast<double>(m20r * inv), static_cast<double>(m20i * inv));
    m.m21 = static_cast<double>(m21 * inv);
    m.m42 = static_cast<double>(m42 * inv);
    m.m41 = cplx(static_cast<double>(m41r * inv), static_cast<double>(m41i * inv));
    m.m63 = static_cast<double>(m63 * inv);
    return m;
}

} // namespace oracle
