#include "amc/cumulants.hpp"

#include "amc/kernels.hpp"

#include <cmath>

namespace amc {

MomentSet sample_moments(std::span<const cplx> y) {
    if (y.empty()) throw std::invalid_argument("sample_moments: empty stream");
    const auto s = kernels::moment_sums(y.data(), y.size());
    const double inv = 1.0 / static_cast<double>(y.size());
    MomentSet m;
    m.m20 = cplx(s.y2_re, s.y2_im) * inv;
    m.m21 = s.a2 * inv;
    m.m42 = s.a4 * inv;
    m.m41 = cplx(s.a2y2_re, s.a2y2_im) * inv;
    m.m63 = s.a6 * inv;
    return m;
}

CumulantEstimate cumulants_from_moments(const MomentSet& m) {
    const double m20_sq = std::norm(m.m20);
    CumulantEstimate e;
    e.c21 = m.m21;
    e.c42 = cplx(m.m42 - m20_sq - 2.0 * m.m21 * m.m21, 0.0);
    e.c63 = cplx(m.m63, 0.0) - 9.0 * m.m42 * m.m21 - 3.0 * std::conj(m.m41) * m.m20 -
            3.0 * m.m41 * std::conj(m.m20) + 18.0 * m20_sq * m.m21 +
            12.0 * m.m21 * m.m21 * m.m21;
    return e;
}

CumulantEstimate estimate_cumulants(std::span<const cplx> y) {
    return cumulants_from_moments(sample_moments(y));
}

double estimate_c21(std::span<const cplx> y) { return sample_moments(y).m21; }

cplx estimate_c42(std::span<const cplx> y) { return estimate_cumulants(y).c42; }

cplx estimate_c63(std::span<const cplx> y) { return estimate_cumulants(y).c63; }

double estimate_fc(std::span<const cplx> y, double c63_floor_rel) {
    const CumulantEstimate e = estimate_cumulants(y);
    const double c63_mag = std::abs(e.c63);
    const double floor = c63_floor_rel * std::abs(e.c21 * e.c21 * e.c21);
    if (c63_mag <= floor)
        throw DegenerateFeatureError("estimate_fc: |c63| = " + std::to_string(c63_mag) +
                                     " below floor " + std::to_string(floor));
    return std::abs(e.c42) / std::pow(c63_mag, 2.0 / 3.0);
}

double estimate_fsc(std::span<const cplx> y, int n_transmitters,
                    double noise_variance) {
    if (n_transmitters < 1)
        throw std::invalid_argument("estimate_fsc: n_transmitters < 1");
    if (noise_variance < 0.0)
        throw std::invalid_argument("estimate_fsc: negative noise variance");
    const CumulantEstimate e = estimate_cumulants(y);
    const double signal_power = e.c21 - noise_variance;
    if (signal_power <= 0.0)
        throw NegativeSignalPowerError(
            "estimate_fsc: c21 = " + std::to_string(e.c21) +
            " does not exceed noise variance " + std::to_string(noise_variance));
    const double per_tx = signal_power / static_cast<double>(n_transmitters);
    // The zero-mean plug-in c42 is structurally real; take it exactly.
    return e.c42.real() / (per_tx * per_tx);
}

} // namespace amc
