#pragma once

#include "amc/types.hpp"

#include <span>

namespace amc {

/// Sample moments of a complex stream y(n), n = 0..N-1:
///   m20 = mean(y^2)        m21 = mean(|y|^2)   m42 = mean(|y|^4)
///   m41 = mean(|y|^2 y^2)  m63 = mean(|y|^6)
struct MomentSet {
    cplx m20;
    double m21;
    double m42;
    cplx m41;
    double m63;
};

/// One pass over the stream (dispatched kernel).  Throws
/// std::invalid_argument on an empty stream.
MomentSet sample_moments(std::span<const cplx> y);

struct CumulantEstimate {
    double c21; // = m21
    cplx c42;   // imaginary part is structurally zero
    cplx c63;   // imaginary part is roundoff-level
};

/// Zero-mean plug-in cumulant combinations:
///   c21 = m21
///   c42 = m42 - |m20|^2 - 2 m21^2
///   c63 = m63 - 9 m42 m21 - 3 conj(m41) m20 - 3 m41 conj(m20)
///         + 18 |m20|^2 m21 + 12 m21^3
/// No sample-mean subtraction is performed: all supported alphabets are
/// zero-mean by construction, and subtracting a noisy mean estimate would
/// only add variance.
CumulantEstimate cumulants_from_moments(const MomentSet& m);

CumulantEstimate estimate_cumulants(std::span<const cplx> y);
double estimate_c21(std::span<const cplx> y);
cplx estimate_c42(std::span<const cplx> y);
cplx estimate_c63(std::span<const cplx> y);

inline constexpr double kDefaultC63FloorRel = 1e-6;

/// Single-user feature |c42| / |c63|^(2/3).  Throws DegenerateFeatureError
/// when |c63| < c63_floor_rel * c21^3 (the natural sixth-order scale).
double estimate_fc(std::span<const cplx> y,
                   double c63_floor_rel = kDefaultC63FloorRel);

/// Multiuser superclass feature c42 / ((c21 - noise_variance) / M)^2 for M
/// equal-power transmitters.  Throws NegativeSignalPowerError when
/// c21 <= noise_variance.
double estimate_fsc(std::span<const cplx> y, int n_transmitters,
                    double noise_variance);

} // namespace amc
