#pragma once

#include "amc/constellation.hpp"
#include "amc/types.hpp"

#include <span>

namespace amc {

/// Unordered set of M distinct co-channel modulation types, stored in
/// candidate-list order.  theoretical_feature is the sum of the members'
/// c42 cumulants (the asymptotic value of estimate_fsc for equal powers).
struct SuperClass {
    std::vector<ModulationType> members;
    double theoretical_feature;
};

/// All size-m subsets of `candidates` in lexicographic order of candidate
/// indices.  Requires 1 <= m <= candidates.size() and distinct candidates.
std::vector<SuperClass> enumerate_superclasses(
    std::span<const ModulationType> candidates, int m);

/// Nearest-feature decision.  `decided` indexes the candidate (or
/// superclass) list; ties break toward the lowest index.  `margin` is the
/// runner-up distance minus the winning distance (>= 0).
struct ClassVerdict {
    int decided;
    double estimated_feature;
    double margin;
};

/// Index minimizing |theory[i] - estimate|, lowest index on ties; writes
/// the winner-vs-runner-up margin if requested.
int nearest_feature(double estimate, std::span<const double> theory,
                    double* margin = nullptr);

/// Single-user-of-interest classifier on the noise-robust feature
/// |c42|/|c63|^(2/3) against each candidate's theoretical value.
ClassVerdict classify_sumc(std::span<const cplx> y,
                           std::span<const ModulationType> candidates);

/// Baseline fourth-order classifier: |c42 / (c21 - noise_variance)^2|
/// against each candidate's |C42|.
ClassVerdict classify_baseline_c42(std::span<const cplx> y,
                                   std::span<const ModulationType> candidates,
                                   double noise_variance);

/// Multiuser modulation classifier: estimate_fsc against each superclass
/// feature.  All superclasses must have exactly n_transmitters members.
ClassVerdict classify_mumc(std::span<const cplx> y,
                           std::span<const SuperClass> superclasses,
                           int n_transmitters, double noise_variance);

} // namespace amc
