#include "amc/classify.hpp"

#include "amc/cumulants.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace amc {

std::vector<SuperClass> enumerate_superclasses(
    std::span<const ModulationType> candidates, int m) {
    const int q = static_cast<int>(candidates.size());
    if (m < 1 || m > q)
        throw std::invalid_argument("enumerate_superclasses: need 1 <= m <= candidates");
    if (std::set<ModulationType>(candidates.begin(), candidates.end()).size() !=
        candidates.size())
        throw std::invalid_argument("enumerate_superclasses: duplicate candidates");

    std::vector<SuperClass> out;
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        SuperClass sc;
        sc.theoretical_feature = 0.0;
        for (int i : idx) {
            sc.members.push_back(candidates[static_cast<std::size_t>(i)]);
            sc.theoretical_feature += theoretical_cumulants(sc.members.back()).c42;
        }
        out.push_back(std::move(sc));
        // next lexicographic combination
        int k = m - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == q - m + k) --k;
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
        for (int i = k + 1; i < m; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

int nearest_feature(double estimate, std::span<const double> theory, double* margin) {
    if (theory.empty())
        throw std::invalid_argument("nearest_feature: empty feature list");
    int best = 0;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(theory.size()); ++i) {
        const double d = std::abs(theory[static_cast<std::size_t>(i)] - estimate);
        if (d < d1) {
            d2 = d1;
            d1 = d;
            best = i;
        } else if (d < d2) {
            d2 = d;
        }
    }
    if (margin) *margin = d2 - d1;
    return best;
}

ClassVerdict classify_sumc(std::span<const cplx> y,
                           std::span<const ModulationType> candidates) {
    if (candidates.empty())
        throw std::invalid_argument("classify_sumc: no candidates");
    std::vector<double> theory;
    theory.reserve(candidates.size());
    for (ModulationType m : candidates) theory.push_back(theoretical_fc(m));
    ClassVerdict v;
    v.estimated_feature = estimate_fc(y);
    v.decided = nearest_feature(v.estimated_feature, theory, &v.margin);
    return v;
}

ClassVerdict classify_baseline_c42(std::span<const cplx> y,
                                   std::span<const ModulationType> candidates,
                                   double noise_variance) {
    if (candidates.empty())
        throw std::invalid_argument("classify_baseline_c42: no candidates");
    std::vector<double> theory;
    theory.reserve(candidates.size());
    for (ModulationType m : candidates)
        theory.push_back(std::abs(theoretical_cumulants(m).c42));

    const CumulantEstimate e = estimate_cumulants(y);
    const double signal_power = e.c21 - noise_variance;
    if (signal_power <= 0.0)
        throw NegativeSignalPowerError(
            "classify_baseline_c42: c21 = " + std::to_string(e.c21) +
            " does not exceed noise variance " + std::to_string(noise_variance));
    ClassVerdict v;
    v.estimated_feature = std::abs(e.c42) / (signal_power * signal_power);
    v.decided = nearest_feature(v.estimated_feature, theory, &v.margin);
    return v;
}

ClassVerdict classify_mumc(std::span<const cplx> y,
                           std::span<const SuperClass> superclasses,
                           int n_transmitters, double noise_variance) {
    if (superclasses.empty())
        throw std::invalid_argument("classify_mumc: no super classes");
    std::vector<double> theory;
    theory.reserve(superclasses.size());
    for (const auto& sc : superclasses) {
        if (static_cast<int>(sc.members.size()) != n_transmitters)
            throw std::invalid_argument(
                "classify_mumc: super class size != n_transmitters");
        theory.push_back(sc.theoretical_feature);
    }
    ClassVerdict v;
    v.estimated_feature = estimate_fsc(y, n_transmitters, noise_variance);
    v.decided = nearest_feature(v.estimated_feature, theory, &v.margin);
    return v;
}

} // namespace amc
