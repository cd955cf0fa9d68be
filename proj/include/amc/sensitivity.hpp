#pragma once

#include "amc/classify.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace amc {

// Analytical sensitivity of the multiuser classifier to per-transmitter
// amplitude deviations.  Member k of a superclass transmits with amplitude
// (1 + delta_k); the first member (anchor) is fixed at delta = 0 and the
// remaining M - 1 deltas are the free coordinates.

/// Perturbed superclass feature for the power profile |1 + delta_k|^2:
///   f = sum_k w_k^2 C42_k / (sum_k w_k / M)^2,  w_k = (1 + delta_k)^2
/// with delta_1 = 0.  deltas.size() must be members.size() - 1.
double fsc_perturbed(std::span<const double> member_c42, std::span<const double> deltas);
double fsc_perturbed(const SuperClass& sc, std::span<const double> deltas);

/// Midpoints between feature-sorted adjacent superclasses; size() - 1
/// values in increasing order.
std::vector<double> decision_thresholds(std::span<const SuperClass> scs);

/// Closed interval endpoints; lo may be -inf and hi +inf.
struct Interval {
    double lo;
    double hi;
};

struct RegionOptions {
    double window = 4.0;      // initial scan half-width in delta
    double step = 1e-3;       // scan resolution
    double residual_tol = 1e-10; // bisection stop: |f - threshold| <= tol
    int max_widenings = 8;    // window doublings allowed
};

/// Deviation intervals (in increasing order, disjoint) where the true
/// superclass at index sc_index is misclassified, for the one-dimensional
/// problem (two-member superclasses, delta on the second member).  Found
/// by scanning f - threshold for sign changes and bisecting each bracket;
/// the window widens until the edge verdicts match the asymptotic verdict
/// at delta -> +-inf (f -> M^2 C42 of the delta-carrying member).
std::vector<Interval> error_region_1d(int sc_index,
                                      std::span<const SuperClass> scs,
                                      const RegionOptions& opt = {});

/// P(correct | delta ~ N(0, sigma_delta^2)) = 1 - Gaussian mass of the
/// error region.  sigma_delta = 0 returns exactly 1.
double p_correct_1d(int sc_index, std::span<const SuperClass> scs,
                    double sigma_delta, const RegionOptions& opt = {});

/// True when (d1, d2) leads to a misclassification of superclass sc_index
/// in the two-dimensional problem (three-member superclasses).
/// error_indicator_2d(i, scs, 0, 0) is always false.
bool error_indicator_2d(int sc_index, std::span<const SuperClass> scs,
                        double d1, double d2);

/// P(correct) for (d1, d2) i.i.d. N(0, sigma_delta^2): exact Gaussian
/// measure of the correct set along d1 per section, integrated over d2
/// with Gauss-Legendre panels on [-8 sigma, 8 sigma]; the panel count
/// doubles until two successive estimates agree within 5e-4.
double p_correct_2d(int sc_index, std::span<const SuperClass> scs,
                    double sigma_delta, const RegionOptions& opt = {});

/// Monte Carlo oracle over dim = members - 1 Gaussian deviations; returns
/// the correct-classification fraction, with the binomial standard error
/// in *stderr_out if non-null.
double mc_p_correct(int sc_index, std::span<const SuperClass> scs,
                    double sigma_delta, long n_draws, std::uint64_t seed,
                    double* stderr_out = nullptr);

/// One point of a decision-boundary contour f_sc(d1, d2) = threshold.
struct ContourPoint {
    int sc_index;
    double threshold;
    double delta2;
    double delta1;
};

/// All contour points of every decision threshold for true superclass
/// sc_index, scanned over a delta2 grid (multiple delta1 roots per delta2
/// are all emitted).
std::vector<ContourPoint> threshold_contours(int sc_index,
                                             std::span<const SuperClass> scs,
                                             double d2_lo, double d2_hi,
                                             double d2_step,
                                             const RegionOptions& opt = {});

/// Exact delta1 roots of f = threshold along a section: solving the
/// quadratic (c_carrier - t/M^2) u^2 - (2 t s0/M^2) u + c0 - (t/M^2) s0^2 = 0
/// for u = (1 + delta1)^2 >= 0, where s0 / c0 are the fixed members'
/// weight / weighted-c42 sums.  Both quadratic roots and both signs of
/// delta1 = -1 +- sqrt(u) are returned, sorted.
std::vector<double> boundary_delta1_exact(double c_carrier, double c0,
                                          double s0, int m, double threshold);

/// Precomputed closed-form contour branches for the four-superclass,
/// three-transmitter problem over {BPSK, QPSK, PAM4, QAM16}:
///   delta1 = -1 +- k * sqrt(l * (1 + (1 + delta2)^2) +- j * sqrt(P(delta2)))
/// with P a quartic (coefficients in ascending powers).  Coefficients are
/// stored to 3-4 significant figures, so expect only ~1e-3 agreement with
/// the numeric contours; kept as independent spot-check targets.
struct ClosedFormBoundary {
    std::array<ModulationType, 3> members; // anchor, delta1 carrier, delta2 carrier
    double threshold;
    double k;
    double l;
    double j;
    std::array<double, 5> poly;
};

std::span<const ClosedFormBoundary> closed_form_boundaries();

/// Evaluate one branch; outer_sign picks the +-k term, inner_sign the
/// +-j term.  Empty when either radicand is negative.
std::optional<double> closed_form_delta1(const ClosedFormBoundary& b,
                                         double delta2, int outer_sign,
                                         int inner_sign);

} // namespace amc
