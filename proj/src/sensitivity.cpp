#include "amc/sensitivity.hpp"

#include "amc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

/// The perturbed feature restricted to one free coordinate:
///   f(d) = (c0 + u^2 c_carrier) / ((s0 + u) / m)^2,  u = (1 + d)^2,
/// where s0 / c0 collect the fixed members' weights and weighted cumulants.
struct Section {
    double c_carrier;
    double c0;
    double s0;
    int m;

    double operator()(double d) const {
        const double u = (1.0 + d) * (1.0 + d);
        const double den = (s0 + u) / static_cast<double>(m);
        return (c0 + u * u * c_carrier) / (den * den);
    }
    double asymptote() const { return c_carrier * static_cast<double>(m * m); }
};

std::vector<double> features_of(std::span<const SuperClass> scs) {
    std::vector<double> f;
    f.reserve(scs.size());
    for (const auto& sc : scs) f.push_back(sc.theoretical_feature);
    return f;
}

double member_c42(const SuperClass& sc, std::size_t i) {
    return theoretical_cumulants(sc.members[i]).c42;
}

/// All roots of f = t in [-w, w]: sign-change scan at opt.step, then
/// bisection until |f - t| <= residual_tol.
void collect_roots(const Section& f, double t, double w, const RegionOptions& opt,
                   std::vector<double>& roots) {
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * w / opt.step));
    double x_prev = -w;
    double g_prev = f(x_prev) - t;
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = -w + 2.0 * w * static_cast<double>(i) / static_cast<double>(n);
        const double g = f(x) - t;
        if (g_prev == 0.0) roots.push_back(x_prev);
        if (g_prev * g < 0.0) {
            double a = x_prev, b = x;
            double ga = g_prev;
            double mid = 0.5 * (a + b);
            for (int it = 0; it < 128; ++it) {
                mid = 0.5 * (a + b);
                const double gm = f(mid) - t;
                if (std::abs(gm) <= opt.residual_tol ||
                    (b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                   (1.0 + std::abs(mid)))
                    break;
                if ((ga < 0.0) == (gm < 0.0)) {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(mid);
        }
        x_prev = x;
        g_prev = g;
    }
    if (g_prev == 0.0) roots.push_back(x_prev);
}

struct CellDecomposition {
    std::vector<double> edges;  // sorted crossing points
    std::vector<int> verdicts;  // edges.size() + 1 entries
};

/// Decompose the d axis into constant-verdict cells.  The scan window
/// doubles until the edge verdicts agree with the asymptotic one, so the
/// unbounded tail cells are safe to label by their window-edge verdict.
CellDecomposition compute_cells(const Section& f, std::span<const double> features,
                                std::span<const double> thresholds,
                                const RegionOptions& opt) {
    double w = opt.window;
    const int asym = nearest_feature(f.asymptote(), features);
    for (int i = 0; i < opt.max_widenings; ++i) {
        if (nearest_feature(f(-w), features) == asym &&
            nearest_feature(f(w), features) == asym)
            break;
        w *= 2.0;
    }

    std::vector<double> roots;
    for (double t : thresholds) collect_roots(f, t, w, opt, roots);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return b - a <= 1e-12; }),
                roots.end());

    CellDecomposition cells;
    cells.edges = roots;
    if (roots.empty()) {
        cells.verdicts.push_back(nearest_feature(f(0.0), features));
        return cells;
    }
    // Tail verdicts from the window edges (constant out there by the widen
    // check); interior cells from their midpoints.
    cells.verdicts.push_back(nearest_feature(f(-w), features));
    for (std::size_t i = 1; i < roots.size(); ++i)
        cells.verdicts.push_back(
            nearest_feature(f(0.5 * (roots[i - 1] + roots[i])), features));
    cells.verdicts.push_back(nearest_feature(f(w), features));
    return cells;
}

/// Merge adjacent same-verdict cells and keep those with verdict != want.
std::vector<Interval> cells_to_error_intervals(const CellDecomposition& cells,
                                               int want) {
    std::vector<Interval> out;
    const std::size_t n_cells = cells.verdicts.size();
    for (std::size_t i = 0; i < n_cells; ++i) {
        if (cells.verdicts[i] == want) continue;
        const double lo = (i == 0) ? -kInf : cells.edges[i - 1];
        double hi = (i == n_cells - 1) ? kInf : cells.edges[i];
        std::size_t j = i;
        while (j + 1 < n_cells && cells.verdicts[j + 1] != want) {
            ++j;
            hi = (j == n_cells - 1) ? kInf : cells.edges[j];
        }
        out.push_back({lo, hi});
        i = j;
    }
    return out;
}

double gaussian_mass(const std::vector<Interval>& intervals, double sigma) {
    double mass = 0.0;
    for (const auto& iv : intervals)
        mass += normal_cdf(iv.hi / sigma) - normal_cdf(iv.lo / sigma);
    return mass;
}

Section section_1d(const SuperClass& sc) {
    return Section{member_c42(sc, 1), member_c42(sc, 0), 1.0, 2};
}

/// Section along d1 for fixed d2 in the three-member problem.
Section section_2d(const SuperClass& sc, double d2) {
    const double v = (1.0 + d2) * (1.0 + d2);
    return Section{member_c42(sc, 1), member_c42(sc, 0) + v * v * member_c42(sc, 2),
                   1.0 + v, 3};
}

void require_members(const SuperClass& sc, std::size_t m, const char* who) {
    if (sc.members.size() != m)
        throw std::invalid_argument(std::string(who) + ": super class must have " +
                                    std::to_string(m) + " members");
}

void require_index(int sc_index, std::span<const SuperClass> scs, const char* who) {
    if (sc_index < 0 || sc_index >= static_cast<int>(scs.size()))
        throw std::invalid_argument(std::string(who) + ": sc_index out of range");
}

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1]
/// (Newton iteration on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace

double fsc_perturbed(std::span<const double> member_c42s,
                     std::span<const double> deltas) {
    if (member_c42s.empty())
        throw std::invalid_argument("fsc_perturbed: no members");
    if (deltas.size() + 1 != member_c42s.size())
        throw std::invalid_argument("fsc_perturbed: need one delta per non-anchor member");
    double num = member_c42s[0];
    double den = 1.0;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double w = (1.0 + deltas[k]) * (1.0 + deltas[k]);
        num += w * w * member_c42s[k + 1];
        den += w;
    }
    const double per_tx = den / static_cast<double>(member_c42s.size());
    return num / (per_tx * per_tx);
}

double fsc_perturbed(const SuperClass& sc, std::span<const double> deltas) {
    std::vector<double> c42s;
    c42s.reserve(sc.members.size());
    for (std::size_t i = 0; i < sc.members.size(); ++i)
        c42s.push_back(member_c42(sc, i));
    return fsc_perturbed(c42s, deltas);
}

std::vector<double> decision_thresholds(std::span<const SuperClass> scs) {
    if (scs.size() < 2)
        throw std::invalid_argument("decision_thresholds: need >= 2 super classes");
    std::vector<double> f = features_of(scs);
    std::sort(f.begin(), f.end());
    std::vector<double> t;
    t.reserve(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) {
        if (f[i] - f[i - 1] <= 0.0)
            throw std::invalid_argument("decision_thresholds: features not distinct");
        t.push_back(0.5 * (f[i - 1] + f[i]));
    }
    return t;
}

std::vector<Interval> error_region_1d(int sc_index, std::span<const SuperClass> scs,
                                      const RegionOptions& opt) {
    require_index(sc_index, scs, "error_region_1d");
    for (const auto& sc : scs) require_members(sc, 2, "error_region_1d");
    const auto features = features_of(scs);
    const auto thresholds = decision_thresholds(scs);
    const auto cells = compute_cells(section_1d(scs[static_cast<std::size_t>(sc_index)]),
                                     features, thresholds, opt);
    return cells_to_error_intervals(cells, sc_index);
}

double p_correct_1d(int sc_index, std::span<const SuperClass> scs, double sigma_delta,
                    const RegionOptions& opt) {
    if (sigma_delta < 0.0)
        throw std::invalid_argument("p_correct_1d: negative sigma_delta");
    if (sigma_delta == 0.0) return 1.0;
    const auto region = error_region_1d(sc_index, scs, opt);
    return 1.0 - gaussian_mass(region, sigma_delta);
}

bool error_indicator_2d(int sc_index, std::span<const SuperClass> scs, double d1,
                        double d2) {
    require_index(sc_index, scs, "error_indicator_2d");
    require_members(scs[static_cast<std::size_t>(sc_index)], 3, "error_indicator_2d");
    const double deltas[2] = {d1, d2};
    const double f = fsc_perturbed(scs[static_cast<std::size_t>(sc_index)], deltas);
    const auto features = features_of(scs);
    return nearest_feature(f, features) != sc_index;
}

double p_correct_2d(int sc_index, std::span<const SuperClass> scs, double sigma_delta,
                    const RegionOptions& opt) {
    require_index(sc_index, scs, "p_correct_2d");
    require_members(scs[static_cast<std::size_t>(sc_index)], 3, "p_correct_2d");
    if (sigma_delta < 0.0)
        throw std::invalid_argument("p_correct_2d: negative sigma_delta");
    if (sigma_delta == 0.0) return 1.0;

    const SuperClass& sc = scs[static_cast<std::size_t>(sc_index)];
    const auto features = features_of(scs);
    const auto thresholds = decision_thresholds(scs);

    // Gaussian measure along d1 of the correctly-classified set, given d2.
    const auto correct_mass = [&](double d2) {
        const auto cells = compute_cells(section_2d(sc, d2), features, thresholds, opt);
        const auto err = cells_to_error_intervals(cells, sc_index);
        return 1.0 - gaussian_mass(err, sigma_delta);
    };

    static thread_local std::vector<double> nodes, weights;
    gauss_legendre(32, nodes, weights);
    const double w_half = 8.0 * sigma_delta;
    const double inv_norm = 1.0 / (sigma_delta * std::sqrt(2.0 * M_PI));

    const auto integrate = [&](int n_panels) {
        double total = 0.0;
        for (int p = 0; p < n_panels; ++p) {
            const double a = -w_half + 2.0 * w_half * p / n_panels;
            const double b = -w_half + 2.0 * w_half * (p + 1) / n_panels;
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            double panel = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const double x = mid + half * nodes[i];
                const double pdf =
                    inv_norm * std::exp(-0.5 * (x / sigma_delta) * (x / sigma_delta));
                panel += weights[i] * pdf * correct_mass(x);
            }
            total += half * panel;
        }
        return total;
    };

    double prev = integrate(4);
    for (int n_panels = 8; n_panels <= 32; n_panels *= 2) {
        const double cur = integrate(n_panels);
        if (std::abs(cur - prev) <= 5e-4) return cur;
        prev = cur;
    }
    return prev;
}

double mc_p_correct(int sc_index, std::span<const SuperClass> scs, double sigma_delta,
                    long n_draws, std::uint64_t seed, double* stderr_out) {
    require_index(sc_index, scs, "mc_p_correct");
    const SuperClass& sc = scs[static_cast<std::size_t>(sc_index)];
    const auto dim = sc.members.size() - 1;
    if (dim < 1 || dim > 2)
        throw std::invalid_argument("mc_p_correct: supports 2- or 3-member super classes");
    if (n_draws < 1) throw std::invalid_argument("mc_p_correct: n_draws < 1");

    std::vector<double> c42s;
    for (std::size_t i = 0; i < sc.members.size(); ++i) c42s.push_back(member_c42(sc, i));
    const auto features = features_of(scs);

    Xoshiro256pp rng(derive_seed(seed, {kSaltMonteCarlo}));
    long n_correct = 0;
    double deltas[2] = {0.0, 0.0};
    for (long i = 0; i < n_draws; ++i) {
        if (dim == 2) {
            rng.normal_pair(deltas[0], deltas[1]);
            deltas[0] *= sigma_delta;
            deltas[1] *= sigma_delta;
        } else {
            deltas[0] = sigma_delta * rng.normal();
        }
        const double f = fsc_perturbed(c42s, {deltas, dim});
        if (nearest_feature(f, features) == sc_index) ++n_correct;
    }
    const double p = static_cast<double>(n_correct) / static_cast<double>(n_draws);
    if (stderr_out)
        *stderr_out = std::sqrt(p * (1.0 - p) / static_cast<double>(n_draws));
    return p;
}

std::vector<ContourPoint> threshold_contours(int sc_index,
                                             std::span<const SuperClass> scs,
                                             double d2_lo, double d2_hi, double d2_step,
                                             const RegionOptions& opt) {
    require_index(sc_index, scs, "threshold_contours");
    require_members(scs[static_cast<std::size_t>(sc_index)], 3, "threshold_contours");
    if (!(d2_step > 0.0) || !(d2_hi >= d2_lo))
        throw std::invalid_argument("threshold_contours: bad delta2 grid");
    const SuperClass& sc = scs[static_cast<std::size_t>(sc_index)];
    const auto thresholds = decision_thresholds(scs);

    std::vector<ContourPoint> out;
    const auto n = static_cast<std::size_t>(std::round((d2_hi - d2_lo) / d2_step));
    for (std::size_t i = 0; i <= n; ++i) {
        const double d2 = d2_lo + d2_step * static_cast<double>(i);
        const Section f = section_2d(sc, d2);
        for (double t : thresholds) {
            std::vector<double> roots;
            collect_roots(f, t, opt.window, opt, roots);
            for (double d1 : roots) out.push_back({sc_index, t, d2, d1});
        }
    }
    return out;
}

std::vector<double> boundary_delta1_exact(double c_carrier, double c0, double s0,
                                          int m, double threshold) {
    // f = t along the section is quadratic in u = (1 + d1)^2:
    //   m^2 (c0 + c_carrier u^2) = t (s0 + u)^2
    //   (c_carrier - t/m^2) u^2 - (2 t s0 / m^2) u + c0 - (t/m^2) s0^2 = 0
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    const double a = c_carrier - threshold / m2;
    const double b = -2.0 * threshold * s0 / m2;
    const double c = c0 - threshold * s0 * s0 / m2;

    std::vector<double> us;
    if (std::abs(a) < 1e-300) {
        if (b != 0.0) us.push_back(-c / b);
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            us.push_back((-b + root) / (2.0 * a));
            us.push_back((-b - root) / (2.0 * a));
        }
    }
    std::vector<double> d1s;
    for (double u : us) {
        if (u < 0.0) continue;
        const double r = std::sqrt(u);
        d1s.push_back(-1.0 + r);
        d1s.push_back(-1.0 - r);
    }
    std::sort(d1s.begin(), d1s.end());
    d1s.erase(std::unique(d1s.begin(), d1s.end(),
                          [](double x, double y) { return y - x <= 1e-12; }),
              d1s.end());
    return d1s;
}

std::span<const ClosedFormBoundary> closed_form_boundaries() {
    using M = ModulationType;
    // Contour branches delta1 = -1 +- k sqrt(l (1 + (1+delta2)^2) +- j sqrt(P))
    // for the {BPSK, QPSK, PAM4, QAM16} three-transmitter problem.  The
    // coefficients are stored to 3-4 significant figures, so agreement with
    // the numeric contours is only ~1e-3 (worse where the rounding bites).
    static const ClosedFormBoundary table[] = {
        {{M::BPSK, M::PAM4, M::QPSK}, -4.20, 0.01492, 2345.0, 67.0,
         {-795.0, 8460.0, -1590.0, -5820.0, -1455.0}},
        {{M::QAM16, M::PAM4, M::QPSK}, -3.36, 0.0135, 2072.0, 74.0,
         {2100.0, 648.0, -10452.0, -10776.0, -2694.0}},
        {{M::BPSK, M::PAM4, M::QAM16}, -4.20, 0.01492, 2345.0, 67.0,
         {813.0, 14892.0, 8058.0, 612.0, 153.0}},
        {{M::BPSK, M::PAM4, M::QAM16}, -3.86, 0.00238, 80867.0, 1257.0,
         {-3650.0, 48008.0, 19516.0, -4488.0, -1122.0}},
        {{M::BPSK, M::QAM16, M::QPSK}, -3.36, 0.04347, 644.0, 23.0,
         {537.0, 4524.0, 1074.0, -1188.0, -297.0}},
        {{M::BPSK, M::QAM16, M::QPSK}, -3.86, 0.00884, 21809.0, 339.0,
         {9298.0, 29896.0, 18596.0, 3648.0, 912.0}},
    };
    return table;
}

std::optional<double> closed_form_delta1(const ClosedFormBoundary& b, double delta2,
                                         int outer_sign, int inner_sign) {
    if (outer_sign * outer_sign != 1 || inner_sign * inner_sign != 1)
        throw std::invalid_argument("closed_form_delta1: signs must be +-1");
    double inner = 0.0;
    double pow_d2 = 1.0;
    for (double coeff : b.poly) {
        inner += coeff * pow_d2;
        pow_d2 *= delta2;
    }
    if (inner < 0.0) return std::nullopt;
    const double v = (1.0 + delta2) * (1.0 + delta2);
    const double arg = b.l * (1.0 + v) + inner_sign * b.j * std::sqrt(inner);
    if (arg < 0.0) return std::nullopt;
    return -1.0 + outer_sign * b.k * std::sqrt(arg);
}

} // namespace amc
