#include "amc/constellation.hpp"

#include "amc/cumulants.hpp"

#include <cmath>
#include <numeric>

namespace amc {

namespace {

std::vector<cplx> scaled(std::vector<cplx> pts, double s) {
    for (auto& p : pts) p *= s;
    return pts;
}

// Point lists are normalized to unit average power at construction; ordering
// is fixed (it determines the symbol-index mapping of generate_symbols).
const std::array<Constellation, 4>& registry() {
    static const std::array<Constellation, 4> reg = [] {
        std::array<Constellation, 4> r;
        // BPSK: antipodal on the real axis.
        r[0].points = {{-1.0, 0.0}, {1.0, 0.0}};
        // QPSK: (+-1 +- j)/sqrt(2), counter-clockwise from the first quadrant.
        r[1].points = scaled({{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}},
                             1.0 / std::sqrt(2.0));
        // 4-PAM: {-3,-1,1,3}/sqrt(5).
        r[2].points = scaled({{-3.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}, {3.0, 0.0}},
                             1.0 / std::sqrt(5.0));
        // 16-QAM: square grid {-3,-1,1,3}^2/sqrt(10), row-major.
        r[3].points.reserve(16);
        for (double im : {-3.0, -1.0, 1.0, 3.0})
            for (double re : {-3.0, -1.0, 1.0, 3.0})
                r[3].points.emplace_back(re / std::sqrt(10.0), im / std::sqrt(10.0));
        for (const auto& c : r) validate(c);
        return r;
    }();
    return reg;
}

std::size_t index_of(ModulationType mod) {
    const auto i = static_cast<std::size_t>(mod);
    if (i >= registry().size())
        throw std::invalid_argument("unknown modulation tag " + std::to_string(i));
    return i;
}

} // namespace

std::string_view to_string(ModulationType mod) {
    static constexpr std::array<std::string_view, 4> names = {"BPSK", "QPSK",
                                                              "PAM4", "QAM16"};
    return names[index_of(mod)];
}

std::optional<ModulationType> parse_modulation(std::string_view name) {
    const auto eq_icase = [](std::string_view a, std::string_view b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::toupper(static_cast<unsigned char>(a[i])) !=
                std::toupper(static_cast<unsigned char>(b[i])))
                return false;
        return true;
    };
    for (ModulationType m : kBuiltinModulations)
        if (eq_icase(name, to_string(m))) return m;
    return std::nullopt;
}

void validate(const Constellation& c) {
    if (c.points.empty())
        throw std::invalid_argument("constellation: empty alphabet");
    cplx mean = 0.0;
    double power = 0.0;
    for (const auto& p : c.points) {
        mean += p;
        power += std::norm(p);
    }
    mean /= static_cast<double>(c.size());
    power /= static_cast<double>(c.size());
    if (std::abs(mean) > 1e-12)
        throw std::invalid_argument("constellation: nonzero mean");
    if (std::abs(power - 1.0) > 1e-12)
        throw std::invalid_argument("constellation: average power != 1");
}

CumulantSet theoretical_cumulants(const Constellation& c) {
    validate(c);
    // Exact expectation over the equiprobable alphabet, then the same
    // moment-to-cumulant combination used on sample estimates.
    MomentSet m{};
    for (const auto& p : c.points) {
        const double a2 = std::norm(p);
        const cplx p2 = p * p;
        m.m20 += p2;
        m.m21 += a2;
        m.m42 += a2 * a2;
        m.m41 += a2 * p2;
        m.m63 += a2 * a2 * a2;
    }
    const auto inv = 1.0 / static_cast<double>(c.size());
    m.m20 *= inv;
    m.m21 *= inv;
    m.m42 *= inv;
    m.m41 *= inv;
    m.m63 *= inv;
    const CumulantEstimate e = cumulants_from_moments(m);
    return {e.c21, e.c42.real(), e.c63.real()};
}

CumulantSet theoretical_cumulants(ModulationType mod) {
    static const std::array<CumulantSet, 4> cache = [] {
        std::array<CumulantSet, 4> c;
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = theoretical_cumulants(registry()[i]);
        return c;
    }();
    return cache[index_of(mod)];
}

const Constellation& alphabet(ModulationType mod) { return registry()[index_of(mod)]; }

double theoretical_fc(ModulationType mod) {
    const CumulantSet c = theoretical_cumulants(mod);
    if (std::abs(c.c63) < 1e-12)
        throw DegenerateFeatureError(std::string("theoretical_fc: c63 vanishes for ") +
                                     std::string(to_string(mod)));
    return std::abs(c.c42) / std::pow(std::abs(c.c63), 2.0 / 3.0);
}

} // namespace amc
