// Acceptance harness: one line per criterion, PASS or FAIL, nonzero exit
// when anything fails.  Tolerances are pinned here and nowhere else.

#include "amc/emit.hpp"
#include "amc/sensitivity.hpp"
#include "amc/signal.hpp"
#include "amc/sweep.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace amc;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%2d] %-34s %s%s%s\n", idx, name.c_str(), pass ? "PASS" : "FAIL",
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) { return format_g12(v); }

// ---------------------------------------------------------------- 1
void criterion_table() {
    struct Row {
        ModulationType m;
        double c42, c63, fc;
    };
    const Row rows[] = {
        {ModulationType::BPSK, -2.0, 16.0, 0.3150},
        {ModulationType::QPSK, -1.0, 4.0, 0.3969},
        {ModulationType::PAM4, -1.36, 8.32, 0.3312},
        {ModulationType::QAM16, -0.68, 2.08, 0.4173},
    };
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
        const auto c = theoretical_cumulants(r.m);
        const double f = theoretical_fc(r.m);
        if (std::abs(c.c42 - r.c42) > 1e-12 || std::abs(c.c63 - r.c63) > 1e-12 ||
            std::abs(f - r.fc) > 5e-5) {
            ok = false;
            detail += std::string(to_string(r.m)) + " ";
        }
    }
    report(1, "theoretical cumulant table", ok, detail);
}

// ---------------------------------------------------------------- 2
void criterion_superclass_features() {
    const std::vector<ModulationType> all = {
        ModulationType::BPSK, ModulationType::QPSK, ModulationType::PAM4,
        ModulationType::QAM16};
    const std::vector<ModulationType> bqp = {
        ModulationType::BPSK, ModulationType::QPSK, ModulationType::PAM4};
    bool ok = true;
    const auto t3 = enumerate_superclasses(all, 3);
    const double want3[] = {-4.36, -3.68, -4.04, -3.04};
    for (std::size_t i = 0; i < 4; ++i)
        ok &= std::abs(t3[i].theoretical_feature - want3[i]) <= 1e-12;
    const auto t2 = enumerate_superclasses(bqp, 2);
    const double want2[] = {-3.0, -3.36, -2.36};
    for (std::size_t i = 0; i < 3; ++i)
        ok &= std::abs(t2[i].theoretical_feature - want2[i]) <= 1e-12;
    // Each feature must equal the plain sum of its members' fourth-order
    // cumulants.
    for (const auto& sc : t3) {
        double sum = 0;
        for (auto m : sc.members) sum += theoretical_cumulants(m).c42;
        ok &= sc.theoretical_feature == sum;
    }
    report(2, "super-class feature sums", ok, "");
}

// ---------------------------------------------------------------- 3
void criterion_estimator_consistency() {
    bool ok = true;
    std::string detail;
    for (auto m : kBuiltinModulations) {
        Scenario sc;
        sc.transmitters = {{m, 1.0, 0.0}};
        sc.noise_variance = 0.0;
        sc.n_symbols = 1000000;
        sc.seed = derive_seed(9002, {static_cast<std::uint64_t>(m)});
        const auto est = estimate_cumulants(synthesize(sc));
        const auto th = theoretical_cumulants(m);
        const double d42 = std::abs(est.c42 - cplx(th.c42, 0));
        const double d63 = std::abs(est.c63 - cplx(th.c63, 0));
        if (d42 > 0.01 || d63 > 0.05) {
            ok = false;
            detail += std::string(to_string(m)) + " d42=" + fmt(d42) +
                      " d63=" + fmt(d63) + " ";
        }
    }
    // Circular Gaussian noise alone must be invisible to the fourth-order
    // statistic.
    Xoshiro256pp rng(12);
    std::vector<cplx> g(100000);
    const double s = std::sqrt(0.5);
    for (auto& v : g) {
        double a, b;
        rng.normal_pair(a, b);
        v = cplx(s * a, s * b);
    }
    const double gc42 = std::abs(estimate_c42(g));
    if (gc42 > 0.05) {
        ok = false;
        detail += "gaussian c42=" + fmt(gc42);
    }
    report(3, "estimator consistency", ok, detail);
}

// ---------------------------------------------------------------- 4
void criterion_superposition() {
    bool ok = true;
    std::string detail;
    struct Case {
        std::vector<ModulationType> mods;
        std::vector<double> amps;
    };
    const Case cases[] = {
        {{ModulationType::BPSK, ModulationType::QPSK}, {1.0, 0.7}},
        {{ModulationType::QPSK, ModulationType::QAM16}, {0.9, 1.1}},
        {{ModulationType::BPSK, ModulationType::QPSK, ModulationType::PAM4},
         {1.0, 0.8, 0.6}},
    };
    for (const auto& c : cases) {
        std::vector<std::vector<cplx>> alphabets;
        double want42 = 0, want63 = 0;
        for (std::size_t k = 0; k < c.mods.size(); ++k) {
            alphabets.push_back(alphabet(c.mods[k]).points);
            const auto th = theoretical_cumulants(c.mods[k]);
            const double a2 = c.amps[k] * c.amps[k];
            want42 += a2 * a2 * th.c42;
            want63 += a2 * a2 * a2 * th.c63;
        }
        const auto joint = oracle::cumulants_of(oracle::joint_moments(alphabets, c.amps));
        const double d42 = std::abs(joint.c42 - cplx(want42, 0));
        const double d63 = std::abs(joint.c63 - cplx(want63, 0));
        if (d42 > 1e-10 || d63 > 1e-10) {
            ok = false;
            detail += "d42=" + fmt(d42) + " d63=" + fmt(d63) + " ";
        }
    }
    report(4, "superposition additivity", ok, detail);
}

// ---------------------------------------------------------------- 5
void criterion_invariances() {
    bool ok = true;
    int streams = 0;
    double worst = 0;
    for (std::uint64_t i = 0; i < 1024; ++i) {
        const auto m = kBuiltinModulations[i % 4];
        Scenario sc;
        sc.transmitters = {{m, 1.0, 0.0}};
        sc.noise_variance = 0.0;
        sc.n_symbols = 256;
        sc.seed = derive_seed(7100, {i});
        const auto y = synthesize(sc);

        Xoshiro256pp rng(derive_seed(7200, {i}));
        const double alpha = rng.uniform(0.2, 5.0);
        const cplx rot = std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
        std::vector<cplx> scaled(y.size()), rotated(y.size());
        for (std::size_t k = 0; k < y.size(); ++k) {
            scaled[k] = alpha * y[k];
            rotated[k] = rot * y[k];
        }
        const auto e0 = estimate_cumulants(y);
        const auto es = estimate_cumulants(scaled);
        const auto er = estimate_cumulants(rotated);
        const double a4 = alpha * alpha * alpha * alpha;

        const auto rel = [](double got, double want) {
            return std::abs(got - want) / std::max(1.0, std::abs(want));
        };
        double err = rel(estimate_fc(scaled), estimate_fc(y));
        err = std::max(err, rel(estimate_fc(rotated), estimate_fc(y)));
        err = std::max(err, rel(es.c42.real(), a4 * e0.c42.real()));
        err = std::max(err,
                       rel(es.c63.real(), a4 * alpha * alpha * e0.c63.real()));
        err = std::max(err, rel(er.c21, e0.c21));
        err = std::max(err, std::abs(er.c42 - e0.c42) /
                                std::max(1.0, std::abs(e0.c42)));
        err = std::max(err, std::abs(er.c63 - e0.c63) /
                                std::max(1.0, std::abs(e0.c63)));
        worst = std::max(worst, err);
        if (err > 1e-9) ok = false;
        ++streams;
    }
    report(5, "scale/rotation invariances", ok && streams >= 1000,
           "streams=" + std::to_string(streams) + " worst_rel=" + fmt(worst));
}

// Helper: pooled ALL rows for one experiment label + classifier.
std::map<double, std::pair<double, double>> all_rows(
    const SweepResult& r, const std::string& label, const std::string& classifier) {
    std::map<double, std::pair<double, double>> out;
    for (const auto& row : r.rows)
        if (row.label == label && row.classifier == classifier && row.truth_id == -1)
            out[row.axis_value] = {row.p_correct, row.std_err};
    return out;
}

// Axis values may carry float-accumulation dust (e.g. 6 * 0.05 != 0.3).
const std::pair<double, double>& axis_at(
    const std::map<double, std::pair<double, double>>& rows, double x) {
    for (const auto& [k, v] : rows)
        if (std::abs(k - x) <= 1e-9) return v;
    throw std::out_of_range("axis value " + fmt(x) + " not found");
}

// ---------------------------------------------------------------- 6
void criterion_interference_gain() {
    const auto exps = load_preset("fig2");
    const auto r = run_experiments(exps, 1);
    const auto sumc = all_rows(r, "fig2-sir5", "sumc");
    const auto base = all_rows(r, "fig2-sir10", "c42");
    bool ok = true;
    std::string detail;
    for (const auto& [snr, pv] : sumc) {
        if (snr < -2.5) continue;
        const auto& bv = base.at(snr);
        const double diff = pv.first - bv.first;
        const double se = std::sqrt(pv.second * pv.second + bv.second * bv.second);
        if (diff < -3.0 * se) {
            ok = false;
            detail += "snr=" + fmt(snr) + " diff=" + fmt(diff) + " ";
        }
    }
    report(6, "sixth-order gain under interference", ok, detail);
}

// ---------------------------------------------------------------- 7
void criterion_mumc_convergence() {
    Experiment e;
    e.kind = ExperimentKind::mumc_snr_sweep;
    e.axis = {5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0};
    e.n_trials = 2000;
    e.n_transmitters = 3;
    Experiment e2k = e, e10k = e;
    e2k.label = "acc7-n2000";
    e2k.n_symbols = 2000;
    e2k.base_seed = 301;
    e10k.label = "acc7-n10000";
    e10k.n_symbols = 10000;
    e10k.base_seed = 302;
    const std::vector<Experiment> exps = {e2k, e10k};
    const auto r = run_experiments(exps, 1);
    const auto p2k = all_rows(r, "acc7-n2000", "mumc");
    const auto p10k = all_rows(r, "acc7-n10000", "mumc");

    bool ok = true;
    std::string detail;
    const double p_top = p10k.at(20.0).first;
    if (p_top < 0.9) {
        ok = false;
        detail += "p(20dB,1e4)=" + fmt(p_top) + "<0.9 ";
    }
    for (const auto& [snr, pv] : p10k) {
        const auto& qv = p2k.at(snr);
        const double se =
            std::sqrt(pv.second * pv.second + qv.second * qv.second);
        if (pv.first < qv.first - 3.0 * se) {
            ok = false;
            detail += "snr=" + fmt(snr) + " longer-worse ";
        }
    }
    if (ok) detail = "p(20dB,1e4)=" + fmt(p_top);
    report(7, "mumc length convergence", ok, detail);
}

// ---------------------------------------------------------------- 8
void criterion_sensitivity_tables() {
    bool ok = true;
    std::string detail;
    double worst = 0;
    for (const char* preset : {"fig4", "fig6"}) {
        const auto r = run_experiments(load_preset(preset), 1);
        for (const auto& row : r.sensitivity_rows) {
            const double d = std::abs(row.p_analytic - row.p_montecarlo);
            worst = std::max(worst, d);
            if (d > 0.02) {
                ok = false;
                detail += std::string(preset) + " s2=" + fmt(row.sigma_delta_sq) +
                          " sc=" + std::to_string(row.superclass_id) +
                          " d=" + fmt(d) + " ";
            }
        }
    }
    report(8, "analytic vs monte carlo tables", ok,
           detail.empty() ? "worst=" + fmt(worst) : detail);
}

// ---------------------------------------------------------------- 9
void criterion_closed_forms() {
    const auto table = closed_form_boundaries();
    bool ok = true;
    std::string detail;
    for (std::size_t bi = 0; bi < table.size(); ++bi) {
        const auto& b = table[bi];
        const double c_anchor = theoretical_cumulants(b.members[0]).c42;
        const double c_d1 = theoretical_cumulants(b.members[1]).c42;
        const double c_d2 = theoretical_cumulants(b.members[2]).c42;
        double max_dist = 0;
        int samples = 0;
        for (int si : {+1, -1}) {
            // Sample grid over the fitted deviation range; keep the first
            // five real points of each inner branch, spread evenly.
            std::vector<double> real_d2;
            for (double d2 = -0.3; d2 <= 0.3001; d2 += 0.01)
                if (closed_form_delta1(b, d2, +1, si)) real_d2.push_back(d2);
            if (real_d2.empty()) continue;
            for (int k = 0; k < 5; ++k) {
                const std::size_t idx =
                    real_d2.size() > 1
                        ? static_cast<std::size_t>(k) * (real_d2.size() - 1) / 4
                        : 0;
                const double d2 = real_d2[idx];
                const auto cf = closed_form_delta1(b, d2, +1, si);
                if (!cf) continue;
                const double v = (1.0 + d2) * (1.0 + d2);
                const auto exact = boundary_delta1_exact(
                    c_d1, c_anchor + v * v * c_d2, 1.0 + v, 3, b.threshold);
                double best = 1e300;
                for (double x : exact) best = std::min(best, std::abs(*cf - x));
                max_dist = std::max(max_dist, best);
                ++samples;
            }
        }
        const bool strict = bi == 0 || bi == 2 || bi == 4;
        const double bound = strict ? 1e-3 : 1e-2;
        if (samples == 0 || max_dist > bound) {
            ok = false;
            detail += "entry" + std::to_string(bi) + " max=" + fmt(max_dist) + " ";
        } else if (!strict && max_dist > 1e-3) {
            detail += "entry" + std::to_string(bi) +
                      " documented discrepancy max=" + fmt(max_dist) + " ";
        }
    }
    report(9, "closed-form boundary spot checks", ok, detail);
}

// ---------------------------------------------------------------- 10
void criterion_sync_robustness() {
    bool ok = true;
    std::string detail;
    const auto r7 = run_experiments(load_preset("fig7"), 1);
    for (const char* label : {"fig7-sir10", "fig7-sir15", "fig7-sir20"}) {
        const auto rows = all_rows(r7, label, "sumc");
        const double drop =
            std::abs(axis_at(rows, 0.3).first - axis_at(rows, 0.0).first);
        if (drop > 0.05) {
            ok = false;
            detail += std::string(label) + " |dp|=" + fmt(drop) + " ";
        }
    }
    auto exps = load_preset("fig8");
    std::erase_if(exps, [](const Experiment& e) { return e.n_symbols != 10000; });
    const auto r8 = run_experiments(exps, 1);
    const auto rows = all_rows(r8, exps.at(0).label, "mumc");
    const double drop = axis_at(rows, 0.0).first - axis_at(rows, 0.12).first;
    if (drop < 0.06 || drop > 0.18) {
        ok = false;
        detail += "mumc drop=" + fmt(drop) + " outside [0.06,0.18]";
    } else if (ok) {
        detail = "mumc drop=" + fmt(drop);
    }
    report(10, "sync-error robustness", ok, detail);
}

// ---------------------------------------------------------------- 11
void criterion_thread_determinism() {
    Experiment e;
    e.kind = ExperimentKind::sumc_snr_sweep;
    e.label = "acc11";
    e.axis = {0.0, 10.0, 20.0};
    e.n_symbols = 1000;
    e.n_trials = 250;
    e.base_seed = 1101;
    e.n_transmitters = 3;
    e.sir_db = 10.0;
    const auto csv1 = to_csv(run_experiment(e, 1));
    const auto csv8 = to_csv(run_experiment(e, 8));
    report(11, "thread-count determinism", csv1 == csv8,
           csv1 == csv8 ? "byte-identical" : "outputs differ");
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_table();
    criterion_superclass_features();
    criterion_estimator_consistency();
    criterion_superposition();
    criterion_invariances();
    criterion_interference_gain();
    criterion_mumc_convergence();
    criterion_sensitivity_tables();
    criterion_closed_forms();
    criterion_sync_robustness();
    criterion_thread_determinism();
    const auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("%d/11 criteria passed (%llds)\n", 11 - g_failures,
                static_cast<long long>(dt));
    return g_failures == 0 ? 0 : 1;
}
