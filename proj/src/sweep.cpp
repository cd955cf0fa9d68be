#include "amc/sweep.hpp"

#include "amc/cumulants.hpp"
#include "amc/signal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace amc {

namespace {

struct KindName {
    ExperimentKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::sumc_snr_sweep, "sumc_snr_sweep"},
    {ExperimentKind::mumc_snr_sweep, "mumc_snr_sweep"},
    {ExperimentKind::sensitivity_1d, "sensitivity_1d"},
    {ExperimentKind::sensitivity_2d, "sensitivity_2d"},
    {ExperimentKind::sumc_sync_sweep, "sumc_sync_sweep"},
    {ExperimentKind::mumc_sync_sweep, "mumc_sync_sweep"},
};

bool is_sumc_kind(ExperimentKind k) {
    return k == ExperimentKind::sumc_snr_sweep || k == ExperimentKind::sumc_sync_sweep;
}

bool is_sync_kind(ExperimentKind k) {
    return k == ExperimentKind::sumc_sync_sweep || k == ExperimentKind::mumc_sync_sweep;
}

std::string superclass_label(const SuperClass& sc) {
    std::string s;
    for (const auto& m : sc.members) {
        if (!s.empty()) s += '+';
        s += to_string(m);
    }
    return s;
}

/// Per-(axis, class) integer tallies; merging across threads is addition.
struct Tally {
    std::int64_t primary_correct = 0;
    std::int64_t primary_degenerate = 0;
    std::int64_t baseline_correct = 0;
    std::int64_t baseline_degenerate = 0;

    Tally& operator+=(const Tally& o) {
        primary_correct += o.primary_correct;
        primary_degenerate += o.primary_degenerate;
        baseline_correct += o.baseline_correct;
        baseline_degenerate += o.baseline_degenerate;
        return *this;
    }
};

int clamp_jobs(int jobs) { return std::clamp(jobs, 1, 256); }

/// Run fn(first, last) over [0, total) split into `jobs` contiguous chunks.
template <typename Fn>
void parallel_chunks(std::int64_t total, int jobs, Fn&& fn) {
    jobs = clamp_jobs(jobs);
    if (jobs == 1 || total <= 1) {
        fn(0, std::int64_t{0}, total);
        return;
    }
    const std::int64_t chunk = (total + jobs - 1) / jobs;
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) {
        const std::int64_t first = static_cast<std::int64_t>(j) * chunk;
        const std::int64_t last = std::min(total, first + chunk);
        if (first >= last) break;
        threads.emplace_back([&fn, j, first, last] { fn(j, first, last); });
    }
    for (auto& t : threads) t.join();
}

SweepRow make_row(const Experiment& e, double axis_value, std::string classifier,
                  int truth_id, std::string truth, std::int64_t correct,
                  std::int64_t degenerate) {
    const double n = static_cast<double>(e.n_trials);
    const double p = static_cast<double>(correct) / n;
    SweepRow r;
    r.label = e.label;
    r.axis_value = axis_value;
    r.classifier = std::move(classifier);
    r.truth_id = truth_id;
    r.truth = std::move(truth);
    r.p_correct = p;
    r.std_err = std::sqrt(p * (1.0 - p) / n);
    r.n_trials = e.n_trials;
    r.degenerate_rate = static_cast<double>(degenerate) / n;
    return r;
}

SweepRow make_aggregate_row(const Experiment& e, double axis_value,
                            const std::string& classifier,
                            std::span<const SweepRow> class_rows) {
    double p = 0.0, var = 0.0, degen = 0.0;
    for (const auto& r : class_rows) {
        p += r.p_correct;
        var += r.std_err * r.std_err;
        degen += r.degenerate_rate;
    }
    const double k = static_cast<double>(class_rows.size());
    SweepRow r;
    r.label = e.label;
    r.axis_value = axis_value;
    r.classifier = classifier;
    r.truth_id = -1;
    r.truth = "ALL";
    r.p_correct = p / k;
    r.std_err = std::sqrt(var) / k;
    r.n_trials = e.n_trials * class_rows.size();
    r.degenerate_rate = degen / k;
    return r;
}

SweepResult run_classification_experiment(const Experiment& e, int jobs) {
    const bool sumc = is_sumc_kind(e.kind);
    std::vector<std::string> class_names;
    if (sumc) {
        for (auto m : e.candidates) class_names.emplace_back(to_string(m));
    } else {
        for (const auto& sc : experiment_superclasses(e))
            class_names.push_back(superclass_label(sc));
    }
    const auto n_axis = e.axis.size();
    const auto n_classes = class_names.size();

    std::vector<std::vector<Tally>> per_job(static_cast<std::size_t>(clamp_jobs(jobs)),
                                            std::vector<Tally>(n_axis * n_classes));
    const auto total =
        static_cast<std::int64_t>(n_axis * n_classes) * e.n_trials;
    parallel_chunks(total, jobs, [&](int job, std::int64_t first, std::int64_t last) {
        auto& tallies = per_job[static_cast<std::size_t>(job)];
        for (std::int64_t t = first; t < last; ++t) {
            const auto trial = t % e.n_trials;
            const auto cell = static_cast<std::size_t>(t / e.n_trials);
            const auto ci = cell % n_classes;
            const auto ai = cell / n_classes;
            const TrialOutcome out = run_trial(e, ai, ci, trial);
            Tally& tally = tallies[cell];
            tally.primary_correct += out.primary_correct;
            tally.primary_degenerate += out.primary_degenerate;
            tally.baseline_correct += out.baseline_correct;
            tally.baseline_degenerate += out.baseline_degenerate;
        }
    });
    std::vector<Tally> tallies(n_axis * n_classes);
    for (const auto& job_tallies : per_job)
        for (std::size_t i = 0; i < tallies.size(); ++i) tallies[i] += job_tallies[i];

    SweepResult res;
    res.experiments.push_back(e);
    const std::string primary_name = sumc ? "sumc" : "mumc";
    for (std::size_t ai = 0; ai < n_axis; ++ai) {
        const double axis_value = e.axis[ai];
        std::vector<SweepRow> primary_rows, baseline_rows;
        for (std::size_t ci = 0; ci < n_classes; ++ci) {
            const Tally& t = tallies[ai * n_classes + ci];
            primary_rows.push_back(make_row(e, axis_value, primary_name,
                                            static_cast<int>(ci), class_names[ci],
                                            t.primary_correct, t.primary_degenerate));
            if (sumc)
                baseline_rows.push_back(make_row(e, axis_value, "c42",
                                                 static_cast<int>(ci), class_names[ci],
                                                 t.baseline_correct,
                                                 t.baseline_degenerate));
        }
        primary_rows.push_back(make_aggregate_row(e, axis_value, primary_name,
                                                  primary_rows));
        if (sumc)
            baseline_rows.push_back(make_aggregate_row(e, axis_value, "c42",
                                                       baseline_rows));
        for (auto& r : primary_rows) res.rows.push_back(std::move(r));
        for (auto& r : baseline_rows) res.rows.push_back(std::move(r));
    }
    return res;
}

SweepResult run_sensitivity_experiment(const Experiment& e, int jobs) {
    const auto scs = experiment_superclasses(e);
    const auto n_axis = e.axis.size();
    const auto n_sc = scs.size();

    std::vector<SensitivityRow> rows(n_axis * n_sc);
    const auto total = static_cast<std::int64_t>(n_axis * n_sc);
    parallel_chunks(total, jobs, [&](int, std::int64_t first, std::int64_t last) {
        for (std::int64_t t = first; t < last; ++t) {
            const auto sci = static_cast<std::size_t>(t) % n_sc;
            const auto ai = static_cast<std::size_t>(t) / n_sc;
            const double sigma_sq = e.axis[ai];
            const double sigma = std::sqrt(sigma_sq);
            SensitivityRow& r = rows[static_cast<std::size_t>(t)];
            r.label = e.label;
            r.sigma_delta_sq = sigma_sq;
            r.superclass_id = static_cast<int>(sci);
            r.superclass = superclass_label(scs[sci]);
            r.p_analytic = (e.kind == ExperimentKind::sensitivity_1d)
                               ? p_correct_1d(static_cast<int>(sci), scs, sigma)
                               : p_correct_2d(static_cast<int>(sci), scs, sigma);
            const std::uint64_t mc_seed = derive_seed(
                e.base_seed,
                {static_cast<std::uint64_t>(e.kind), ai, sci});
            r.p_montecarlo = mc_p_correct(static_cast<int>(sci), scs, sigma,
                                          e.mc_draws, mc_seed, &r.mc_stderr);
        }
    });

    SweepResult res;
    res.experiments.push_back(e);
    res.sensitivity_rows = std::move(rows);
    return res;
}

} // namespace

std::string_view to_string(ExperimentKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    throw std::invalid_argument("unknown experiment kind");
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

bool is_classification_kind(ExperimentKind kind) {
    return kind != ExperimentKind::sensitivity_1d &&
           kind != ExperimentKind::sensitivity_2d;
}

std::vector<SuperClass> experiment_superclasses(const Experiment& e) {
    return enumerate_superclasses(e.candidates, e.n_transmitters);
}

void validate(const Experiment& e) {
    if (e.axis.empty()) throw std::invalid_argument("experiment: empty axis");
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < e.axis.size(); ++i) {
        inc = inc && e.axis[i] > e.axis[i - 1];
        dec = dec && e.axis[i] < e.axis[i - 1];
    }
    if (!inc && !dec)
        throw std::invalid_argument("experiment: axis not strictly monotone");
    if (e.candidates.empty())
        throw std::invalid_argument("experiment: no candidates");
    if (std::set<ModulationType>(e.candidates.begin(), e.candidates.end()).size() !=
        e.candidates.size())
        throw std::invalid_argument("experiment: duplicate candidates");

    if (is_classification_kind(e.kind)) {
        if (e.n_trials < 1) throw std::invalid_argument("experiment: n_trials < 1");
        if (e.n_symbols < 1) throw std::invalid_argument("experiment: n_symbols < 1");
        if (!(e.noise_variance > 0.0))
            throw std::invalid_argument("experiment: noise variance must be > 0");
        if (is_sumc_kind(e.kind) && e.candidates.size() < 2)
            throw std::invalid_argument("experiment: sumc needs >= 2 candidates");
        if (is_sync_kind(e.kind))
            for (double v : e.axis)
                if (!(v >= 0.0 && v < 1.0))
                    throw std::invalid_argument("experiment: theta outside [0, 1)");
    } else {
        if (e.mc_draws < 1) throw std::invalid_argument("experiment: mc_draws < 1");
        for (double v : e.axis)
            if (!(v >= 0.0))
                throw std::invalid_argument("experiment: sigma_delta_sq < 0");
        const int want = e.kind == ExperimentKind::sensitivity_1d ? 2 : 3;
        if (e.n_transmitters != want)
            throw std::invalid_argument("experiment: sensitivity kind needs M = " +
                                        std::to_string(want));
    }
    if (!is_sumc_kind(e.kind)) {
        if (e.n_transmitters < 1 ||
            e.n_transmitters > static_cast<int>(e.candidates.size()))
            throw std::invalid_argument("experiment: need 1 <= M <= candidates");
        if (enumerate_superclasses(e.candidates, e.n_transmitters).size() < 2)
            throw std::invalid_argument("experiment: need >= 2 super classes");
    }
}

TrialOutcome run_trial(const Experiment& e, std::size_t axis_index,
                       std::size_t class_index, std::int64_t trial_index) {
    if (axis_index >= e.axis.size())
        throw std::invalid_argument("run_trial: axis_index out of range");
    if (trial_index < 0 || trial_index >= e.n_trials)
        throw std::invalid_argument("run_trial: trial_index out of range");
    if (!is_classification_kind(e.kind))
        throw std::invalid_argument("run_trial: not a classification kind");

    const std::uint64_t trial_seed =
        derive_seed(e.base_seed, {static_cast<std::uint64_t>(e.kind), axis_index,
                                  class_index, static_cast<std::uint64_t>(trial_index)});

    Scenario sc;
    sc.noise_variance = e.noise_variance;
    sc.n_symbols = e.n_symbols;
    sc.seed = derive_seed(trial_seed, {kSaltScenario});

    const bool sync = is_sync_kind(e.kind);
    const double snr_db = sync ? e.snr_db : e.axis[axis_index];
    const double theta = sync ? e.axis[axis_index] : 0.0;

    TrialOutcome out;
    if (is_sumc_kind(e.kind)) {
        if (class_index >= e.candidates.size())
            throw std::invalid_argument("run_trial: class_index out of range");
        const auto amps = amplitudes_from_snr_sir(
            snr_db, e.sir_db, static_cast<int>(e.candidates.size()),
            e.noise_variance);
        sc.transmitters.push_back({e.candidates[class_index], amps[0], 0.0});
        std::size_t a = 1;
        for (std::size_t i = 0; i < e.candidates.size(); ++i)
            if (i != class_index)
                sc.transmitters.push_back({e.candidates[i], amps[a++], 0.0});
        if (theta > 0.0) {
            Xoshiro256pp eps_rng(derive_seed(trial_seed, {kSaltEpsilon}));
            for (auto& tx : sc.transmitters) tx.sync_error = eps_rng.uniform(0.0, theta);
        }
        const SampleStream y = synthesize(sc);
        try {
            out.primary_correct = static_cast<std::size_t>(
                                      classify_sumc(y, e.candidates).decided) ==
                                  class_index;
        } catch (const DegenerateFeatureError&) {
            out.primary_degenerate = true;
        }
        try {
            out.baseline_correct =
                static_cast<std::size_t>(
                    classify_baseline_c42(y, e.candidates, e.noise_variance).decided) ==
                class_index;
        } catch (const NegativeSignalPowerError&) {
            out.baseline_degenerate = true;
        }
    } else {
        const auto scs = experiment_superclasses(e);
        if (class_index >= scs.size())
            throw std::invalid_argument("run_trial: class_index out of range");
        const auto amps = amplitudes_equal_total_power(snr_db, e.n_transmitters,
                                                       e.noise_variance);
        const auto& members = scs[class_index].members;
        for (std::size_t k = 0; k < members.size(); ++k)
            sc.transmitters.push_back({members[k], amps[k], 0.0});
        if (theta > 0.0) {
            Xoshiro256pp eps_rng(derive_seed(trial_seed, {kSaltEpsilon}));
            for (auto& tx : sc.transmitters) tx.sync_error = eps_rng.uniform(0.0, theta);
        }
        const SampleStream y = synthesize(sc);
        try {
            out.primary_correct =
                static_cast<std::size_t>(
                    classify_mumc(y, scs, e.n_transmitters, e.noise_variance).decided) ==
                class_index;
        } catch (const NegativeSignalPowerError&) {
            out.primary_degenerate = true;
        }
    }
    return out;
}

SweepResult run_experiment(const Experiment& e, int jobs) {
    validate(e);
    return is_classification_kind(e.kind) ? run_classification_experiment(e, jobs)
                                          : run_sensitivity_experiment(e, jobs);
}

SweepResult run_experiments(std::span<const Experiment> exps, int jobs) {
    SweepResult all;
    for (const auto& e : exps) {
        SweepResult r = run_experiment(e, jobs);
        all.experiments.push_back(r.experiments.front());
        for (auto& row : r.rows) all.rows.push_back(std::move(row));
        for (auto& row : r.sensitivity_rows)
            all.sensitivity_rows.push_back(std::move(row));
    }
    return all;
}

} // namespace amc
