#pragma once

#include "amc/classify.hpp"
#include "amc/sensitivity.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace amc {

enum class ExperimentKind {
    sumc_snr_sweep,  // axis: SNR dB at fixed SIR; desired class cycles
    mumc_snr_sweep,  // axis: SNR dB; equal-power super classes
    sensitivity_1d,  // axis: sigma_delta^2; two-member super classes
    sensitivity_2d,  // axis: sigma_delta^2; three-member super classes
    sumc_sync_sweep, // axis: asynchronous interval theta at fixed SNR/SIR
    mumc_sync_sweep, // axis: theta at fixed SNR
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

struct Experiment {
    ExperimentKind kind = ExperimentKind::sumc_snr_sweep;
    std::string label;                     // section name; distinguishes preset variants
    std::vector<double> axis;              // SNR dB, theta, or sigma_delta^2
    std::int64_t n_symbols = 2000;
    std::int64_t n_trials = 2000;          // per class per axis point
    std::uint64_t base_seed = 1;
    std::vector<ModulationType> candidates = {
        ModulationType::BPSK, ModulationType::QPSK, ModulationType::PAM4,
        ModulationType::QAM16};
    int n_transmitters = 3;                // super-class size (mumc/sensitivity kinds)
    double sir_db = 10.0;                  // sumc kinds
    double snr_db = 15.0;                  // sync kinds
    double noise_variance = 1.0;
    std::int64_t mc_draws = 100000;        // sensitivity kinds
};

/// Throws std::invalid_argument on violated invariants (empty or
/// non-monotone axis, n_trials < 1, bad candidate set for the kind, ...).
void validate(const Experiment& e);

/// True for the Monte Carlo classification kinds (as opposed to the
/// analytic sensitivity kinds).
bool is_classification_kind(ExperimentKind kind);

/// One sweep table row.  Classification kinds fill truth-conditional rows
/// per classifier, plus an equal-prior aggregate row with truth = "ALL".
struct SweepRow {
    std::string label;
    double axis_value;
    std::string classifier; // "sumc", "c42", or "mumc"
    int truth_id;           // candidate or super-class index; -1 for ALL
    std::string truth;
    double p_correct;
    double std_err;         // sqrt(p (1-p) / n_trials)
    std::int64_t n_trials;
    double degenerate_rate; // feature-failure fraction (counted incorrect)
};

/// One sensitivity table row (analytic curve plus its MC cross-check).
struct SensitivityRow {
    std::string label;
    double sigma_delta_sq;
    int superclass_id;
    std::string superclass;
    double p_analytic;
    double p_montecarlo;
    double mc_stderr;
};

struct SweepResult {
    std::vector<Experiment> experiments;
    std::vector<SweepRow> rows;
    std::vector<SensitivityRow> sensitivity_rows;
};

/// Outcome of one Monte Carlo trial.  SUMC kinds evaluate the baseline
/// fourth-order classifier on the same stream; for MUMC kinds the primary
/// fields are the only meaningful ones.
struct TrialOutcome {
    bool primary_correct = false;
    bool primary_degenerate = false;
    bool baseline_correct = false;
    bool baseline_degenerate = false;
};

/// Deterministic: the trial's substream is derive_seed(base_seed,
/// {kind, axis_index, class_index, trial_index}) and does not depend on
/// execution order or thread count.
TrialOutcome run_trial(const Experiment& e, std::size_t axis_index,
                       std::size_t class_index, std::int64_t trial_index);

/// Full factorial axis x classes x trials; `jobs` threads partition the
/// trial space and merge integer tallies, so results are identical for any
/// job count.
SweepResult run_experiment(const Experiment& e, int jobs = 1);
SweepResult run_experiments(std::span<const Experiment> exps, int jobs = 1);

/// Superclasses an experiment sweeps over (mumc / sensitivity kinds).
std::vector<SuperClass> experiment_superclasses(const Experiment& e);

/// Parse INI-like config text: one [section] per experiment, key = value
/// lines, '#' comments.  The section name becomes the label.  axis accepts
/// a comma list or lo:step:hi.  Unknown keys are errors.
std::vector<Experiment> parse_config(std::string_view text);
std::vector<Experiment> load_config_file(const std::filesystem::path& path);

/// Built-in experiment presets, shipped as config text (also installed
/// under configs/).  Names: fig2, fig3, fig4, fig6, fig7, fig8.
std::span<const std::string_view> preset_names();
std::optional<std::string_view> preset_config(std::string_view name);
std::vector<Experiment> load_preset(std::string_view name);

} // namespace amc
