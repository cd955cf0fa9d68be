#include "amc/sweep.hpp"

#include <array>

namespace amc {

namespace {

// Built-in experiment presets.  Each is plain config text; the same text is
// shipped under configs/ so the figure-style tables can be reproduced either
// by name or from an editable file.

constexpr std::string_view kFig2 = R"(# Single-user classification vs SNR at two interference levels;
# emits both the sixth-order feature classifier and the fourth-order baseline.
[fig2-sir5]
kind = sumc_snr_sweep
axis = -10:2.5:20
sir_db = 5
n_symbols = 2000
n_trials = 2000
base_seed = 101
candidates = BPSK,QPSK,PAM4,QAM16

[fig2-sir10]
kind = sumc_snr_sweep
axis = -10:2.5:20
sir_db = 10
n_symbols = 2000
n_trials = 2000
base_seed = 102
candidates = BPSK,QPSK,PAM4,QAM16
)";

constexpr std::string_view kFig3 = R"(# Multiuser super-class classification vs SNR, three equal-power
# transmitters, curves parameterized by the number of symbols.
[fig3-n2000]
kind = mumc_snr_sweep
axis = -10:2.5:20
n_transmitters = 3
n_symbols = 2000
n_trials = 2000
base_seed = 201
candidates = BPSK,QPSK,PAM4,QAM16

[fig3-n6000]
kind = mumc_snr_sweep
axis = -10:2.5:20
n_transmitters = 3
n_symbols = 6000
n_trials = 2000
base_seed = 202
candidates = BPSK,QPSK,PAM4,QAM16

[fig3-n10000]
kind = mumc_snr_sweep
axis = -10:2.5:20
n_transmitters = 3
n_symbols = 10000
n_trials = 2000
base_seed = 203
candidates = BPSK,QPSK,PAM4,QAM16
)";

constexpr std::string_view kFig4 = R"(# Analytic vs Monte Carlo sensitivity to amplitude deviation, two
# transmitters over three candidate types (one-dimensional delta).
[fig4]
kind = sensitivity_1d
axis = 0.0025,0.01,0.0225,0.04,0.0625,0.09,0.1225,0.16,0.2025,0.25
n_transmitters = 2
mc_draws = 100000
base_seed = 401
candidates = BPSK,QPSK,PAM4
)";

constexpr std::string_view kFig6 = R"(# Analytic vs Monte Carlo sensitivity, three transmitters over four
# candidate types (two-dimensional deltas).
[fig6]
kind = sensitivity_2d
axis = 0.0025,0.01,0.0225,0.04,0.0625,0.09,0.1225,0.16,0.2025,0.25
n_transmitters = 3
mc_draws = 100000
base_seed = 601
candidates = BPSK,QPSK,PAM4,QAM16
)";

constexpr std::string_view kFig7 = R"(# Single-user classification vs asynchronous interval theta at three
# interference levels; per-transmitter sync errors drawn from U(0, theta).
[fig7-sir10]
kind = sumc_sync_sweep
axis = 0:0.05:0.3
snr_db = 15
sir_db = 10
n_symbols = 2000
n_trials = 2000
base_seed = 701
candidates = BPSK,QPSK,PAM4,QAM16

[fig7-sir15]
kind = sumc_sync_sweep
axis = 0:0.05:0.3
snr_db = 15
sir_db = 15
n_symbols = 2000
n_trials = 2000
base_seed = 702
candidates = BPSK,QPSK,PAM4,QAM16

[fig7-sir20]
kind = sumc_sync_sweep
axis = 0:0.05:0.3
snr_db = 15
sir_db = 20
n_symbols = 2000
n_trials = 2000
base_seed = 703
candidates = BPSK,QPSK,PAM4,QAM16
)";

constexpr std::string_view kFig8 = R"(# Multiuser super-class classification vs asynchronous interval theta,
# curves parameterized by the number of symbols.
[fig8-n6000]
kind = mumc_sync_sweep
axis = 0:0.03:0.12
snr_db = 20
n_transmitters = 3
n_symbols = 6000
n_trials = 2000
base_seed = 801
candidates = BPSK,QPSK,PAM4,QAM16

[fig8-n10000]
kind = mumc_sync_sweep
axis = 0:0.03:0.12
snr_db = 20
n_transmitters = 3
n_symbols = 10000
n_trials = 2000
base_seed = 802
candidates = BPSK,QPSK,PAM4,QAM16
)";

struct Preset {
    std::string_view name;
    std::string_view config;
};

constexpr std::array<Preset, 6> kPresets = {{
    {"fig2", kFig2},
    {"fig3", kFig3},
    {"fig4", kFig4},
    {"fig6", kFig6},
    {"fig7", kFig7},
    {"fig8", kFig8},
}};

constexpr std::array<std::string_view, 6> kPresetNames = {
    "fig2", "fig3", "fig4", "fig6", "fig7", "fig8"};

} // namespace

std::span<const std::string_view> preset_names() { return kPresetNames; }

std::optional<std::string_view> preset_config(std::string_view name) {
    for (const auto& p : kPresets)
        if (p.name == name) return p.config;
    return std::nullopt;
}

std::vector<Experiment> load_preset(std::string_view name) {
    const auto cfg = preset_config(name);
    if (!cfg)
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    return parse_config(*cfg);
}

} // namespace amc
