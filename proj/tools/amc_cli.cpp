// amc: command-line front end for the modulation-classification toolkit.
// Exit codes: 0 success, 1 usage error, 2 runtime/data error.

#include "amc/emit.hpp"
#include "amc/signal.hpp"
#include "amc/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using amc::ModulationType;
using ordered_json = nlohmann::ordered_json;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw amc::Error("cannot open output file " + out_path);
    f << text;
    if (!f) throw amc::Error("short write to " + out_path);
}

std::vector<ModulationType> parse_candidate_list(const std::string& csv) {
    std::vector<ModulationType> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = amc::parse_modulation(item);
        if (!m) throw amc::Error("unknown modulation '" + item + "'");
        out.push_back(*m);
    }
    if (out.empty()) throw amc::Error("empty candidate list");
    return out;
}

// "MOD[:amplitude[:sync_error]]" items separated by commas.
std::vector<amc::TransmitterSpec> parse_transmitters(const std::string& arg) {
    std::vector<amc::TransmitterSpec> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::stringstream fields(item);
        std::string mod, amp, eps;
        std::getline(fields, mod, ':');
        std::getline(fields, amp, ':');
        std::getline(fields, eps, ':');
        const auto m = amc::parse_modulation(mod);
        if (!m) throw amc::Error("unknown modulation '" + mod + "'");
        amc::TransmitterSpec tx{*m, 1.0, 0.0};
        if (!amp.empty()) tx.amplitude = std::stod(amp);
        if (!eps.empty()) tx.sync_error = std::stod(eps);
        out.push_back(tx);
    }
    if (out.empty()) throw amc::Error("empty transmitter list");
    return out;
}

int run_table(const std::string& format, const std::string& out_path) {
    std::ostringstream os;
    if (format == "csv") {
        os << "modulation,c21,c42,c63,fc\n";
        for (auto m : amc::kBuiltinModulations) {
            const auto c = amc::theoretical_cumulants(m);
            os << amc::to_string(m) << ',' << amc::format_g12(c.c21) << ','
               << amc::format_g12(c.c42) << ',' << amc::format_g12(c.c63) << ','
               << amc::format_g12(amc::theoretical_fc(m)) << '\n';
        }
    } else if (format == "json") {
        ordered_json j = ordered_json::array();
        for (auto m : amc::kBuiltinModulations) {
            const auto c = amc::theoretical_cumulants(m);
            ordered_json o;
            o["modulation"] = std::string(amc::to_string(m));
            o["c21"] = c.c21;
            o["c42"] = c.c42;
            o["c63"] = c.c63;
            o["fc"] = amc::theoretical_fc(m);
            j.push_back(std::move(o));
        }
        os << j.dump(2) << '\n';
    } else {
        os << "modulation    c21       c42       c63        fc\n";
        for (auto m : amc::kBuiltinModulations) {
            const auto c = amc::theoretical_cumulants(m);
            char line[128];
            std::snprintf(line, sizeof(line), "%-10s %6.3f  %8.4f  %8.4f  %8.4f\n",
                          std::string(amc::to_string(m)).c_str(), c.c21, c.c42, c.c63,
                          amc::theoretical_fc(m));
            os << line;
        }
    }
    write_output(os.str(), out_path);
    return 0;
}

int run_synth(const std::string& transmitters, double noise_variance,
              std::int64_t n_symbols, std::uint64_t seed,
              const std::string& out_path) {
    amc::Scenario sc;
    sc.transmitters = parse_transmitters(transmitters);
    sc.noise_variance = noise_variance;
    sc.n_symbols = n_symbols;
    sc.seed = seed;
    const auto y = amc::synthesize(sc);
    amc::write_stream(out_path, y, &sc);
    std::cerr << "wrote " << y.size() << " samples to " << out_path << "\n";
    return 0;
}

int run_classify(const std::string& input, const std::string& mode,
                 const std::string& candidates_csv, int m, double noise_variance,
                 bool with_baseline, const std::string& format,
                 const std::string& out_path) {
    const auto y = amc::read_stream(input);
    const auto candidates = parse_candidate_list(candidates_csv);

    ordered_json j;
    std::ostringstream os;
    if (mode == "sumc") {
        const auto v = amc::classify_sumc(y, candidates);
        const auto name = amc::to_string(candidates[static_cast<std::size_t>(v.decided)]);
        j["mode"] = "sumc";
        j["decided"] = std::string(name);
        j["feature"] = v.estimated_feature;
        j["margin"] = v.margin;
        os << "sumc verdict: " << name << "\n  feature = " << v.estimated_feature
           << "\n  margin  = " << v.margin << "\n";
        if (with_baseline) {
            const auto b = amc::classify_baseline_c42(y, candidates, noise_variance);
            const auto bname =
                amc::to_string(candidates[static_cast<std::size_t>(b.decided)]);
            j["baseline_decided"] = std::string(bname);
            j["baseline_feature"] = b.estimated_feature;
            j["baseline_margin"] = b.margin;
            os << "c42 verdict:  " << bname << "\n  feature = " << b.estimated_feature
               << "\n  margin  = " << b.margin << "\n";
        }
    } else if (mode == "mumc") {
        const auto scs = amc::enumerate_superclasses(candidates, m);
        const auto v = amc::classify_mumc(y, scs, m, noise_variance);
        std::string label;
        for (auto mod : scs[static_cast<std::size_t>(v.decided)].members) {
            if (!label.empty()) label += '+';
            label += amc::to_string(mod);
        }
        j["mode"] = "mumc";
        j["decided"] = label;
        j["feature"] = v.estimated_feature;
        j["margin"] = v.margin;
        os << "mumc verdict: " << label << "\n  feature = " << v.estimated_feature
           << "\n  margin  = " << v.margin << "\n";
    } else {
        throw amc::Error("classify: mode must be sumc or mumc");
    }
    write_output(format == "json" ? j.dump(2) + "\n" : os.str(), out_path);
    return 0;
}

void apply_overrides(std::vector<amc::Experiment>& exps, std::int64_t trials,
                     std::int64_t draws, std::uint64_t seed, bool seed_set) {
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (trials > 0) exps[i].n_trials = trials;
        if (draws > 0) exps[i].mc_draws = draws;
        if (seed_set) exps[i].base_seed = amc::derive_seed(seed, {i});
    }
}

int run_sweep(const std::string& preset, const std::string& config_path,
              std::int64_t trials, std::uint64_t seed, bool seed_set, int jobs,
              const std::string& format, const std::string& out_path) {
    std::vector<amc::Experiment> exps;
    if (!preset.empty()) {
        exps = amc::load_preset(preset);
    } else {
        exps = amc::load_config_file(config_path);
    }
    apply_overrides(exps, trials, 0, seed, seed_set);
    const auto result = amc::run_experiments(exps, jobs);
    write_output(format == "json" ? amc::to_json(result) : amc::to_csv(result),
                 out_path);
    return 0;
}

int run_sensitivity(const std::string& preset, std::int64_t draws,
                    std::uint64_t seed, bool seed_set, int jobs,
                    const std::string& format, const std::string& out_path) {
    if (preset == "fig5") {
        // Decision-boundary contours for the three-transmitter problem.
        const std::vector<ModulationType> candidates(amc::kBuiltinModulations.begin(),
                                                     amc::kBuiltinModulations.end());
        const auto scs = amc::enumerate_superclasses(candidates, 3);
        std::vector<amc::ContourPoint> pts;
        for (int sci = 0; sci < static_cast<int>(scs.size()); ++sci) {
            const auto part = amc::threshold_contours(sci, scs, -3.0, 3.0, 0.01);
            pts.insert(pts.end(), part.begin(), part.end());
        }
        std::ostringstream os;
        if (format == "json") {
            ordered_json j;
            auto& arr = j["contours"] = ordered_json::array();
            for (const auto& p : pts) {
                ordered_json o;
                o["superclass_id"] = p.sc_index;
                o["threshold"] = p.threshold;
                o["delta2"] = p.delta2;
                o["delta1"] = p.delta1;
                arr.push_back(std::move(o));
            }
            os << j.dump(2) << '\n';
        } else {
            amc::write_contours_csv(pts, os);
        }
        write_output(os.str(), out_path);
        return 0;
    }
    auto exps = amc::load_preset(preset);
    apply_overrides(exps, 0, draws, seed, seed_set);
    const auto result = amc::run_experiments(exps, jobs);
    write_output(format == "json" ? amc::to_json(result) : amc::to_csv(result),
                 out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blind single- and multiuser modulation classification toolkit"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::int64_t trials = 0;
    std::int64_t draws = 0;
    int jobs = 1;

    auto add_common = [&](CLI::App* sub, bool with_format_default_csv) {
        sub->add_option("--out", out_path, "output file (default: stdout)");
        if (with_format_default_csv)
            sub->add_option("--format", format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* table = app.add_subcommand("table", "print theoretical cumulants and features");
    std::string table_format = "text";
    table->add_option("--format", table_format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    table->add_option("--out", out_path, "output file (default: stdout)");

    auto* synth = app.add_subcommand("synth", "synthesize a sample stream to a file");
    std::string transmitters;
    double noise_variance = 1.0;
    std::int64_t n_symbols = 2000;
    synth->add_option("--transmitters", transmitters,
                      "comma list of MOD[:amplitude[:sync_error]]")
        ->required();
    synth->add_option("--noise-variance", noise_variance, "total complex noise variance");
    synth->add_option("--n", n_symbols, "number of symbols");
    synth->add_option("--seed", seed, "scenario seed");
    synth->add_option("--out", out_path, "output stream file")->required();

    auto* classify = app.add_subcommand("classify", "classify a stored sample stream");
    std::string input, mode, candidates_csv = "BPSK,QPSK,PAM4,QAM16";
    std::string classify_format = "text";
    int m_transmitters = 3;
    double classify_noise = 1.0;
    bool with_baseline = false;
    classify->add_option("--input", input, "stream file from `synth`")->required();
    classify->add_option("--mode", mode, "sumc or mumc")
        ->required()
        ->check(CLI::IsMember({"sumc", "mumc"}));
    classify->add_option("--candidates", candidates_csv, "candidate modulation list");
    classify->add_option("--m", m_transmitters, "super-class size (mumc)");
    classify->add_option("--noise-variance", classify_noise,
                         "noise variance for noise-compensated features");
    classify->add_flag("--baseline", with_baseline,
                       "also run the fourth-order baseline (sumc)");
    classify->add_option("--format", classify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    classify->add_option("--out", out_path, "output file (default: stdout)");

    auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo experiment sweep");
    std::string sweep_preset, config_path;
    auto* preset_opt =
        sweep->add_option("--preset", sweep_preset, "fig2, fig3, fig7, or fig8")
            ->check(CLI::IsMember(amc::preset_names()));
    auto* config_opt =
        sweep->add_option("--config", config_path, "experiment config file");
    preset_opt->excludes(config_opt);
    config_opt->excludes(preset_opt);
    sweep->add_option("--trials", trials, "override trials per class per axis point");
    sweep->add_option("--seed", seed, "override base seed (re-derived per section)")
        ->each([&](const std::string&) { seed_set = true; });
    sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    add_common(sweep, true);

    auto* sens = app.add_subcommand("sensitivity",
                                    "amplitude-deviation sensitivity tables");
    std::string sens_preset;
    sens->add_option("--preset", sens_preset, "fig4, fig5, or fig6")
        ->required()
        ->check(CLI::IsMember({"fig4", "fig5", "fig6"}));
    sens->add_option("--draws", draws, "override Monte Carlo draws per point");
    sens->add_option("--seed", seed, "override base seed")
        ->each([&](const std::string&) { seed_set = true; });
    sens->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    add_common(sens, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (sweep->parsed() && sweep_preset.empty() && config_path.empty()) {
        std::cerr << "error: sweep requires --preset or --config\n";
        return 1;
    }

    try {
        if (table->parsed()) return run_table(table_format, out_path);
        if (synth->parsed())
            return run_synth(transmitters, noise_variance, n_symbols, seed, out_path);
        if (classify->parsed())
            return run_classify(input, mode, candidates_csv, m_transmitters,
                                classify_noise, with_baseline, classify_format,
                                out_path);
        if (sweep->parsed())
            return run_sweep(sweep_preset, config_path, trials, seed, seed_set, jobs,
                             format, out_path);
        if (sens->parsed())
            return run_sensitivity(sens_preset, draws, seed, seed_set, jobs, format,
                                   out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
