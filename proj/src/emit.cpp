#include "amc/emit.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>

namespace amc {

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

using ordered_json = nlohmann::ordered_json;

void require_single_family(const SweepResult& r) {
    if (!r.rows.empty() && !r.sensitivity_rows.empty())
        throw std::invalid_argument(
            "emit: CSV cannot mix classification and sensitivity rows");
    if (r.rows.empty() && r.sensitivity_rows.empty())
        throw std::invalid_argument("emit: empty result");
}

ordered_json experiment_json(const Experiment& e) {
    ordered_json j;
    j["kind"] = std::string(to_string(e.kind));
    j["label"] = e.label;
    j["axis"] = e.axis;
    j["n_symbols"] = e.n_symbols;
    j["n_trials"] = e.n_trials;
    j["base_seed"] = e.base_seed;
    std::vector<std::string> cands;
    for (auto m : e.candidates) cands.emplace_back(to_string(m));
    j["candidates"] = cands;
    j["n_transmitters"] = e.n_transmitters;
    j["sir_db"] = e.sir_db;
    j["snr_db"] = e.snr_db;
    j["noise_variance"] = e.noise_variance;
    j["mc_draws"] = e.mc_draws;
    return j;
}

} // namespace

void write_csv(const SweepResult& r, std::ostream& os) {
    require_single_family(r);
    if (!r.rows.empty()) {
        os << "label,axis_value,classifier,truth_id,truth,p_correct,std_err,"
              "n_trials,degenerate_rate\n";
        for (const auto& row : r.rows)
            os << row.label << ',' << format_g12(row.axis_value) << ','
               << row.classifier << ',' << row.truth_id << ',' << row.truth << ','
               << format_g12(row.p_correct) << ',' << format_g12(row.std_err) << ','
               << row.n_trials << ',' << format_g12(row.degenerate_rate) << '\n';
    } else {
        os << "sigma_delta_sq,superclass_id,p_analytic,p_montecarlo,mc_stderr\n";
        for (const auto& row : r.sensitivity_rows)
            os << format_g12(row.sigma_delta_sq) << ',' << row.superclass_id << ','
               << format_g12(row.p_analytic) << ',' << format_g12(row.p_montecarlo)
               << ',' << format_g12(row.mc_stderr) << '\n';
    }
}

std::string to_csv(const SweepResult& r) {
    std::ostringstream ss;
    write_csv(r, ss);
    return ss.str();
}

void write_json(const SweepResult& r, std::ostream& os) {
    ordered_json j;
    j["experiments"] = ordered_json::array();
    for (const auto& e : r.experiments) j["experiments"].push_back(experiment_json(e));
    if (!r.rows.empty()) {
        auto& rows = j["rows"] = ordered_json::array();
        for (const auto& row : r.rows) {
            ordered_json o;
            o["label"] = row.label;
            o["axis_value"] = row.axis_value;
            o["classifier"] = row.classifier;
            o["truth_id"] = row.truth_id;
            o["truth"] = row.truth;
            o["p_correct"] = row.p_correct;
            o["std_err"] = row.std_err;
            o["n_trials"] = row.n_trials;
            o["degenerate_rate"] = row.degenerate_rate;
            rows.push_back(std::move(o));
        }
    }
    if (!r.sensitivity_rows.empty()) {
        auto& rows = j["sensitivity_rows"] = ordered_json::array();
        for (const auto& row : r.sensitivity_rows) {
            ordered_json o;
            o["label"] = row.label;
            o["sigma_delta_sq"] = row.sigma_delta_sq;
            o["superclass_id"] = row.superclass_id;
            o["superclass"] = row.superclass;
            o["p_analytic"] = row.p_analytic;
            o["p_montecarlo"] = row.p_montecarlo;
            o["mc_stderr"] = row.mc_stderr;
            rows.push_back(std::move(o));
        }
    }
    os << j.dump(2) << '\n';
}

std::string to_json(const SweepResult& r) {
    std::ostringstream ss;
    write_json(r, ss);
    return ss.str();
}

void write_contours_csv(std::span<const ContourPoint> pts, std::ostream& os) {
    os << "superclass_id,threshold,delta2,delta1\n";
    for (const auto& p : pts)
        os << p.sc_index << ',' << format_g12(p.threshold) << ','
           << format_g12(p.delta2) << ',' << format_g12(p.delta1) << '\n';
}

} // namespace amc
