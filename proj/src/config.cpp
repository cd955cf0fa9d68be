#include "amc/sweep.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace amc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view v, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double x = std::stod(std::string(v), &used);
        if (used != v.size()) fail(line_no, "trailing junk in number '" + std::string(v) + "'");
        return x;
    } catch (const std::invalid_argument&) {
        fail(line_no, "not a number: '" + std::string(v) + "'");
    } catch (const std::out_of_range&) {
        fail(line_no, "number out of range: '" + std::string(v) + "'");
    }
}

std::int64_t parse_int(std::string_view v, std::size_t line_no) {
    std::int64_t x = 0;
    const auto* first = v.data();
    const auto* last = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last)
        fail(line_no, "not an integer: '" + std::string(v) + "'");
    return x;
}

std::uint64_t parse_uint(std::string_view v, std::size_t line_no) {
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        fail(line_no, "not an unsigned integer: '" + std::string(v) + "'");
    return x;
}

std::vector<std::string_view> split(std::string_view v, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = v.find(sep);
        parts.push_back(trim(v.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        v.remove_prefix(pos + 1);
    }
    return parts;
}

/// "lo:step:hi" (inclusive) or a comma-separated value list.
std::vector<double> parse_axis(std::string_view v, std::size_t line_no) {
    std::vector<double> axis;
    if (std::count(v.begin(), v.end(), ':') == 2) {
        const auto parts = split(v, ':');
        const double lo = parse_double(parts[0], line_no);
        const double step = parse_double(parts[1], line_no);
        const double hi = parse_double(parts[2], line_no);
        if (!(step > 0.0) || hi < lo) fail(line_no, "bad axis range");
        const auto count = static_cast<std::size_t>(std::round((hi - lo) / step));
        if (std::abs(lo + step * static_cast<double>(count) - hi) > 1e-9 * std::max(1.0, std::abs(hi)))
            fail(line_no, "axis range is not a whole number of steps");
        for (std::size_t i = 0; i <= count; ++i)
            axis.push_back(lo + step * static_cast<double>(i));
    } else {
        for (const auto& part : split(v, ','))
            axis.push_back(parse_double(part, line_no));
    }
    return axis;
}

std::vector<ModulationType> parse_candidates(std::string_view v, std::size_t line_no) {
    std::vector<ModulationType> mods;
    for (const auto& part : split(v, ',')) {
        const auto m = parse_modulation(part);
        if (!m) fail(line_no, "unknown modulation '" + std::string(part) + "'");
        mods.push_back(*m);
    }
    return mods;
}

void apply_key(Experiment& e, std::string_view key, std::string_view value,
               std::size_t line_no) {
    if (key == "kind") {
        const auto k = parse_experiment_kind(value);
        if (!k) fail(line_no, "unknown kind '" + std::string(value) + "'");
        e.kind = *k;
    } else if (key == "axis") {
        e.axis = parse_axis(value, line_no);
    } else if (key == "n_symbols") {
        e.n_symbols = parse_int(value, line_no);
    } else if (key == "n_trials") {
        e.n_trials = parse_int(value, line_no);
    } else if (key == "base_seed") {
        e.base_seed = parse_uint(value, line_no);
    } else if (key == "candidates") {
        e.candidates = parse_candidates(value, line_no);
    } else if (key == "n_transmitters") {
        e.n_transmitters = static_cast<int>(parse_int(value, line_no));
    } else if (key == "sir_db") {
        e.sir_db = parse_double(value, line_no);
    } else if (key == "snr_db") {
        e.snr_db = parse_double(value, line_no);
    } else if (key == "noise_variance") {
        e.noise_variance = parse_double(value, line_no);
    } else if (key == "mc_draws") {
        e.mc_draws = parse_int(value, line_no);
    } else {
        fail(line_no, "unknown key '" + std::string(key) + "'");
    }
}

} // namespace

std::vector<Experiment> parse_config(std::string_view text) {
    std::vector<Experiment> exps;
    bool in_section = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            const auto name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) fail(line_no, "empty section name");
            exps.emplace_back();
            exps.back().label = std::string(name);
            in_section = true;
            continue;
        }
        if (!in_section) fail(line_no, "key outside of a [section]");
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        apply_key(exps.back(), trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                  line_no);
    }
    if (exps.empty()) throw std::invalid_argument("config: no experiment sections");
    for (const auto& e : exps) validate(e);
    return exps;
}

std::vector<Experiment> load_config_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace amc
