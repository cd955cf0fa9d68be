#include "amc/signal.hpp"

#include "amc/kernels.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace amc {

void validate(const Scenario& s) {
    if (s.transmitters.empty())
        throw std::invalid_argument("scenario: no transmitters");
    std::set<ModulationType> seen;
    for (const auto& tx : s.transmitters) {
        if (!seen.insert(tx.modulation).second)
            throw std::invalid_argument("scenario: duplicate modulation tag " +
                                        std::string(to_string(tx.modulation)));
        if (!(tx.amplitude >= 0.0) || !std::isfinite(tx.amplitude))
            throw std::invalid_argument("scenario: negative amplitude");
        if (!(tx.sync_error >= 0.0 && tx.sync_error < 1.0))
            throw std::invalid_argument("scenario: sync_error outside [0, 1)");
    }
    if (!(s.noise_variance >= 0.0) || !std::isfinite(s.noise_variance))
        throw std::invalid_argument("scenario: negative noise variance");
    if (s.n_symbols < 1)
        throw std::invalid_argument("scenario: n_symbols < 1");
}

std::vector<cplx> generate_symbols(ModulationType mod, std::size_t n,
                                   Xoshiro256pp& rng) {
    const Constellation& a = alphabet(mod);
    std::vector<cplx> out(n);
    for (auto& s : out) s = a.points[rng.uniform_index(a.size())];
    return out;
}

std::vector<cplx> apply_sync_error(std::span<const cplx> symbols, double eps,
                                   cplx x_prev) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("apply_sync_error: eps outside [0, 1)");
    if (eps == 0.0) return {symbols.begin(), symbols.end()};
    std::vector<cplx> out(symbols.size());
    cplx prev = x_prev;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out[i] = (1.0 - eps) * symbols[i] + eps * prev;
        prev = symbols[i];
    }
    return out;
}

std::vector<cplx> gaussian_noise(std::size_t n, double variance, Xoshiro256pp& rng) {
    if (variance < 0.0)
        throw std::invalid_argument("gaussian_noise: negative variance");
    std::vector<cplx> out(n);
    const double scale = std::sqrt(variance / 2.0);
    for (auto& s : out) {
        double z0, z1;
        rng.normal_pair(z0, z1);
        s = cplx(scale * z0, scale * z1);
    }
    return out;
}

SampleStream synthesize(const Scenario& s) {
    validate(s);
    const auto n = static_cast<std::size_t>(s.n_symbols);
    SampleStream y(n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < s.transmitters.size(); ++k) {
        const auto& tx = s.transmitters[k];
        Xoshiro256pp rng(derive_seed(s.seed, {kSaltSymbols, k}));
        // One extra leading draw serves as x(-1) for the sync-error filter.
        const auto sym = generate_symbols(tx.modulation, n + 1, rng);
        const std::span<const cplx> body(sym.data() + 1, n);
        if (tx.sync_error == 0.0) {
            kernels::scaled_add(y.data(), body.data(), tx.amplitude, n);
        } else {
            const auto shaped = apply_sync_error(body, tx.sync_error, sym[0]);
            kernels::scaled_add(y.data(), shaped.data(), tx.amplitude, n);
        }
    }
    if (s.noise_variance > 0.0) {
        Xoshiro256pp rng(derive_seed(s.seed, {kSaltNoise}));
        const double scale = std::sqrt(s.noise_variance / 2.0);
        for (auto& v : y) {
            double z0, z1;
            rng.normal_pair(z0, z1);
            v += cplx(scale * z0, scale * z1);
        }
    }
    return y;
}

std::vector<double> amplitudes_from_snr_sir(double snr_db, double sir_db, int m,
                                            double noise_variance) {
    if (m < 2)
        throw std::invalid_argument("amplitudes_from_snr_sir: need m >= 2");
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("amplitudes_from_snr_sir: noise variance must be > 0");
    const double desired_power = std::pow(10.0, snr_db / 10.0) * noise_variance;
    const double interference_total = desired_power * std::pow(10.0, -sir_db / 10.0);
    const double per_interferer = interference_total / static_cast<double>(m - 1);
    std::vector<double> amps(static_cast<std::size_t>(m), std::sqrt(per_interferer));
    amps[0] = std::sqrt(desired_power);
    return amps;
}

std::vector<double> amplitudes_equal_total_power(double snr_db, int m,
                                                 double noise_variance) {
    if (m < 1)
        throw std::invalid_argument("amplitudes_equal_total_power: need m >= 1");
    if (!(noise_variance > 0.0))
        throw std::invalid_argument(
            "amplitudes_equal_total_power: noise variance must be > 0");
    const double total_power = std::pow(10.0, snr_db / 10.0) * noise_variance;
    return std::vector<double>(static_cast<std::size_t>(m),
                               std::sqrt(total_power / static_cast<double>(m)));
}

void write_stream(const std::filesystem::path& path, std::span<const cplx> y,
                  const Scenario* meta) {
    // Raw little-endian float64 (re, im) pairs; byte order is the native
    // x86-64 layout this toolkit targets.
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("write_stream: cannot open " + path.string());
    f.write(reinterpret_cast<const char*>(y.data()),
            static_cast<std::streamsize>(y.size() * sizeof(cplx)));
    if (!f) throw Error("write_stream: short write to " + path.string());

    std::ostringstream hdr;
    hdr << "amc-stream v1\n";
    hdr << "samples = " << y.size() << "\n";
    if (meta) {
        hdr << "seed = " << meta->seed << "\n";
        hdr << "noise_variance = " << meta->noise_variance << "\n";
        for (const auto& tx : meta->transmitters)
            hdr << "transmitter = " << to_string(tx.modulation)
                << " amplitude=" << tx.amplitude << " sync_error=" << tx.sync_error
                << "\n";
    }
    std::ofstream h(path.string() + ".hdr");
    if (!h) throw Error("write_stream: cannot open " + path.string() + ".hdr");
    h << hdr.str();
}

SampleStream read_stream(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) throw Error("read_stream: cannot open " + path.string());
    const auto bytes = static_cast<std::size_t>(f.tellg());
    if (bytes % sizeof(cplx) != 0)
        throw Error("read_stream: " + path.string() +
                    " is not a whole number of complex float64 samples");
    SampleStream y(bytes / sizeof(cplx));
    f.seekg(0);
    f.read(reinterpret_cast<char*>(y.data()), static_cast<std::streamsize>(bytes));
    if (!f) throw Error("read_stream: short read from " + path.string());
    return y;
}

} // namespace amc
