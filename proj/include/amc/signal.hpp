#pragma once

#include "amc/constellation.hpp"
#include "amc/rng.hpp"
#include "amc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <span>

namespace amc {

/// One transmitter in the multiuser scenario.
struct TransmitterSpec {
    ModulationType modulation;
    double amplitude = 1.0;   // linear amplitude alpha_k, >= 0
    double sync_error = 0.0;  // two-path mixing weight eps in [0, 1)
};

/// Full description of a simulated observation window.  Identical scenarios
/// produce bit-identical streams.
struct Scenario {
    std::vector<TransmitterSpec> transmitters;
    double noise_variance = 0.0; // total variance of the complex noise
    std::int64_t n_symbols = 0;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on: empty transmitter list, duplicate
/// modulation tags, negative amplitude, sync_error outside [0, 1),
/// negative noise variance, or n_symbols < 1.
void validate(const Scenario& s);

/// n i.i.d. uniform draws from the alphabet.
std::vector<cplx> generate_symbols(ModulationType mod, std::size_t n,
                                   Xoshiro256pp& rng);

/// Residual synchronization error as a two-path mix:
///   out(n) = (1 - eps) x(n) + eps x(n-1),  with x(-1) = x_prev.
/// eps = 0 returns the input exactly.
std::vector<cplx> apply_sync_error(std::span<const cplx> symbols, double eps,
                                   cplx x_prev);

/// n circularly-symmetric complex Gaussian draws with total variance
/// `variance` (variance/2 per real dimension).
std::vector<cplx> gaussian_noise(std::size_t n, double variance,
                                 Xoshiro256pp& rng);

/// y(n) = sum_k alpha_k (sync-filtered x_k)(n) + g(n).  Per-transmitter
/// symbol substreams and the noise substream are derived from
/// scenario.seed (kSaltSymbols + transmitter index, kSaltNoise).
SampleStream synthesize(const Scenario& s);

/// Amplitudes for the single-user-of-interest regime: desired transmitter
/// first with alpha_d^2 = 10^(snr_db/10) * noise_variance, then m - 1
/// interferers equally splitting alpha_d^2 * 10^(-sir_db/10).
/// Requires m >= 2 (the SIR is defined against at least one interferer).
std::vector<double> amplitudes_from_snr_sir(double snr_db, double sir_db,
                                            int m, double noise_variance = 1.0);

/// Equal-power regime: m amplitudes with per-transmitter power
/// 10^(snr_db/10) * noise_variance / m (SNR measured on the total signal).
std::vector<double> amplitudes_equal_total_power(double snr_db, int m,
                                                 double noise_variance = 1.0);

/// Raw little-endian float64 (re, im) pairs, plus a human-readable sidecar
/// header at <path>.hdr describing the generating scenario when given.
void write_stream(const std::filesystem::path& path, std::span<const cplx> y,
                  const Scenario* meta = nullptr);
SampleStream read_stream(const std::filesystem::path& path);

} // namespace amc
