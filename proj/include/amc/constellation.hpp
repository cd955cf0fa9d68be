#pragma once

#include "amc/types.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace amc {

/// Built-in modulation alphabets.  The registry is open in the sense that a
/// new type only needs its point list in constellation.cpp; every
/// theoretical quantity (cumulants, features) is derived from the points.
enum class ModulationType { BPSK, QPSK, PAM4, QAM16 };

inline constexpr std::array<ModulationType, 4> kBuiltinModulations = {
    ModulationType::BPSK, ModulationType::QPSK, ModulationType::PAM4,
    ModulationType::QAM16};

std::string_view to_string(ModulationType mod);
std::optional<ModulationType> parse_modulation(std::string_view name);

/// Equiprobable symbol alphabet, normalized to zero mean and unit average
/// power.
struct Constellation {
    std::vector<cplx> points;
    std::size_t size() const { return points.size(); }
};

/// Throws std::invalid_argument unless the alphabet is non-empty with zero
/// mean and unit average power (tolerance 1e-12).
void validate(const Constellation& c);

/// Registry lookup; returned alphabets satisfy validate().
const Constellation& alphabet(ModulationType mod);

/// Theoretical cumulants of a unit-power alphabet: second order (c21),
/// fourth order (c42) and sixth order (c63).  The conjugation-balanced
/// combinations are real for any alphabet.
struct CumulantSet {
    double c21;
    double c42;
    double c63;
};

/// Exact cumulants by brute-force expectation over the alphabet points.
CumulantSet theoretical_cumulants(const Constellation& c);
CumulantSet theoretical_cumulants(ModulationType mod);

/// Noise-robust single-user feature |c42| / |c63|^(2/3).  Throws
/// DegenerateFeatureError when c63 vanishes.
double theoretical_fc(ModulationType mod);

} // namespace amc
