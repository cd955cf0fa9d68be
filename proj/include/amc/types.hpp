#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace amc {

using cplx = std::complex<double>;

/// Contiguous buffer of complex baseband samples at symbol rate.
using SampleStream = std::vector<cplx>;

/// Base class for all recoverable toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a feature denominator is too close to zero to be meaningful
/// (e.g. a sixth-order cumulant estimate below the configured floor).
class DegenerateFeatureError : public Error {
public:
    explicit DegenerateFeatureError(const std::string& what) : Error(what) {}
};

/// Thrown when the estimated signal power c21 - sigma^2 is not positive,
/// so a noise-compensated feature cannot be formed.
class NegativeSignalPowerError : public Error {
public:
    explicit NegativeSignalPowerError(const std::string& what) : Error(what) {}
};

} // namespace amc
