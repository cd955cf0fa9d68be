#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace amc::kernels {

// Data-parallel hot loops, provided as a portable scalar reference plus an
// AVX2 variant selected at runtime (override with AMC_KERNEL=scalar|avx2
// or select_kernel()).  Variants are equivalence-tested against each other;
// a given binary on a given machine always reduces lanes in a fixed order,
// so repeated runs are bit-identical.

/// Un-normalized single-pass accumulators over a complex stream y:
///   y2 = sum y^2, a2 = sum |y|^2, a4 = sum |y|^4,
///   a2y2 = sum |y|^2 y^2, a6 = sum |y|^6.
struct MomentSums {
    double y2_re = 0.0, y2_im = 0.0;
    double a2 = 0.0, a4 = 0.0, a6 = 0.0;
    double a2y2_re = 0.0, a2y2_im = 0.0;

    MomentSums& operator+=(const MomentSums& o) {
        y2_re += o.y2_re;
        y2_im += o.y2_im;
        a2 += o.a2;
        a4 += o.a4;
        a6 += o.a6;
        a2y2_re += o.a2y2_re;
        a2y2_im += o.a2y2_im;
        return *this;
    }
};

MomentSums moment_sums_scalar(const std::complex<double>* y, std::size_t n);

/// dst[i] += a * x[i]
void scaled_add_scalar(std::complex<double>* dst, const std::complex<double>* x,
                       double a, std::size_t n);

#if defined(AMC_HAVE_AVX2)
MomentSums moment_sums_avx2(const std::complex<double>* y, std::size_t n);
void scaled_add_avx2(std::complex<double>* dst, const std::complex<double>* x,
                     double a, std::size_t n);
#endif

/// Runtime-dispatched entry points.
MomentSums moment_sums(const std::complex<double>* y, std::size_t n);
void scaled_add(std::complex<double>* dst, const std::complex<double>* x,
                double a, std::size_t n);

/// Name of the variant behind the dispatched entry points.
std::string_view active_kernel();

/// Force a variant ("scalar" or "avx2"); returns false if unavailable.
/// Not thread-safe against concurrent kernel use -- select at startup.
bool select_kernel(std::string_view name);

} // namespace amc::kernels
