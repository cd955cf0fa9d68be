#include "amc/kernels.hpp"

#include <cstdlib>

namespace amc::kernels {

MomentSums moment_sums_scalar(const std::complex<double>* y, std::size_t n) {
    MomentSums s;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = y[i].real();
        const double im = y[i].imag();
        const double a2 = re * re + im * im;
        const double y2re = re * re - im * im;
        const double y2im = 2.0 * re * im;
        const double a4 = a2 * a2;
        s.y2_re += y2re;
        s.y2_im += y2im;
        s.a2 += a2;
        s.a4 += a4;
        s.a6 += a4 * a2;
        s.a2y2_re += a2 * y2re;
        s.a2y2_im += a2 * y2im;
    }
    return s;
}

void scaled_add_scalar(std::complex<double>* dst, const std::complex<double>* x,
                       double a, std::size_t n) {
    auto* d = reinterpret_cast<double*>(dst);
    const auto* s = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < 2 * n; ++i) d[i] += a * s[i];
}

namespace {

struct Variant {
    MomentSums (*moments)(const std::complex<double>*, std::size_t);
    void (*scaled)(std::complex<double>*, const std::complex<double>*, double,
                   std::size_t);
    const char* name;
};

constexpr Variant kScalar{moment_sums_scalar, scaled_add_scalar, "scalar"};

#if defined(AMC_HAVE_AVX2)
constexpr Variant kAvx2{moment_sums_avx2, scaled_add_avx2, "avx2"};

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
#endif

Variant pick_variant() {
#if defined(AMC_HAVE_AVX2)
    if (const char* env = std::getenv("AMC_KERNEL")) {
        const std::string_view want(env);
        if (want == "scalar") return kScalar;
        if (want == "avx2" && avx2_supported()) return kAvx2;
    } else if (avx2_supported()) {
        return kAvx2;
    }
#endif
    return kScalar;
}

Variant& active() {
    static Variant v = pick_variant();
    return v;
}

} // namespace

MomentSums moment_sums(const std::complex<double>* y, std::size_t n) {
    return active().moments(y, n);
}

void scaled_add(std::complex<double>* dst, const std::complex<double>* x, double a,
                std::size_t n) {
    active().scaled(dst, x, a, n);
}

std::string_view active_kernel() { return active().name; }

bool select_kernel(std::string_view name) {
    if (name == "scalar") {
        active() = kScalar;
        return true;
    }
#if defined(AMC_HAVE_AVX2)
    if (name == "avx2" && avx2_supported()) {
        active() = kAvx2;
        return true;
    }
#endif
    return false;
}

} // namespace amc::kernels
