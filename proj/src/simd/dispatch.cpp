#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"

namespace cantor_beam::simd {

namespace {

Isa detect() {
    const char* env = std::getenv("CANTOR_BEAM_SIMD");
    const std::string request = env ? env : "auto";
    if (request == "scalar") return Isa::Scalar;
    if (request == "avx2") {
        if (!isa_supported(Isa::Avx2)) throw std::runtime_error("CANTOR_BEAM_SIMD=avx2 but AVX2 is unavailable");
        return Isa::Avx2;
    }
    return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

void check_sizes(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("simd kernel: mismatched span sizes");
}

}  // namespace

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(CANTOR_BEAM_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
    }
    return "unknown";
}

const KernelTable& kernels_for(Isa isa) {
    if (!isa_supported(isa)) {
        throw std::runtime_error("kernels for " + std::string(isa_name(isa)) + " unavailable on this host");
    }
#if defined(CANTOR_BEAM_HAVE_AVX2)
    if (isa == Isa::Avx2) return avx2_kernels();
#endif
    return scalar_kernels();
}

Isa active_isa() {
    static const Isa isa = detect();
    return isa;
}

const KernelTable& kernels() {
    static const KernelTable& table = kernels_for(active_isa());
    return table;
}

double dot(std::span<const double> a, std::span<const double> b) {
    check_sizes(a.size(), b.size());
    return kernels().dot(a.data(), b.data(), a.size());
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
    check_sizes(x.size(), out.size());
    kernels().horner(coeffs.data(), coeffs.size(), x.data(), out.data(), x.size());
}

void hat(double apex, double half_width, std::span<const double> x, std::span<double> out) {
    check_sizes(x.size(), out.size());
    kernels().hat(apex, 1.0 / half_width, x.data(), out.data(), x.size());
}

double trapezoid_abs_diff(std::span<const double> x, std::span<const double> a, std::span<const double> b) {
    check_sizes(x.size(), a.size());
    check_sizes(x.size(), b.size());
    return kernels().trapezoid_abs_diff(x.data(), a.data(), b.data(), x.size());
}

}  // namespace cantor_beam::simd
