#pragma once

// Data-parallel inner loops used by the quadrature and grid code. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2+FMA variant; the variant
// is picked once at runtime from CPUID and the CANTOR_BEAM_SIMD override
// (scalar | avx2 | auto).

#include <cstddef>
#include <span>
#include <string_view>

namespace cantor_beam::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    /// sum a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// out[i] = sum_k coeffs[k] * x[i]^k (ascending coefficients)
    void (*horner)(const double* coeffs, std::size_t n_coeffs, const double* x, double* out, std::size_t n);
    /// out[i] = max(0, 1 - |x[i] - apex| * inv_half_width)
    void (*hat)(double apex, double inv_half_width, const double* x, double* out, std::size_t n);
    /// Trapezoid rule for |a - b| on the sorted abscissae x.
    double (*trapezoid_abs_diff)(const double* x, const double* a, const double* b, std::size_t n);
};

bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);

/// Kernels for a specific ISA; throws std::runtime_error when not supported here.
const KernelTable& kernels_for(Isa isa);

/// The ISA selected for this process.
Isa active_isa();
const KernelTable& kernels();

double dot(std::span<const double> a, std::span<const double> b);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
void hat(double apex, double half_width, std::span<const double> x, std::span<double> out);
double trapezoid_abs_diff(std::span<const double> x, std::span<const double> a, std::span<const double> b);

}  // namespace cantor_beam::simd
