#include "kernels_internal.hpp"

#include <algorithm>
#include <cmath>

namespace cantor_beam::simd {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void horner_scalar(const double* coeffs, std::size_t n_coeffs, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = n_coeffs; k-- > 0;) acc = acc * x[i] + coeffs[k];
        out[i] = acc;
    }
}

void hat_scalar(double apex, double inv_half_width, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::max(0.0, 1.0 - std::abs(x[i] - apex) * inv_half_width);
    }
}

double trapezoid_abs_diff_scalar(const double* x, const double* a, const double* b, std::size_t n) {
    if (n < 2) return 0.0;
    double sum = 0.0;
    double prev = std::abs(a[0] - b[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const double cur = std::abs(a[i] - b[i]);
        sum += (x[i] - x[i - 1]) * (prev + cur);
        prev = cur;
    }
    return 0.5 * sum;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{dot_scalar, horner_scalar, hat_scalar, trapezoid_abs_diff_scalar};
    return table;
}

}  // namespace cantor_beam::simd
