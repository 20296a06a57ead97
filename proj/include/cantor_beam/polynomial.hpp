#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <vector>

#include "cantor_beam/simd/kernels.hpp"

namespace cantor_beam {

/// Real polynomial with ascending coefficients.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {}
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

    static Polynomial monomial(int degree) {
        std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
        c.back() = 1.0;
        return Polynomial(std::move(c));
    }

    std::span<const double> coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
    }

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    void evaluate(std::span<const double> x, std::span<double> out) const { simd::horner(coeffs_, x, out); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
        std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(double s, Polynomial p) {
        for (auto& c : p.coeffs_) c *= s;
        return p;
    }

    /// Sum of coefficient * moment, for moments of some measure.
    double integrate_against(std::span<const double> moments) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) sum += coeffs_[k] * moments[k];
        return sum;
    }

private:
    std::vector<double> coeffs_;
};

}  // namespace cantor_beam
