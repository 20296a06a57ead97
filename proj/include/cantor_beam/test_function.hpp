#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantor_beam/polynomial.hpp"

namespace cantor_beam {

/// Continuous test functions used to probe weak* convergence.
class TestFunction {
public:
    enum class Kind { Monomial, Hat, Bump };

    static TestFunction monomial(int degree);
    /// Piecewise-linear tent, 1 at apex, supported on [apex - half_width, apex + half_width].
    static TestFunction hat(double apex, double half_width);
    /// C-infinity bump exp(1 - 1/(1 - r^2)), r = (x - center)/half_width, peak value 1.
    static TestFunction bump(double center, double half_width);

    Kind kind() const { return kind_; }
    int degree() const { return degree_; }
    double center() const { return center_; }
    double half_width() const { return half_width_; }

    double operator()(double x) const;
    void evaluate(std::span<const double> x, std::span<double> out) const;

    /// Points where the function is not smooth (support edges, apex).
    std::vector<double> breakpoints() const;
    /// Longest panel on which 6-point Gauss quadrature resolves the function well.
    double panel_width() const;

    std::optional<Polynomial> as_polynomial() const;
    std::string name() const;

private:
    TestFunction(Kind kind, int degree, double center, double half_width)
        : kind_(kind), degree_(degree), center_(center), half_width_(half_width) {}

    Kind kind_;
    int degree_ = 0;
    double center_ = 0.0;
    double half_width_ = 0.0;
};

inline constexpr const char* kTestSuiteVersion = "suite-v1";

/// Fixed suite: monomials of degree 0..4, a hat at a triadic apex, a hat at a
/// non-triadic apex, a hat inside the first removed gap, and one smooth bump.
std::vector<TestFunction> default_test_suite(double ell);

}  // namespace cantor_beam
