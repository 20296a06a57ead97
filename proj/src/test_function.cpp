#include "cantor_beam/test_function.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cantor_beam/simd/kernels.hpp"

namespace cantor_beam {

TestFunction TestFunction::monomial(int degree) {
    if (degree < 0 || degree > 12) throw std::invalid_argument("monomial degree must be in [0, 12]");
    return {Kind::Monomial, degree, 0.0, 0.0};
}

TestFunction TestFunction::hat(double apex, double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("hat half-width must be positive");
    return {Kind::Hat, 0, apex, half_width};
}

TestFunction TestFunction::bump(double center, double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("bump half-width must be positive");
    return {Kind::Bump, 0, center, half_width};
}

double TestFunction::operator()(double x) const {
    switch (kind_) {
        case Kind::Monomial:
            return std::pow(x, degree_);
        case Kind::Hat:
            return std::max(0.0, 1.0 - std::abs(x - center_) / half_width_);
        case Kind::Bump: {
            const double r = (x - center_) / half_width_;
            if (std::abs(r) >= 1.0) return 0.0;
            return std::exp(1.0 - 1.0 / (1.0 - r * r));
        }
    }
    return 0.0;
}

void TestFunction::evaluate(std::span<const double> x, std::span<double> out) const {
    if (x.size() != out.size()) throw std::invalid_argument("TestFunction::evaluate: size mismatch");
    switch (kind_) {
        case Kind::Monomial: {
            const Polynomial p = Polynomial::monomial(degree_);
            p.evaluate(x, out);
            return;
        }
        case Kind::Hat:
            simd::hat(center_, half_width_, x, out);
            return;
        case Kind::Bump:
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = (*this)(x[i]);
            return;
    }
}

std::vector<double> TestFunction::breakpoints() const {
    switch (kind_) {
        case Kind::Monomial:
            return {};
        case Kind::Hat:
            return {center_ - half_width_, center_, center_ + half_width_};
        case Kind::Bump:
            return {center_ - half_width_, center_ + half_width_};
    }
    return {};
}

double TestFunction::panel_width() const {
    switch (kind_) {
        case Kind::Monomial:
        case Kind::Hat:
            return std::numeric_limits<double>::infinity();
        case Kind::Bump:
            return half_width_ / 32.0;
    }
    return std::numeric_limits<double>::infinity();
}

std::optional<Polynomial> TestFunction::as_polynomial() const {
    if (kind_ == Kind::Monomial) return Polynomial::monomial(degree_);
    return std::nullopt;
}

std::string TestFunction::name() const {
    char buf[64];
    switch (kind_) {
        case Kind::Monomial:
            std::snprintf(buf, sizeof buf, "mono%d", degree_);
            break;
        case Kind::Hat:
            std::snprintf(buf, sizeof buf, "hat_c%.6g_w%.6g", center_, half_width_);
            break;
        case Kind::Bump:
            std::snprintf(buf, sizeof buf, "bump_c%.6g_w%.6g", center_, half_width_);
            break;
    }
    return buf;
}

std::vector<TestFunction> default_test_suite(double ell) {
    std::vector<TestFunction> suite;
    for (int d = 0; d <= 4; ++d) suite.push_back(TestFunction::monomial(d));
    suite.push_back(TestFunction::hat(2.0 * ell / 9.0, ell / 9.0));
    suite.push_back(TestFunction::hat(0.7 * ell, 0.15 * ell));
    suite.push_back(TestFunction::hat(0.5 * ell, 0.1 * ell));
    suite.push_back(TestFunction::bump(0.3 * ell, 0.25 * ell));
    return suite;
}

}  // namespace cantor_beam
