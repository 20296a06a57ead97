#include "cantor_beam/banded_cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cantor_beam {

namespace {

BandScalar wide_abs(BandScalar x) { return x < 0 ? -x : x; }

BandScalar wide_sqrt(BandScalar x) {
    BandScalar y = std::sqrt(static_cast<long double>(x));
    for (int k = 0; k < 2; ++k) y = (y + x / y) / 2;
    return y;
}

}  // namespace

NotPositiveDefinite::NotPositiveDefinite(std::size_t row, double pivot)
    : std::runtime_error("matrix is not positive definite at row " + std::to_string(row) +
                         " (pivot " + std::to_string(pivot) + ")"),
      row_(row),
      pivot_(pivot) {}

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t n, std::size_t half_bandwidth)
    : n_(n), bw_(half_bandwidth), band_(n * (half_bandwidth + 1), 0.0) {}

void SymmetricBandMatrix::add(std::size_t i, std::size_t j, BandScalar v) {
    if (j < i) std::swap(i, j);
    if (j >= n_ || j - i > bw_) throw std::out_of_range("entry outside the band");
    at(i, j) += v;
}

double SymmetricBandMatrix::get(std::size_t i, std::size_t j) const {
    if (j < i) std::swap(i, j);
    if (j >= n_) throw std::out_of_range("entry outside the matrix");
    if (j - i > bw_) return 0.0;
    return static_cast<double>(at(i, j));
}

void SymmetricBandMatrix::factor() {
    constexpr BandScalar kRelativePivotFloor = 1e-14;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t k0 = i > bw_ ? i - bw_ : 0;
        const std::size_t jmax = std::min(n_ - 1, i + bw_);
        const BandScalar original = at(i, i);
        for (std::size_t j = i; j <= jmax; ++j) {
            BandScalar sum = at(i, j);
            const std::size_t kstart = std::max(k0, j > bw_ ? j - bw_ : 0);
            for (std::size_t k = kstart; k < i; ++k) sum -= at(k, i) * at(k, j);
            if (j == i) {
                if (!(sum > kRelativePivotFloor * wide_abs(original))) {
                    throw NotPositiveDefinite(i, static_cast<double>(sum));
                }
                at(i, i) = wide_sqrt(sum);
            } else {
                at(i, j) = sum / at(i, i);
            }
        }
    }
    factored_ = true;
}

std::vector<double> SymmetricBandMatrix::solve(std::span<const double> rhs) const {
    if (!factored_) throw std::logic_error("solve called before factor");
    if (rhs.size() != n_) throw std::invalid_argument("right-hand side has the wrong length");
    std::vector<BandScalar> y(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t k0 = i > bw_ ? i - bw_ : 0;
        BandScalar sum = y[i];
        for (std::size_t k = k0; k < i; ++k) sum -= at(k, i) * y[k];
        y[i] = sum / at(i, i);
    }
    for (std::size_t ii = n_; ii-- > 0;) {
        const std::size_t jmax = std::min(n_ - 1, ii + bw_);
        BandScalar sum = y[ii];
        for (std::size_t j = ii + 1; j <= jmax; ++j) sum -= at(ii, j) * y[j];
        y[ii] = sum / at(ii, ii);
    }
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<double>(y[i]);
    return out;
}

std::vector<double> SymmetricBandMatrix::multiply(std::span<const double> x) const {
    if (factored_) throw std::logic_error("multiply called after factor");
    std::vector<BandScalar> y(n_, 0.0L);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t jmax = std::min(n_ - 1, i + bw_);
        y[i] += at(i, i) * x[i];
        for (std::size_t j = i + 1; j <= jmax; ++j) {
            y[i] += at(i, j) * x[j];
            y[j] += at(i, j) * x[i];
        }
    }
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<double>(y[i]);
    return out;
}

}  // namespace cantor_beam
