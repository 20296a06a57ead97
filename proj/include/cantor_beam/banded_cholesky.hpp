#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cantor_beam {

/// Working precision of the band solver. Penalised beam systems lose roughly
/// beta * (ell / h)^3 in relative accuracy, beyond what 64-bit mantissas can absorb.
#if defined(__SIZEOF_FLOAT128__) && (defined(__x86_64__) || defined(__i386__))
using BandScalar = __float128;
#else
using BandScalar = long double;
#endif

class NotPositiveDefinite : public std::runtime_error {
public:
    NotPositiveDefinite(std::size_t row, double pivot);
    std::size_t row() const { return row_; }
    double pivot() const { return pivot_; }

private:
    std::size_t row_;
    double pivot_;
};

/// Symmetric matrix with `half_bandwidth` nonzero superdiagonals, upper band stored
/// row by row in BandScalar precision. factor() overwrites it with R such that A = R^T R.
class SymmetricBandMatrix {
public:
    SymmetricBandMatrix(std::size_t n, std::size_t half_bandwidth);

    std::size_t size() const { return n_; }
    std::size_t half_bandwidth() const { return bw_; }

    /// A(i, j) += v; |i - j| must not exceed the bandwidth.
    void add(std::size_t i, std::size_t j, BandScalar v);
    double get(std::size_t i, std::size_t j) const;

    /// In-place Cholesky without pivoting. Throws NotPositiveDefinite when a pivot is
    /// not safely positive relative to the original diagonal entry.
    void factor();
    bool factored() const { return factored_; }

    /// Solves A x = rhs with the stored factor.
    std::vector<double> solve(std::span<const double> rhs) const;

    /// y = A x, valid only before factor().
    std::vector<double> multiply(std::span<const double> x) const;

private:
    BandScalar& at(std::size_t i, std::size_t j) { return band_[i * (bw_ + 1) + (j - i)]; }
    BandScalar at(std::size_t i, std::size_t j) const { return band_[i * (bw_ + 1) + (j - i)]; }

    std::size_t n_;
    std::size_t bw_;
    std::vector<BandScalar> band_;
    bool factored_ = false;
};

}  // namespace cantor_beam
