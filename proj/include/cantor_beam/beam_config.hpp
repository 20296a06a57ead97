#pragma once

#include <stdexcept>
#include <string>

namespace cantor_beam {

/// Raised for physically meaningless parameters.
class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cantilever of length ell clamped in a wall of depth delta, bending stiffness scale b,
/// transverse tip load P.
struct BeamConfig {
    double ell = 1.0;
    double delta = 0.1;
    double b = 1.0;
    double P = 1.0;

    /// Throws InvalidConfig unless every field is finite and strictly positive.
    void validate() const;
    std::string describe() const;

    /// P / b.
    double load_ratio() const { return P / b; }
};

}  // namespace cantor_beam
