#include "cantor_beam/beam_config.hpp"

#include <cmath>
#include <cstdio>

namespace cantor_beam {

namespace {

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw InvalidConfig(std::string(name) + " must be finite and positive");
    }
}

}  // namespace

void BeamConfig::validate() const {
    require_positive(ell, "ell");
    require_positive(delta, "delta");
    require_positive(b, "b");
    require_positive(P, "P");
}

std::string BeamConfig::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "ell=%.17g delta=%.17g b=%.17g P=%.17g", ell, delta, b, P);
    return buf;
}

}  // namespace cantor_beam
