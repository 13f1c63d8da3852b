#include "dirac/field.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "dirac/errors.hpp"

namespace dirac {

bool SpinorField::finite() const {
    for (const auto& v : up) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    for (const auto& v : dn) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

void SpinorField::check_valid() const {
    if (up.size() != grid.size() || dn.size() != grid.size()) {
        throw NumericError("spinor field length does not match its grid");
    }
    if (!finite()) throw NumericError("spinor field contains NaN/Inf");
}

SpinorField gaussian_initial_state(const Grid1D& grid, double sigma, cplx w1,
                                   cplx w2) {
    if (!(sigma > 0.0)) throw ConfigError("gaussian: sigma must be positive");
    if (std::abs(w1) == 0.0 && std::abs(w2) == 0.0) {
        throw ConfigError("gaussian: spinor weights must not both vanish");
    }
    // require at least 8 points inside +-3 sigma
    if (6.0 * sigma / grid.dx() < 8.0) {
        throw ConfigError(
            "gaussian: sigma under-resolved (fewer than 8 grid points within "
            "+-3 sigma)");
    }
    SpinorField f(grid, 0.0);
    const double amp =
        std::pow(1.0 / (8.0 * std::numbers::pi * sigma * sigma), 0.25);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        const double g = amp * std::exp(-x * x / (4.0 * sigma * sigma));
        f.up[i] = w1 * g;
        f.dn[i] = w2 * g;
    }
    return normalized(f);
}

cplx inner_product(const SpinorField& bra, const SpinorField& ket) {
    if (bra.grid != ket.grid) {
        throw NumericError("inner_product: grid mismatch");
    }
    if (std::abs(bra.time - ket.time) > 1e-12) {
        std::cerr << "warning: inner_product across time stamps " << bra.time
                  << " and " << ket.time << "\n";
    }
    cplx acc{};
    for (std::size_t i = 0; i < bra.up.size(); ++i) {
        acc += std::conj(bra.up[i]) * ket.up[i] +
               std::conj(bra.dn[i]) * ket.dn[i];
    }
    return acc * bra.grid.dx();
}

double norm_squared(const SpinorField& field) {
    double acc = 0.0;
    for (std::size_t i = 0; i < field.up.size(); ++i) {
        acc += std::norm(field.up[i]) + std::norm(field.dn[i]);
    }
    return acc * field.grid.dx();
}

SpinorField scaled(const SpinorField& field, cplx factor) {
    SpinorField out = field;
    for (auto& v : out.up) v *= factor;
    for (auto& v : out.dn) v *= factor;
    return out;
}

SpinorField normalized(const SpinorField& field) {
    const double n2 = norm_squared(field);
    if (n2 <= 0.0) throw NumericError("cannot normalize a zero field");
    return scaled(field, 1.0 / std::sqrt(n2));
}

}  // namespace dirac
