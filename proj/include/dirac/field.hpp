#pragma once

#include <complex>
#include <vector>

#include "dirac/grid.hpp"

namespace dirac {

using cplx = std::complex<double>;

// Two-component spinor field sampled on a Grid1D at one time stamp.
// Immutable by convention: operations return new fields.
struct SpinorField {
    Grid1D grid;
    double time = 0.0;
    std::vector<cplx> up;  // psi_1
    std::vector<cplx> dn;  // psi_2

    SpinorField(Grid1D g, double t)
        : grid(g), time(t), up(g.size(), cplx{}), dn(g.size(), cplx{}) {}

    bool finite() const;
    void check_valid() const;  // throws NumericError on size mismatch / NaN
};

// Gaussian packet with per-component weights, renormalized to unit norm.
// For sigma = 2 and weights (1,1) this is (1/(32*pi))^{1/4} e^{-x^2/16} (1,1)^T.
SpinorField gaussian_initial_state(const Grid1D& grid, double sigma,
                                   cplx w1, cplx w2);

// sum over sites of (bra1* ket1 + bra2* ket2) * dx. Grid mismatch is a hard
// error; mismatched time stamps only warn (advanced/retarded overlaps are
// evaluated across constructions).
cplx inner_product(const SpinorField& bra, const SpinorField& ket);

double norm_squared(const SpinorField& field);

SpinorField scaled(const SpinorField& field, cplx factor);
SpinorField normalized(const SpinorField& field);

}  // namespace dirac
