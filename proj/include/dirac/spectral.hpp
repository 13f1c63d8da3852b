#pragma once

#include <fftw3.h>

#include <vector>

#include "dirac/field.hpp"
#include "dirac/params.hpp"

namespace dirac {

// 2x2 complex matrix, row-major.
struct Mat2 {
    cplx m00{}, m01{}, m10{}, m11{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator+(const Mat2& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    Mat2 operator-(const Mat2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    Mat2 operator*(cplx s) const { return {s * m00, s * m01, s * m10, s * m11}; }
    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
    cplx trace() const { return m00 + m11; }
    cplx det() const { return m00 * m11 - m01 * m10; }
    void apply(cplx& a, cplx& b) const {
        cplx ra = m00 * a + m01 * b;
        cplx rb = m10 * a + m11 * b;
        a = ra;
        b = rb;
    }
    double max_abs_diff(const Mat2& o) const;
};

double dispersion_energy(double k, const PhysicalParams& p);

// H(k) = hbar*c*k*sigma_x + m*c^2*(mass-term matrix)
Mat2 hamiltonian_matrix(double k, const PhysicalParams& p);

// exact per-mode exponential U(k,dt) = exp(-i H(k) dt / hbar), closed form
Mat2 propagator_matrix(double k, double dt, const PhysicalParams& p);

// energy projector (I +- H(k)/E(k))/2; requires the SigmaZ mass term
Mat2 projector_matrix(double k, int sign, const PhysicalParams& p);

struct MomentumField {
    Grid1D grid;
    double time = 0.0;
    std::vector<cplx> up, dn;

    MomentumField(Grid1D g, double t)
        : grid(g), time(t), up(g.size(), cplx{}), dn(g.size(), cplx{}) {}
};

// Momentum-space machinery bound to one grid. Plans are created once;
// transforms are unitary (1/sqrt(n) each way). Not thread-safe: use one
// engine per thread.
class SpectralEngine {
  public:
    SpectralEngine(const Grid1D& grid, const PhysicalParams& params);
    ~SpectralEngine();
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    const Grid1D& grid() const { return grid_; }
    const PhysicalParams& params() const { return params_; }

    MomentumField to_momentum(const SpinorField& field) const;
    SpinorField to_position(const MomentumField& mfield) const;

    SpinorField propagate(const SpinorField& field, double dt) const;
    SpinorField project_energy(const SpinorField& field, int sign) const;

    // spectral d/dx of a scalar lattice function
    std::vector<cplx> derivative(const std::vector<cplx>& values) const;

    // fraction of norm sitting in the Nyquist mode
    double nyquist_weight(const SpinorField& field) const;

  private:
    void fft(std::vector<cplx>& data, int direction) const;

    Grid1D grid_;
    PhysicalParams params_;
    std::vector<double> energies_;
    mutable std::vector<cplx> buf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

}  // namespace dirac
