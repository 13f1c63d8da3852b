#include "dirac/spectral.hpp"

#include <cmath>

#include "dirac/errors.hpp"

namespace dirac {

namespace {
constexpr cplx kI{0.0, 1.0};

struct PauliDecomp {
    double h0;  // identity coefficient
    double hx;  // sigma_x coefficient
    double hz;  // sigma_z coefficient
};

PauliDecomp decompose(double k, const PhysicalParams& p) {
    const double kinetic = p.hbar * p.c * k;
    const double rest = p.mass * p.c * p.c;
    if (p.mass_term == MassTerm::SigmaZ) return {0.0, kinetic, rest};
    return {rest, kinetic, 0.0};
}
}  // namespace

double Mat2::max_abs_diff(const Mat2& o) const {
    double d = std::abs(m00 - o.m00);
    d = std::max(d, std::abs(m01 - o.m01));
    d = std::max(d, std::abs(m10 - o.m10));
    d = std::max(d, std::abs(m11 - o.m11));
    return d;
}

double dispersion_energy(double k, const PhysicalParams& p) {
    const double kinetic = p.hbar * p.c * k;
    const double rest = p.mass * p.c * p.c;
    return std::hypot(kinetic, rest);
}

Mat2 hamiltonian_matrix(double k, const PhysicalParams& p) {
    const auto [h0, hx, hz] = decompose(k, p);
    return {cplx{h0 + hz, 0.0}, cplx{hx, 0.0}, cplx{hx, 0.0},
            cplx{h0 - hz, 0.0}};
}

Mat2 propagator_matrix(double k, double dt, const PhysicalParams& p) {
    const auto [h0, hx, hz] = decompose(k, p);
    const double omega = std::hypot(hx, hz);
    const double theta = omega * dt / p.hbar;
    const double cth = std::cos(theta);
    // sin(theta)/omega, finite at omega -> 0
    const double snc = (omega > 1e-300) ? std::sin(theta) / omega : dt / p.hbar;
    const cplx phase = std::exp(-kI * (h0 * dt / p.hbar));
    return {phase * (cth - kI * snc * hz), phase * (-kI * snc * hx),
            phase * (-kI * snc * hx), phase * (cth + kI * snc * hz)};
}

Mat2 projector_matrix(double k, int sign, const PhysicalParams& p) {
    if (p.mass_term != MassTerm::SigmaZ) {
        throw NumericError(
            "energy projectors are only defined for the sigma_z mass term");
    }
    if (sign != 1 && sign != -1) {
        throw NumericError("projector sign must be +1 or -1");
    }
    const auto [h0, hx, hz] = decompose(k, p);
    (void)h0;
    const double e = dispersion_energy(k, p);
    const double s = static_cast<double>(sign);
    return {cplx{0.5 * (1.0 + s * hz / e), 0.0}, cplx{0.5 * s * hx / e, 0.0},
            cplx{0.5 * s * hx / e, 0.0}, cplx{0.5 * (1.0 - s * hz / e), 0.0}};
}

SpectralEngine::SpectralEngine(const Grid1D& grid, const PhysicalParams& params)
    : grid_(grid), params_(params), buf_(grid.size()) {
    params_.validate();
    energies_.resize(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        energies_[j] = dispersion_energy(grid_.k(j), params_);
    }
    auto* raw = reinterpret_cast<fftw_complex*>(buf_.data());
    const int n = static_cast<int>(grid_.size());
    fwd_ = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (fwd_ == nullptr || bwd_ == nullptr) {
        throw NumericError("FFTW plan creation failed");
    }
}

SpectralEngine::~SpectralEngine() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
}

void SpectralEngine::fft(std::vector<cplx>& data, int direction) const {
    buf_ = data;
    fftw_execute(direction == FFTW_FORWARD ? fwd_ : bwd_);
    const double scale = 1.0 / std::sqrt(static_cast<double>(grid_.size()));
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = buf_[i] * scale;
}

MomentumField SpectralEngine::to_momentum(const SpinorField& field) const {
    if (field.grid != grid_) throw NumericError("to_momentum: grid mismatch");
    MomentumField m(grid_, field.time);
    m.up = field.up;
    m.dn = field.dn;
    fft(m.up, FFTW_FORWARD);
    fft(m.dn, FFTW_FORWARD);
    return m;
}

SpinorField SpectralEngine::to_position(const MomentumField& mfield) const {
    if (mfield.grid != grid_) throw NumericError("to_position: grid mismatch");
    SpinorField f(grid_, mfield.time);
    f.up = mfield.up;
    f.dn = mfield.dn;
    fft(f.up, FFTW_BACKWARD);
    fft(f.dn, FFTW_BACKWARD);
    return f;
}

SpinorField SpectralEngine::propagate(const SpinorField& field,
                                      double dt) const {
    MomentumField m = to_momentum(field);
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        propagator_matrix(grid_.k(j), dt, params_).apply(m.up[j], m.dn[j]);
    }
    m.time = field.time + dt;
    return to_position(m);
}

SpinorField SpectralEngine::project_energy(const SpinorField& field,
                                           int sign) const {
    MomentumField m = to_momentum(field);
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        projector_matrix(grid_.k(j), sign, params_).apply(m.up[j], m.dn[j]);
    }
    return to_position(m);
}

std::vector<cplx> SpectralEngine::derivative(
    const std::vector<cplx>& values) const {
    if (values.size() != grid_.size()) {
        throw NumericError("derivative: array length mismatch");
    }
    std::vector<cplx> out = values;
    fft(out, FFTW_FORWARD);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= kI * grid_.k(j);
    // the Nyquist mode of d/dx has no conjugate partner; zero it
    out[grid_.nyquist_index()] = cplx{};
    fft(out, FFTW_BACKWARD);
    return out;
}

double SpectralEngine::nyquist_weight(const SpinorField& field) const {
    MomentumField m = to_momentum(field);
    const std::size_t j = grid_.nyquist_index();
    const double total = norm_squared(field);
    if (total <= 0.0) return 0.0;
    return (std::norm(m.up[j]) + std::norm(m.dn[j])) * grid_.dx() / total;
}

}  // namespace dirac
