#include "dirac/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/field.hpp"
#include "dirac/spectral.hpp"

namespace dirac {

void FDConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("oracle: dt must be positive");
    if (stencil_order != 2 && stencil_order != 4) {
        throw ConfigError("oracle: stencil order must be 2 or 4");
    }
    if (!(stability_margin > 0.0)) {
        throw ConfigError("oracle: stability margin must be positive");
    }
}

namespace {
using SpMat = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;
constexpr cplx kI{0.0, 1.0};

// H_h = -i hbar c sigma_x D + m c^2 M with D the periodic central-difference
// first derivative. Unknown ordering: psi1 on [0,n), psi2 on [n,2n).
SpMat fd_hamiltonian(const Grid1D& grid, const PhysicalParams& p, int order) {
    const std::size_t n = grid.size();
    const double dx = grid.dx();
    const double rest = p.mass * p.c * p.c;
    const double hc = p.hbar * p.c;
    std::vector<Triplet> trip;
    trip.reserve(n * 12);

    auto add_deriv = [&](std::size_t row_base, std::size_t col_base) {
        for (std::size_t i = 0; i < n; ++i) {
            auto at = [&](long long off) {
                return col_base +
                       static_cast<std::size_t>(
                           (static_cast<long long>(i) + off +
                            static_cast<long long>(4 * n)) %
                           static_cast<long long>(n));
            };
            if (order == 2) {
                const cplx c1 = -kI * hc / (2.0 * dx);
                trip.emplace_back(row_base + i, at(+1), c1);
                trip.emplace_back(row_base + i, at(-1), -c1);
            } else {
                const cplx c1 = -kI * hc * (8.0 / (12.0 * dx));
                const cplx c2 = -kI * hc * (-1.0 / (12.0 * dx));
                trip.emplace_back(row_base + i, at(+1), c1);
                trip.emplace_back(row_base + i, at(-1), -c1);
                trip.emplace_back(row_base + i, at(+2), c2);
                trip.emplace_back(row_base + i, at(-2), -c2);
            }
        }
    };

    // sigma_x couples the components through the derivative
    add_deriv(0, n);
    add_deriv(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        if (p.mass_term == MassTerm::SigmaZ) {
            trip.emplace_back(i, i, cplx{rest, 0.0});
            trip.emplace_back(n + i, n + i, cplx{-rest, 0.0});
        } else {
            trip.emplace_back(i, i, cplx{rest, 0.0});
            trip.emplace_back(n + i, n + i, cplx{rest, 0.0});
        }
    }

    SpMat h(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}
}  // namespace

struct CrankNicolson::Impl {
    Grid1D grid;
    PhysicalParams params;
    FDConfig cfg;
    SpMat rhs;
    Eigen::SparseLU<SpMat> lu;

    Impl(const Grid1D& g, const PhysicalParams& p, const FDConfig& c)
        : grid(g), params(p), cfg(c) {
        c.validate();
        p.validate();
        if (p.c * c.dt / g.dx() > c.stability_margin) {
            throw ConfigError("oracle: c*dt/dx exceeds the stability margin");
        }
        const SpMat h = fd_hamiltonian(g, p, c.stencil_order);
        SpMat id(h.rows(), h.cols());
        id.setIdentity();
        const cplx z = kI * (c.dt / (2.0 * p.hbar));
        SpMat lhs = id + (h * z);
        rhs = id - (h * z);
        lhs.makeCompressed();
        lu.compute(lhs);
        if (lu.info() != Eigen::Success) {
            throw NumericError("oracle: Crank-Nicolson factorization failed");
        }
    }
};

CrankNicolson::CrankNicolson(const Grid1D& grid, const PhysicalParams& params,
                             const FDConfig& cfg)
    : impl_(std::make_unique<Impl>(grid, params, cfg)) {}

CrankNicolson::~CrankNicolson() = default;

SpinorField CrankNicolson::step(const SpinorField& field) const {
    if (field.grid != impl_->grid) throw NumericError("cn_step: grid mismatch");
    const std::size_t n = impl_->grid.size();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        v[static_cast<Eigen::Index>(i)] = field.up[i];
        v[static_cast<Eigen::Index>(n + i)] = field.dn[i];
    }
    Eigen::VectorXcd out = impl_->lu.solve(impl_->rhs * v);
    if (impl_->lu.info() != Eigen::Success) {
        throw NumericError("oracle: Crank-Nicolson solve failed");
    }
    SpinorField next(field.grid, field.time + impl_->cfg.dt);
    for (std::size_t i = 0; i < n; ++i) {
        next.up[i] = out[static_cast<Eigen::Index>(i)];
        next.dn[i] = out[static_cast<Eigen::Index>(n + i)];
    }
    return next;
}

SpinorField CrankNicolson::evolve(const SpinorField& field,
                                  std::size_t n_steps) const {
    SpinorField f = field;
    for (std::size_t s = 0; s < n_steps; ++s) f = step(f);
    return f;
}

double CrankNicolson::effective_k(double k) const {
    const double dx = impl_->grid.dx();
    if (impl_->cfg.stencil_order == 2) return std::sin(k * dx) / dx;
    return (8.0 * std::sin(k * dx) - std::sin(2.0 * k * dx)) / (6.0 * dx);
}

cplx CrankNicolson::eigenmode_step_factor(double k, int sign) const {
    PhysicalParams p = impl_->params;
    const double e = dispersion_energy(effective_k(k), p);
    const cplx z = kI * (static_cast<double>(sign) * e * impl_->cfg.dt /
                         (2.0 * p.hbar));
    return (1.0 - z) / (1.0 + z);
}

SpinorField plane_wave_solution(double k, int sign, double t,
                                const Grid1D& grid,
                                const PhysicalParams& params) {
    if (params.mass_term != MassTerm::SigmaZ) {
        throw NumericError("plane_wave_solution requires the sigma_z mass term");
    }
    // k must be an exact grid mode
    const double dk = 2.0 * std::numbers::pi / grid.length();
    const double j = k / dk;
    if (std::abs(j - std::round(j)) > 1e-9) {
        throw NumericError("plane_wave_solution: k is not a grid mode");
    }
    const double e = dispersion_energy(k, params);
    const double rest = params.mass * params.c * params.c;
    const double hck = params.hbar * params.c * k;
    // eigenspinors of hck*sigma_x + rest*sigma_z
    cplx u1, u2;
    if (sign > 0) {
        u1 = e + rest;
        u2 = hck;
    } else {
        u1 = -hck;
        u2 = e + rest;
    }
    const double nrm = std::sqrt(std::norm(u1) + std::norm(u2));
    u1 /= nrm;
    u2 /= nrm;
    const double box = std::sqrt(grid.length());
    const cplx phase =
        std::exp(cplx{0.0, -static_cast<double>(sign) * e * t / params.hbar});
    SpinorField f(grid, t);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx wave = std::exp(cplx{0.0, k * grid.x(i)}) / box * phase;
        f.up[i] = u1 * wave;
        f.dn[i] = u2 * wave;
    }
    return f;
}

ConvergenceReport validate_against_spectral(const Grid1D& grid,
                                            const PhysicalParams& params,
                                            double sigma, double t_final,
                                            const std::vector<double>& dts,
                                            int stencil_order) {
    SpinorField psi0 = gaussian_initial_state(grid, sigma, 1.0, 1.0);
    SpectralEngine engine(grid, params);
    const SpinorField exact = engine.propagate(psi0, t_final);

    ConvergenceReport rep;
    rep.dts = dts;
    for (double dt : dts) {
        const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
        FDConfig cfg{.dt = dt, .stencil_order = stencil_order};
        CrankNicolson cn(grid, params, cfg);
        const SpinorField approx = cn.evolve(psi0, steps);
        double linf = 0.0, l2 = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double du = std::abs(approx.up[i] - exact.up[i]);
            const double dd = std::abs(approx.dn[i] - exact.dn[i]);
            linf = std::max({linf, du, dd});
            l2 += du * du + dd * dd;
        }
        rep.linf.push_back(linf);
        rep.l2.push_back(std::sqrt(l2 * grid.dx()));
    }
    for (std::size_t i = 0; i + 1 < rep.linf.size(); ++i) {
        rep.orders.push_back(std::log2(rep.linf[i] / rep.linf[i + 1]));
    }
    return rep;
}

}  // namespace dirac
