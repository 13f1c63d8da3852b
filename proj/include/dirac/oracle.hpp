#pragma once

#include <memory>
#include <vector>

#include "dirac/field.hpp"
#include "dirac/params.hpp"

namespace dirac {

struct FDConfig {
    double dt = 1e-2;
    int stencil_order = 4;  // 2 or 4, central differences, periodic
    double stability_margin = 50.0;  // reject c*dt/dx above this

    void validate() const;
};

// Crank-Nicolson integrator for the finite-difference Hamiltonian,
// (I + i dt H_h / 2hbar) psi_{n+1} = (I - i dt H_h / 2hbar) psi_n.
// Exists to validate the spectral engine, so it shares no code with it:
// the periodic banded system is solved by a sparse LU factored once.
class CrankNicolson {
  public:
    CrankNicolson(const Grid1D& grid, const PhysicalParams& params,
                  const FDConfig& cfg);
    ~CrankNicolson();
    CrankNicolson(const CrankNicolson&) = delete;
    CrankNicolson& operator=(const CrankNicolson&) = delete;

    SpinorField step(const SpinorField& field) const;
    SpinorField evolve(const SpinorField& field, std::size_t n_steps) const;

    // effective wavenumber of the difference stencil at mode k
    double effective_k(double k) const;
    // exact single-step amplification phase for an eigenmode of H_h
    cplx eigenmode_step_factor(double k, int sign) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Exact eigenspinor plane wave of H(k) with energy sign*E(k), evolved to t.
SpinorField plane_wave_solution(double k, int sign, double t,
                                const Grid1D& grid,
                                const PhysicalParams& params);

struct ConvergenceReport {
    std::vector<double> dts;
    std::vector<double> linf;    // max-norm gap CN vs spectral at t_final
    std::vector<double> l2;
    std::vector<double> orders;  // log2(linf[i]/linf[i+1])
};

ConvergenceReport validate_against_spectral(const Grid1D& grid,
                                            const PhysicalParams& params,
                                            double sigma, double t_final,
                                            const std::vector<double>& dts,
                                            int stencil_order);

}  // namespace dirac
