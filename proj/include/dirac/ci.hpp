#pragma once

#include <string>
#include <vector>

#include "dirac/scenario.hpp"
#include "dirac/spectral.hpp"

namespace dirac {

// rho(x) = |psi1|^2 + |psi2|^2
std::vector<double> probability_density(const SpinorField& field);

// j(x) = 2 c Re(psi1* psi2)
std::vector<double> probability_current(const SpinorField& field,
                                        const PhysicalParams& params);

struct CollapseRecord {
    double t = 0.0;
    SpinorField pre;   // evolved wavefunction just before measurement
    SpinorField post;  // declared final state
};

struct CITransitionResult {
    cplx amplitude{};
    double probability = 0.0;
    TimeSeries series;
    CollapseRecord collapse;
    std::vector<std::string> warnings;
};

// Retarded evolution t_i -> t_f with snapshots, transition amplitude at
// exactly t_f, and the collapse record.
CITransitionResult run_ci(const Scenario& scenario);

// Same pipeline on explicit initial/final states (renormalized at entry).
CITransitionResult run_ci(const Scenario& scenario, const SpinorField& initial,
                          const SpinorField& final_state);

// max over sites and interior snapshots of |d rho/dt + d j/dx|, with
// centered time differences and the spectral space derivative. Needs >= 3
// uniformly spaced snapshots.
double continuity_residual_ci(const std::vector<SpinorField>& snapshots,
                              const SpectralEngine& engine);

}  // namespace dirac
