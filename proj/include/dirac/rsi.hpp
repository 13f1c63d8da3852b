#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dirac/scenario.hpp"
#include "dirac/spectral.hpp"

namespace dirac {

// Raw energy projection of the scenario's initial state, stamped t_i.
SpinorField prepare_retarded(const Scenario& scenario, int sign,
                             const SpectralEngine& engine);

// Time-indexed provider for the advanced wave: phi_sign(t) is the projected
// final state evolved by t - t_f with the same unitary propagator. The
// Hermitian conjugate satisfies the conjugate Dirac equation identically.
class AdvancedProvider {
  public:
    AdvancedProvider(SpinorField projected_final, double t_f,
                     const SpectralEngine& engine);

    SpinorField operator()(double t) const;
    const SpinorField& at_final_time() const { return at_tf_; }

  private:
    SpinorField at_tf_;
    double t_f_;
    const SpectralEngine* engine_;
};

AdvancedProvider prepare_advanced(const Scenario& scenario, int sign,
                                  const SpectralEngine& engine);

// rho_s(x) = phi1*(x) psi1(x) + phi2*(x) psi2(x), generally complex
std::vector<cplx> amplitude_density(const SpinorField& phi,
                                    const SpinorField& psi);

// j_s(x) = c (phi1* psi2 + phi2* psi1)
std::vector<cplx> amplitude_current(const SpinorField& phi,
                                    const SpinorField& psi,
                                    const PhysicalParams& params);

struct RSITransitionResult {
    cplx amplitude{};          // A_s
    double probability = 0.0;  // |A_s|^2
    TimeSeries series;         // complex rho_s snapshots
    std::vector<std::pair<double, cplx>> amplitude_trace;  // A_s(t)
    int channel = +1;
    bool normalized_projections = true;
    std::vector<std::string> warnings;
};

struct RsiOptions {
    // Renormalize the projected endpoint states to unit norm before forming
    // rho_s. This is the convention behind the quoted A_s values; the raw
    // projections of the (1,1) gaussian carry norm^2 = 1/2 each, so raw A_s
    // is exactly half the normalized one for that scenario.
    bool normalize_projections = true;
};

RSITransitionResult run_rsi(const Scenario& scenario, int sign,
                            const RsiOptions& options = {});

struct AntiparticleReport {
    double magnitude_mismatch = 0.0;   // max | |rho_s^-| - |rho_s^+| |
    double phase_reversal = 0.0;       // max | rho_s^- - conj(rho_s^+) |
    double trajectory_mismatch = 0.0;  // max_t |<x>_- - <x>_+| of |rho_s|
};

AntiparticleReport antiparticle_phase_check(const RSITransitionResult& plus,
                                            const RSITransitionResult& minus,
                                            const Grid1D& grid);

}  // namespace dirac
