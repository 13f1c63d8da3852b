#pragma once

namespace dirac {

// Mass-term matrix in H(k) = hbar*c*k*sigma_x + m*c^2*M.
// SigmaZ is the standard 1+1D Dirac mass term and the default. Identity is
// the literal sigma_0 reading; it commutes with the velocity operator, so it
// produces no zitterbewegung and is kept only as a documented switch.
enum class MassTerm { SigmaZ, Identity };

struct PhysicalParams {
    double mass = 1.0;
    double c = 1.0;
    double hbar = 1.0;
    MassTerm mass_term = MassTerm::SigmaZ;

    void validate() const;
    static PhysicalParams natural() { return {}; }
};

}  // namespace dirac
