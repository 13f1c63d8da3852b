#pragma once

#include <vector>

#include "dirac/scenario.hpp"
#include "dirac/spectral.hpp"

namespace dirac {

// first moment of a nonnegative density
double mean_position(const std::vector<double>& density, const Grid1D& grid);

struct TrajectoryReport {
    std::vector<double> times;
    std::vector<double> mean_x;
    std::vector<double> detrended;  // mean_x - (intercept + drift*t)
    double drift_velocity = 0.0;
    double intercept = 0.0;
    double amplitude = 0.0;        // half peak-to-peak of the detrended series
    double dominant_omega = 0.0;   // argmax of the Hann periodogram
};

TrajectoryReport trajectory(const std::vector<double>& times,
                            const std::vector<double>& mean_x);

// mean_position per snapshot (|rho_s| for complex records when use_abs),
// least-squares drift removal, oscillation amplitude and dominant frequency.
TrajectoryReport trajectory(const TimeSeries& series, const Grid1D& grid,
                            bool use_abs);

struct AsymmetryReport {
    double raw = 0.0;        // max |d(x) - d(-x)| / max |d|
    double magnitude = 0.0;  // same metric on |d|
};

AsymmetryReport asymmetry_metric(const std::vector<cplx>& density,
                                 const Grid1D& grid);
AsymmetryReport asymmetry_metric(const std::vector<double>& density,
                                 const Grid1D& grid);

// max over sites and interior snapshots of |d rho/dt + d j/dx| for any
// (generally complex) density/current snapshot pair list.
double continuity_residual(const std::vector<double>& times,
                           const std::vector<std::vector<cplx>>& rho,
                           const std::vector<std::vector<cplx>>& current,
                           const SpectralEngine& engine);

}  // namespace dirac
