#include "dirac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirac/errors.hpp"

namespace dirac {

double mean_position(const std::vector<double>& density, const Grid1D& grid) {
    if (density.size() != grid.size()) {
        throw NumericError("mean_position: array length mismatch");
    }
    double w = 0.0, m = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        w += density[i];
        m += grid.x(i) * density[i];
    }
    if (w <= 0.0) throw NumericError("mean_position: zero total weight");
    return m / w;
}

namespace {

// dominant angular frequency of a Hann-windowed series, via a dense scan of
// the periodogram (resolution well below one natural bin)
double periodogram_peak(const std::vector<double>& t,
                        const std::vector<double>& y) {
    const std::size_t n = t.size();
    const double span = t.back() - t.front();
    if (span <= 0.0) return 0.0;
    const double dt = span / static_cast<double>(n - 1);
    const double bin = 2.0 * std::numbers::pi / span;
    const double omega_max = std::numbers::pi / dt;
    const double step = bin / 64.0;

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                     static_cast<double>(i) /
                                     static_cast<double>(n - 1)));
    }
    double best_omega = 0.0, best_power = -1.0;
    for (double omega = 0.5 * bin; omega <= omega_max; omega += step) {
        cplx acc{};
        for (std::size_t i = 0; i < n; ++i) {
            acc += w[i] * y[i] *
                   std::exp(cplx{0.0, -omega * (t[i] - t.front())});
        }
        const double power = std::norm(acc);
        if (power > best_power) {
            best_power = power;
            best_omega = omega;
        }
    }
    return best_omega;
}

}  // namespace

TrajectoryReport trajectory(const std::vector<double>& times,
                            const std::vector<double>& mean_x) {
    if (times.size() != mean_x.size()) {
        throw NumericError("trajectory: length mismatch");
    }
    if (times.size() < 16) {
        throw NumericError("trajectory: needs at least 16 snapshots");
    }
    const std::size_t n = times.size();
    const double dt0 = times[1] - times[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs((times[i + 1] - times[i]) - dt0) > 1e-9 * std::abs(dt0)) {
            throw NumericError("trajectory: non-uniform time spacing");
        }
    }

    TrajectoryReport rep;
    rep.times = times;
    rep.mean_x = mean_x;

    // least-squares line
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        st += times[i];
        sx += mean_x[i];
        stt += times[i] * times[i];
        stx += times[i] * mean_x[i];
    }
    const double nn = static_cast<double>(n);
    const double denom = nn * stt - st * st;
    rep.drift_velocity = (nn * stx - st * sx) / denom;
    rep.intercept = (sx - rep.drift_velocity * st) / nn;

    rep.detrended.resize(n);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rep.detrended[i] =
            mean_x[i] - (rep.intercept + rep.drift_velocity * times[i]);
        lo = std::min(lo, rep.detrended[i]);
        hi = std::max(hi, rep.detrended[i]);
    }
    rep.amplitude = 0.5 * (hi - lo);
    rep.dominant_omega = periodogram_peak(times, rep.detrended);
    return rep;
}

TrajectoryReport trajectory(const TimeSeries& series, const Grid1D& grid,
                            bool use_abs) {
    std::vector<double> times, means;
    for (const auto& rec : series.records) {
        std::vector<double> d(rec.density.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (use_abs) {
                d[i] = std::abs(rec.density[i]);
            } else {
                if (std::abs(rec.density[i].imag()) >
                    1e-9 * (1.0 + std::abs(rec.density[i]))) {
                    throw NumericError(
                        "trajectory: complex record requires use_abs");
                }
                d[i] = rec.density[i].real();
            }
        }
        times.push_back(rec.t);
        means.push_back(mean_position(d, grid));
    }
    return trajectory(times, means);
}

namespace {
AsymmetryReport asymmetry_impl(const std::vector<cplx>& d, const Grid1D& grid) {
    if (!grid.symmetric_about_origin()) {
        throw NumericError("asymmetry_metric: grid not symmetric about 0");
    }
    if (d.size() != grid.size()) {
        throw NumericError("asymmetry_metric: array length mismatch");
    }
    double max_abs = 0.0, max_raw = 0.0, max_mag = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        max_abs = std::max(max_abs, std::abs(d[i]));
    }
    if (max_abs == 0.0) return {};
    for (std::size_t i = 0; i < d.size(); ++i) {
        const std::size_t m = grid.mirror_index(i);
        max_raw = std::max(max_raw, std::abs(d[i] - d[m]));
        max_mag = std::max(max_mag, std::abs(std::abs(d[i]) - std::abs(d[m])));
    }
    return {max_raw / max_abs, max_mag / max_abs};
}
}  // namespace

AsymmetryReport asymmetry_metric(const std::vector<cplx>& density,
                                 const Grid1D& grid) {
    return asymmetry_impl(density, grid);
}

AsymmetryReport asymmetry_metric(const std::vector<double>& density,
                                 const Grid1D& grid) {
    std::vector<cplx> d(density.begin(), density.end());
    return asymmetry_impl(d, grid);
}

double continuity_residual(const std::vector<double>& times,
                           const std::vector<std::vector<cplx>>& rho,
                           const std::vector<std::vector<cplx>>& current,
                           const SpectralEngine& engine) {
    const std::size_t n = times.size();
    if (n < 3 || rho.size() != n || current.size() != n) {
        throw NumericError("continuity residual: needs >= 3 matched snapshots");
    }
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * std::abs(dt)) {
            throw NumericError("continuity residual: non-uniform spacing");
        }
    }
    double max_res = 0.0;
    for (std::size_t s = 1; s + 1 < n; ++s) {
        const auto djdx = engine.derivative(current[s]);
        for (std::size_t i = 0; i < djdx.size(); ++i) {
            const cplx drdt = (rho[s + 1][i] - rho[s - 1][i]) / (2.0 * dt);
            max_res = std::max(max_res, std::abs(drdt + djdx[i]));
        }
    }
    return max_res;
}

}  // namespace dirac
