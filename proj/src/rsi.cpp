#include "dirac/rsi.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/analysis.hpp"
#include "dirac/errors.hpp"

namespace dirac {

SpinorField prepare_retarded(const Scenario& scenario, int sign,
                             const SpectralEngine& engine) {
    SpinorField projected = engine.project_energy(scenario.initial_field(), sign);
    if (norm_squared(projected) <= 0.0) {
        throw NumericError("energy projection of the initial state vanishes");
    }
    projected.time = scenario.t_i;
    return projected;
}

AdvancedProvider::AdvancedProvider(SpinorField projected_final, double t_f,
                                   const SpectralEngine& engine)
    : at_tf_(std::move(projected_final)), t_f_(t_f), engine_(&engine) {
    at_tf_.time = t_f_;
}

SpinorField AdvancedProvider::operator()(double t) const {
    SpinorField f = engine_->propagate(at_tf_, t - t_f_);
    f.time = t;
    return f;
}

AdvancedProvider prepare_advanced(const Scenario& scenario, int sign,
                                  const SpectralEngine& engine) {
    SpinorField projected = engine.project_energy(scenario.final_field(), sign);
    if (norm_squared(projected) <= 0.0) {
        throw NumericError("energy projection of the final state vanishes");
    }
    return AdvancedProvider(std::move(projected), scenario.t_f, engine);
}

std::vector<cplx> amplitude_density(const SpinorField& phi,
                                    const SpinorField& psi) {
    if (phi.grid != psi.grid) {
        throw NumericError("amplitude_density: grid mismatch");
    }
    if (std::abs(phi.time - psi.time) > 1e-9) {
        throw NumericError("amplitude_density: time-stamp mismatch");
    }
    std::vector<cplx> rho(phi.up.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        rho[i] = std::conj(phi.up[i]) * psi.up[i] +
                 std::conj(phi.dn[i]) * psi.dn[i];
    }
    return rho;
}

std::vector<cplx> amplitude_current(const SpinorField& phi,
                                    const SpinorField& psi,
                                    const PhysicalParams& params) {
    if (phi.grid != psi.grid) {
        throw NumericError("amplitude_current: grid mismatch");
    }
    if (std::abs(phi.time - psi.time) > 1e-9) {
        throw NumericError("amplitude_current: time-stamp mismatch");
    }
    std::vector<cplx> j(phi.up.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        j[i] = params.c * (std::conj(phi.up[i]) * psi.dn[i] +
                           std::conj(phi.dn[i]) * psi.up[i]);
    }
    return j;
}

RSITransitionResult run_rsi(const Scenario& sc, int sign,
                            const RsiOptions& options) {
    sc.validate();
    SpectralEngine engine(sc.grid, sc.params);

    SpinorField psi = prepare_retarded(sc, sign, engine);
    SpinorField phi_f = engine.project_energy(sc.final_field(), sign);
    if (options.normalize_projections) {
        psi = normalized(psi);
        phi_f = normalized(phi_f);
    }
    psi.time = sc.t_i;
    AdvancedProvider phi(std::move(phi_f), sc.t_f, engine);

    RSITransitionResult result;
    result.channel = sign;
    result.normalized_projections = options.normalize_projections;
    result.series.fingerprint = sc.fingerprint();
    result.series.kind =
        sign > 0 ? SeriesKind::RSIAmplitude : SeriesKind::RSIAntiparticle;

    const double dt = (sc.n_steps > 0) ? sc.dt() : 0.0;

    auto record = [&](const SpinorField& psi_t) {
        SpinorField phi_t = phi(psi_t.time);
        auto rho_s = amplitude_density(phi_t, psi_t);
        const cplx a_s = inner_product(phi_t, psi_t);
        TimeSeries::Record rec;
        rec.t = psi_t.time;
        rec.density = rho_s;
        rec.scalars["As_re"] = a_s.real();
        rec.scalars["As_im"] = a_s.imag();
        std::vector<double> mag(rho_s.size());
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(rho_s[i]);
        rec.scalars["mean_x_abs"] = mean_position(mag, psi_t.grid);
        result.series.records.push_back(std::move(rec));
        result.amplitude_trace.emplace_back(psi_t.time, a_s);
    };

    record(psi);
    for (std::size_t step = 1; step <= sc.n_steps; ++step) {
        psi = engine.propagate(psi, dt);
        if (step == sc.n_steps) psi.time = sc.t_f;
        if (step % sc.snapshot_stride == 0) record(psi);
    }

    result.amplitude = result.amplitude_trace.front().second;
    result.probability = std::norm(result.amplitude);

    double max_drift = 0.0;
    for (const auto& [t, a] : result.amplitude_trace) {
        max_drift = std::max(max_drift, std::abs(a - result.amplitude));
    }
    if (max_drift > 1e-10) {
        result.warnings.push_back(
            "A_s drifted by " + std::to_string(max_drift) +
            " over the run (expected time-invariant)");
    }
    return result;
}

AntiparticleReport antiparticle_phase_check(const RSITransitionResult& plus,
                                            const RSITransitionResult& minus,
                                            const Grid1D& grid) {
    if (plus.series.fingerprint != minus.series.fingerprint) {
        throw NumericError(
            "antiparticle check: channels come from different scenarios");
    }
    if (plus.series.records.size() != minus.series.records.size()) {
        throw NumericError("antiparticle check: snapshot count mismatch");
    }
    AntiparticleReport report;
    for (std::size_t r = 0; r < plus.series.records.size(); ++r) {
        const auto& rp = plus.series.records[r];
        const auto& rm = minus.series.records[r];
        std::vector<double> mag_p(rp.density.size()), mag_m(rm.density.size());
        for (std::size_t i = 0; i < rp.density.size(); ++i) {
            mag_p[i] = std::abs(rp.density[i]);
            mag_m[i] = std::abs(rm.density[i]);
            report.magnitude_mismatch =
                std::max(report.magnitude_mismatch, std::abs(mag_m[i] - mag_p[i]));
            if (mag_p[i] > 1e-6) {
                report.phase_reversal = std::max(
                    report.phase_reversal,
                    std::abs(rm.density[i] - std::conj(rp.density[i])));
            }
        }
        report.trajectory_mismatch = std::max(
            report.trajectory_mismatch,
            std::abs(mean_position(mag_m, grid) - mean_position(mag_p, grid)));
    }
    return report;
}

}  // namespace dirac
