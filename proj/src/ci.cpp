#include "dirac/ci.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/analysis.hpp"
#include "dirac/errors.hpp"

namespace dirac {

std::vector<double> probability_density(const SpinorField& field) {
    std::vector<double> rho(field.up.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        rho[i] = std::norm(field.up[i]) + std::norm(field.dn[i]);
    }
    return rho;
}

std::vector<double> probability_current(const SpinorField& field,
                                        const PhysicalParams& params) {
    std::vector<double> j(field.up.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        j[i] = 2.0 * params.c *
               (std::conj(field.up[i]) * field.dn[i]).real();
    }
    return j;
}

namespace {

void check_boundary_density(const std::vector<double>& rho, double t,
                            std::vector<std::string>& warnings) {
    const double edge = std::max(rho.front(), rho.back());
    if (edge > 1e-12) {
        warnings.push_back("boundary density " + std::to_string(edge) +
                           " exceeds 1e-12 at t = " + std::to_string(t));
    }
}

CITransitionResult run_ci_impl(const Scenario& sc, const SpinorField& initial,
                               const SpinorField& final_state) {
    SpectralEngine engine(sc.grid, sc.params);

    CITransitionResult result{.amplitude = {},
                              .probability = 0.0,
                              .series = {},
                              .collapse = {sc.t_f, initial, final_state},
                              .warnings = {}};
    result.series.fingerprint = sc.fingerprint();
    result.series.kind = SeriesKind::CIProbability;

    if (engine.nyquist_weight(initial) > 1e-12) {
        result.warnings.push_back("initial state has Nyquist-mode weight above 1e-12");
    }

    SpinorField psi = initial;
    const double dt = (sc.n_steps > 0) ? sc.dt() : 0.0;

    auto record = [&](const SpinorField& f) {
        auto rho = probability_density(f);
        check_boundary_density(rho, f.time, result.warnings);
        TimeSeries::Record rec;
        rec.t = f.time;
        rec.density.assign(rho.begin(), rho.end());
        rec.scalars["norm"] = norm_squared(f);
        rec.scalars["mean_x"] = mean_position(rho, f.grid);
        result.series.records.push_back(std::move(rec));
    };

    record(psi);
    for (std::size_t step = 1; step <= sc.n_steps; ++step) {
        psi = engine.propagate(psi, dt);
        if (step % sc.snapshot_stride == 0) record(psi);
    }
    // guard against time-stamp drift from repeated addition
    psi.time = sc.t_f;

    result.amplitude = inner_product(final_state, psi);
    result.probability = std::norm(result.amplitude);
    result.collapse = {sc.t_f, psi, final_state};
    return result;
}

}  // namespace

CITransitionResult run_ci(const Scenario& scenario) {
    scenario.validate();
    return run_ci_impl(scenario, scenario.initial_field(),
                       scenario.final_field());
}

CITransitionResult run_ci(const Scenario& scenario, const SpinorField& initial,
                          const SpinorField& final_state) {
    scenario.validate();
    SpinorField psi0 = normalized(initial);
    psi0.time = scenario.t_i;
    SpinorField phif = normalized(final_state);
    phif.time = scenario.t_f;
    return run_ci_impl(scenario, psi0, phif);
}

double continuity_residual_ci(const std::vector<SpinorField>& snapshots,
                              const SpectralEngine& engine) {
    if (snapshots.size() < 3) {
        throw NumericError("continuity residual needs >= 3 snapshots");
    }
    std::vector<double> times;
    std::vector<std::vector<cplx>> rho, cur;
    for (const auto& f : snapshots) {
        times.push_back(f.time);
        auto r = probability_density(f);
        auto j = probability_current(f, engine.params());
        rho.emplace_back(r.begin(), r.end());
        cur.emplace_back(j.begin(), j.end());
    }
    return continuity_residual(times, rho, cur, engine);
}

}  // namespace dirac
