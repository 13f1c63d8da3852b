#include "dirac/scenario.hpp"

#include <cstdio>
#include <string>

#include "dirac/errors.hpp"

namespace dirac {

void Scenario::validate() const {
    params.validate();
    if (!(t_f > t_i)) {
        if (t_f == t_i && n_steps == 0) {
            // degenerate no-evolution scenario, allowed
        } else {
            throw ConfigError("scenario: t_f must exceed t_i");
        }
    }
    if (t_f > t_i && n_steps < 1) {
        throw ConfigError("scenario: n_steps must be >= 1");
    }
    if (n_steps > 0) {
        if (snapshot_stride == 0 || n_steps % snapshot_stride != 0) {
            throw ConfigError(
                "scenario: snapshot_stride must divide n_steps (stride " +
                std::to_string(snapshot_stride) + ", n_steps " +
                std::to_string(n_steps) + ")");
        }
    }
    if (!(sigma > 0.0)) throw ConfigError("scenario: sigma must be positive");
    if (std::abs(weight1) == 0.0 && std::abs(weight2) == 0.0) {
        throw ConfigError("scenario: spinor weights must not both vanish");
    }
    if (final_state) {
        if (final_state->grid != grid) {
            throw ConfigError("scenario: final state grid differs from the "
                              "scenario grid");
        }
        final_state->check_valid();
    }
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t Scenario::fingerprint() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "grid=%.17g,%.17g,%zu;phys=%.17g,%.17g,%.17g,%d;"
                  "sigma=%.17g;w=(%.17g,%.17g),(%.17g,%.17g);"
                  "t=%.17g,%.17g;steps=%zu/%zu;final=%s",
                  grid.x_min(), grid.x_max(), grid.size(), params.mass,
                  params.c, params.hbar, static_cast<int>(params.mass_term),
                  sigma, weight1.real(), weight1.imag(), weight2.real(),
                  weight2.imag(), t_i, t_f, n_steps, snapshot_stride,
                  final_state ? "explicit" : "same-as-initial");
    std::string s(buf);
    if (final_state) {
        for (std::size_t i = 0; i < final_state->up.size(); ++i) {
            char v[128];
            std::snprintf(v, sizeof(v), "%.17g,%.17g,%.17g,%.17g",
                          final_state->up[i].real(), final_state->up[i].imag(),
                          final_state->dn[i].real(), final_state->dn[i].imag());
            s += v;
        }
    }
    return fnv1a(s);
}

SpinorField Scenario::initial_field() const {
    SpinorField f = gaussian_initial_state(grid, sigma, weight1, weight2);
    f.time = t_i;
    return f;
}

SpinorField Scenario::final_field() const {
    if (final_state) {
        SpinorField f = *final_state;
        f.time = t_f;
        return normalized(f);
    }
    SpinorField f = initial_field();
    f.time = t_f;
    return f;
}

void TimeSeries::check_valid(std::size_t grid_n) const {
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].density.size() != grid_n) {
            throw NumericError("time series record " + std::to_string(i) +
                               " has wrong array length");
        }
        if (i > 0 && !(records[i].t > records[i - 1].t)) {
            throw NumericError("time series times are not strictly increasing");
        }
    }
}

}  // namespace dirac
