#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirac/field.hpp"
#include "dirac/params.hpp"

namespace dirac {

// Full experiment description. Paper-scale defaults: sigma = 2, t_i = 0,
// t_f = 40, natural units, snapshot cadence 0.1.
struct Scenario {
    Grid1D grid{-80.0, 80.0, 4096};
    PhysicalParams params{};
    double sigma = 2.0;
    cplx weight1{1.0, 0.0};
    cplx weight2{1.0, 0.0};
    double t_i = 0.0;
    double t_f = 40.0;
    std::size_t n_steps = 400;
    std::size_t snapshot_stride = 1;
    // empty -> final state identical to the initial state
    std::optional<SpinorField> final_state;

    void validate() const;  // throws ConfigError
    double dt() const { return (t_f - t_i) / static_cast<double>(n_steps); }
    std::uint64_t fingerprint() const;

    SpinorField initial_field() const;
    SpinorField final_field() const;  // stamped t_f
};

enum class SeriesKind { CIProbability, RSIAmplitude, RSIAntiparticle };

// Ordered snapshots of a (possibly complex) density plus scalar observables.
struct TimeSeries {
    struct Record {
        double t = 0.0;
        std::vector<cplx> density;
        std::map<std::string, double> scalars;
    };

    std::uint64_t fingerprint = 0;
    SeriesKind kind = SeriesKind::CIProbability;
    std::vector<Record> records;

    void check_valid(std::size_t grid_n) const;  // strictly increasing times
};

std::uint64_t fnv1a(const std::string& data);

}  // namespace dirac
