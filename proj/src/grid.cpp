#include "dirac/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dirac/errors.hpp"
#include "dirac/params.hpp"

namespace dirac {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid1D::Grid1D(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!(x_max > x_min)) {
        throw ConfigError("grid: x_max must exceed x_min (got [" +
                          std::to_string(x_min) + ", " + std::to_string(x_max) +
                          "])");
    }
    if (n < 8 || !is_power_of_two(n)) {
        throw ConfigError("grid: n must be a power of two >= 8 (got " +
                          std::to_string(n) + ")");
    }
    dx_ = (x_max_ - x_min_) / static_cast<double>(n_);
    modes_.resize(n_);
    const double dk = 2.0 * std::numbers::pi / (x_max_ - x_min_);
    const std::size_t half = n_ / 2;
    for (std::size_t j = 0; j < n_; ++j) {
        const auto j_signed = (j < half) ? static_cast<long long>(j)
                                         : static_cast<long long>(j) -
                                               static_cast<long long>(n_);
        modes_[j] = dk * static_cast<double>(j_signed);
    }
}

bool Grid1D::symmetric_about_origin() const {
    return std::abs(x_min_ + x_max_) <= 1e-12 * (x_max_ - x_min_);
}

bool Grid1D::operator==(const Grid1D& other) const {
    return x_min_ == other.x_min_ && x_max_ == other.x_max_ && n_ == other.n_;
}

Grid1D make_grid(double x_min, double x_max, std::size_t n) {
    return Grid1D(x_min, x_max, n);
}

void PhysicalParams::validate() const {
    if (!(mass > 0.0) || !(c > 0.0) || !(hbar > 0.0)) {
        throw ConfigError("physics: m, c, hbar must all be strictly positive");
    }
}

}  // namespace dirac
