#pragma once

#include <cstddef>
#include <vector>

namespace dirac {

// Uniform periodic grid on [x_min, x_max) with the matching momentum grid.
// Momentum modes follow DFT ordering: k_j = 2*pi*j_signed/L with
// j_signed in {0,...,n/2-1, -n/2,...,-1}.
class Grid1D {
  public:
    Grid1D(double x_min, double x_max, std::size_t n);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double length() const { return x_max_ - x_min_; }
    std::size_t size() const { return n_; }
    double dx() const { return dx_; }

    double x(std::size_t i) const { return x_min_ + dx_ * static_cast<double>(i); }
    double k(std::size_t j) const { return modes_[j]; }
    const std::vector<double>& modes() const { return modes_; }
    std::size_t nyquist_index() const { return n_ / 2; }

    // site index of the mirror point -x (mod L); valid when the grid is
    // symmetric about the origin
    std::size_t mirror_index(std::size_t i) const { return (n_ - i) % n_; }
    bool symmetric_about_origin() const;

    bool operator==(const Grid1D& other) const;
    bool operator!=(const Grid1D& other) const { return !(*this == other); }

  private:
    double x_min_, x_max_, dx_;
    std::size_t n_;
    std::vector<double> modes_;
};

Grid1D make_grid(double x_min, double x_max, std::size_t n);

}  // namespace dirac
