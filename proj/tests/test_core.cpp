#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dirac/errors.hpp"
#include "dirac/field.hpp"
#include "dirac/scenario.hpp"

using namespace dirac;

namespace {
SpinorField random_field(const Grid1D& grid, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpinorField f(grid, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f.up[i] = {u(rng), u(rng)};
        f.dn[i] = {u(rng), u(rng)};
    }
    return f;
}
}  // namespace

TEST_CASE("grid construction and momentum modes") {
    const Grid1D g(-80.0, 80.0, 4096);
    CHECK(g.dx() == doctest::Approx(0.0390625).epsilon(1e-15));
    CHECK(g.k(1) == doctest::Approx(2.0 * std::numbers::pi / 160.0));

    const Grid1D small(-1.0, 1.0, 8);
    // DFT ordering: j = 0..3 then -4..-1
    CHECK(small.k(0) == 0.0);
    CHECK(small.k(3) == doctest::Approx(3.0 * std::numbers::pi));
    CHECK(small.k(4) == doctest::Approx(-4.0 * std::numbers::pi));
    CHECK(small.k(7) == doctest::Approx(-std::numbers::pi));
    CHECK(small.nyquist_index() == 4);

    // modes come in +- pairs apart from zero and Nyquist
    for (std::size_t j = 1; j < 4; ++j) {
        CHECK(small.k(j) == doctest::Approx(-small.k(8 - j)));
    }
}

TEST_CASE("grid rejects bad input") {
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 7), ConfigError);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 12), ConfigError);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(Grid1D(1.0, 1.0, 8), ConfigError);
    CHECK_THROWS_AS(Grid1D(2.0, 1.0, 8), ConfigError);
}

TEST_CASE("gaussian initial state matches the closed form") {
    const Grid1D g(-80.0, 80.0, 4096);
    const auto f = gaussian_initial_state(g, 2.0, 1.0, 1.0);

    // value at x = 0: (1/(32 pi))^{1/4}
    const double expect = std::pow(1.0 / (32.0 * std::numbers::pi), 0.25);
    CHECK(expect == doctest::Approx(0.3158096).epsilon(1e-6));
    const std::size_t i0 = g.size() / 2;
    CHECK(g.x(i0) == doctest::Approx(0.0));
    CHECK(f.up[i0].real() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(f.dn[i0].real() == doctest::Approx(expect).epsilon(1e-12));

    // rho(0) = 1/sqrt(8 pi)
    const double rho0 = std::norm(f.up[i0]) + std::norm(f.dn[i0]);
    CHECK(rho0 == doctest::Approx(1.0 / std::sqrt(8.0 * std::numbers::pi))
                      .epsilon(1e-12));

    CHECK(norm_squared(f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gaussian rejects degenerate input") {
    const Grid1D g(-80.0, 80.0, 4096);
    CHECK_THROWS_AS(gaussian_initial_state(g, -1.0, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(gaussian_initial_state(g, 2.0, 0.0, 0.0), ConfigError);
    // sigma so small that fewer than 8 points sit inside +-3 sigma
    CHECK_THROWS_AS(gaussian_initial_state(g, 0.04, 1.0, 1.0), ConfigError);
}

TEST_CASE("gaussian normalization holds for arbitrary weights") {
    const Grid1D g(-80.0, 80.0, 512);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double sigma = 0.5 + 4.0 * std::abs(u(rng));
        const cplx w1{u(rng), u(rng)}, w2{u(rng), u(rng)};
        if (std::abs(w1) < 1e-3 && std::abs(w2) < 1e-3) continue;
        const auto f = gaussian_initial_state(g, sigma, w1, w2);
        CHECK(norm_squared(f) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("inner product: normalization, orthogonality, conjugate symmetry") {
    const Grid1D g(-10.0, 10.0, 256);
    const auto f = gaussian_initial_state(g, 1.0, 1.0, cplx{0.0, 1.0});
    const cplx self = inner_product(f, f);
    CHECK(self.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(self.imag() == doctest::Approx(0.0).epsilon(1e-12));

    // disjoint supports
    SpinorField a(g, 0.0), b(g, 0.0);
    a.up[10] = 1.0;
    b.up[200] = 1.0;
    b.dn[201] = cplx{0.0, 2.0};
    CHECK(std::abs(inner_product(a, b)) == 0.0);

    const auto r1 = random_field(g, 1), r2 = random_field(g, 2);
    CHECK(std::abs(inner_product(r1, r2) - std::conj(inner_product(r2, r1))) <
          1e-12);
}

TEST_CASE("inner product is sesquilinear") {
    const Grid1D g(-10.0, 10.0, 128);
    const auto a = random_field(g, 3), b = random_field(g, 4),
               c = random_field(g, 5);
    const cplx alpha{0.7, -1.3}, beta{-0.2, 0.5};

    SpinorField lin(g, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        lin.up[i] = alpha * b.up[i] + beta * c.up[i];
        lin.dn[i] = alpha * b.dn[i] + beta * c.dn[i];
    }
    const cplx lhs = inner_product(a, lin);
    const cplx rhs = alpha * inner_product(a, b) + beta * inner_product(a, c);
    CHECK(std::abs(lhs - rhs) < 1e-12);

    const cplx lhs2 = inner_product(lin, a);
    const cplx rhs2 = std::conj(alpha) * inner_product(b, a) +
                      std::conj(beta) * inner_product(c, a);
    CHECK(std::abs(lhs2 - rhs2) < 1e-12);
}

TEST_CASE("inner product grid mismatch is a hard error") {
    const Grid1D g1(-10.0, 10.0, 128), g2(-10.0, 10.0, 256);
    const auto a = random_field(g1, 6), b = random_field(g2, 7);
    CHECK_THROWS_AS(inner_product(a, b), NumericError);
}

TEST_CASE("norm_squared") {
    const Grid1D g(-80.0, 80.0, 1024);
    const auto f = gaussian_initial_state(g, 2.0, 1.0, 1.0);
    CHECK(norm_squared(f) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(norm_squared(SpinorField(g, 0.0)) == 0.0);
    CHECK(norm_squared(scaled(f, 2.0)) == doctest::Approx(4.0).epsilon(1e-13));

    const auto r = random_field(g, 8);
    CHECK(norm_squared(r) ==
          doctest::Approx(std::abs(inner_product(r, r))).epsilon(1e-14));
}

TEST_CASE("scenario validation") {
    Scenario sc;
    sc.validate();  // paper defaults are valid
    CHECK(sc.dt() == doctest::Approx(0.1));

    Scenario bad = sc;
    bad.t_f = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    Scenario stride = sc;
    stride.snapshot_stride = 7;  // does not divide 400
    CHECK_THROWS_AS(stride.validate(), ConfigError);

    // fingerprints: stable for identical configs, sensitive to changes
    Scenario other = sc;
    CHECK(sc.fingerprint() == other.fingerprint());
    other.sigma = 3.0;
    CHECK(sc.fingerprint() != other.fingerprint());
}

TEST_CASE("time series validation") {
    TimeSeries ts;
    ts.records.push_back({0.0, std::vector<cplx>(8), {}});
    ts.records.push_back({1.0, std::vector<cplx>(8), {}});
    ts.check_valid(8);

    ts.records.push_back({0.5, std::vector<cplx>(8), {}});
    CHECK_THROWS_AS(ts.check_valid(8), NumericError);
    ts.records.pop_back();
    ts.records.push_back({2.0, std::vector<cplx>(4), {}});
    CHECK_THROWS_AS(ts.check_valid(8), NumericError);
}
