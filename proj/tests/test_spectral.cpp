#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dirac/errors.hpp"
#include "dirac/spectral.hpp"

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

double max_diff(const SpinorField& a, const SpinorField& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.up.size(); ++i) {
        d = std::max(d, std::abs(a.up[i] - b.up[i]));
        d = std::max(d, std::abs(a.dn[i] - b.dn[i]));
    }
    return d;
}

const PhysicalParams kNatural = PhysicalParams::natural();
}  // namespace

TEST_CASE("transform: constant field lives in the k = 0 mode") {
    const Grid1D g(-10.0, 10.0, 64);
    SpectralEngine eng(g, kNatural);
    SpinorField f(g, 0.0);
    for (auto& v : f.up) v = cplx{1.0, 0.5};
    const auto m = eng.to_momentum(f);
    for (std::size_t j = 1; j < g.size(); ++j) {
        CHECK(std::abs(m.up[j]) < 1e-13);
    }
    CHECK(std::abs(m.up[0]) == doctest::Approx(std::abs(cplx{1.0, 0.5}) * 8.0));
}

TEST_CASE("transform: on-grid plane wave occupies exactly one mode") {
    const Grid1D g(-10.0, 10.0, 64);
    SpectralEngine eng(g, kNatural);
    const double k1 = g.k(1);
    SpinorField f(g, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        f.up[i] = std::exp(cplx{0.0, k1 * g.x(i)});
    }
    const auto m = eng.to_momentum(f);
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (j == 1) {
            CHECK(std::abs(m.up[j]) > 1.0);
        } else {
            CHECK(std::abs(m.up[j]) < 1e-12);
        }
        CHECK(std::abs(m.dn[j]) == 0.0);
    }
}

TEST_CASE("transform round trip and Parseval") {
    const Grid1D g(-5.0, 5.0, 128);
    SpectralEngine eng(g, kNatural);
    const auto f = random_field(g, 11);
    const auto back = eng.to_position(eng.to_momentum(f));
    CHECK(max_diff(f, back) < 1e-13);

    const auto m = eng.to_momentum(f);
    double pos = 0.0, mom = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        pos += std::norm(f.up[i]) + std::norm(f.dn[i]);
        mom += std::norm(m.up[i]) + std::norm(m.dn[i]);
    }
    CHECK(pos == doctest::Approx(mom).epsilon(1e-13));
}

TEST_CASE("dispersion relation") {
    CHECK(dispersion_energy(0.0, kNatural) == doctest::Approx(1.0));
    CHECK(dispersion_energy(1.0, kNatural) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const double k = 1e6;
    CHECK(dispersion_energy(k, kNatural) / k == doctest::Approx(1.0).epsilon(1e-9));

    PhysicalParams p;
    p.mass = 2.0;
    p.c = 3.0;
    p.hbar = 0.5;
    CHECK(dispersion_energy(4.0, p) ==
          doctest::Approx(std::hypot(0.5 * 3.0 * 4.0, 2.0 * 9.0)));
}

TEST_CASE("hamiltonian matrix") {
    const Mat2 h0 = hamiltonian_matrix(0.0, kNatural);
    CHECK(std::abs(h0.m00 - 1.0) < 1e-15);
    CHECK(std::abs(h0.m11 + 1.0) < 1e-15);
    CHECK(std::abs(h0.m01) < 1e-15);

    for (double k : {-3.0, -0.5, 0.0, 0.7, 2.0}) {
        const Mat2 h = hamiltonian_matrix(k, kNatural);
        CHECK(std::abs(h.trace()) < 1e-15);
        const double e = dispersion_energy(k, kNatural);
        CHECK(std::abs(h.det() + e * e) < 1e-13);
        CHECK(h.max_abs_diff(h.adjoint()) < 1e-15);
    }
}

TEST_CASE("hamiltonian with the identity mass term") {
    PhysicalParams p;
    p.mass_term = MassTerm::Identity;
    const Mat2 h = hamiltonian_matrix(0.7, p);
    CHECK(std::abs(h.m00 - 1.0) < 1e-15);
    CHECK(std::abs(h.m11 - 1.0) < 1e-15);
    CHECK(std::abs(h.m01 - 0.7) < 1e-15);
    // velocity operator commutes with H: no zitterbewegung channel
    const Mat2 sx{0.0, 1.0, 1.0, 0.0};
    CHECK((h * sx).max_abs_diff(sx * h) < 1e-15);
    // propagator still unitary
    const Mat2 u = propagator_matrix(0.7, 3.1, p);
    CHECK((u * u.adjoint()).max_abs_diff(Mat2::identity()) < 1e-13);
    // projectors are undefined for this reading
    CHECK_THROWS_AS(projector_matrix(0.7, +1, p), NumericError);
}

TEST_CASE("propagator matrix") {
    CHECK(propagator_matrix(1.3, 0.0, kNatural).max_abs_diff(Mat2::identity()) <
          1e-15);

    // full rest-energy period at k = 0
    const Mat2 u = propagator_matrix(0.0, 2.0 * std::numbers::pi, kNatural);
    CHECK(u.max_abs_diff(Mat2::identity()) < 1e-12);

    for (double k : {-2.0, 0.3, 5.0}) {
        for (double dt : {-7.0, 0.01, 2.5}) {
            const Mat2 a = propagator_matrix(k, dt, kNatural);
            const Mat2 b = propagator_matrix(k, -dt, kNatural);
            CHECK((a * b).max_abs_diff(Mat2::identity()) < 1e-13);
            CHECK((a * a.adjoint()).max_abs_diff(Mat2::identity()) < 1e-13);
        }
    }
}

TEST_CASE("propagator phases an energy eigenvector") {
    const double k = 0.8, dt = 1.7;
    const double e = dispersion_energy(k, kNatural);
    // +E eigenvector of k sx + sz: (e + 1, k) up to normalization
    cplx v1{e + 1.0, 0.0}, v2{k, 0.0};
    const double n = std::sqrt(std::norm(v1) + std::norm(v2));
    v1 /= n;
    v2 /= n;
    cplx a = v1, b = v2;
    propagator_matrix(k, dt, kNatural).apply(a, b);
    const cplx phase = std::exp(cplx{0.0, -e * dt});
    CHECK(std::abs(a - phase * v1) < 1e-14);
    CHECK(std::abs(b - phase * v2) < 1e-14);
}

TEST_CASE("projector matrices: hermitian, idempotent, complete") {
    for (double k : {-4.0, -0.2, 0.0, 1.0, 9.0}) {
        const Mat2 pp = projector_matrix(k, +1, kNatural);
        const Mat2 pm = projector_matrix(k, -1, kNatural);
        CHECK(pp.max_abs_diff(pp.adjoint()) < 1e-14);
        CHECK((pp * pp).max_abs_diff(pp) < 1e-13);
        CHECK((pm * pm).max_abs_diff(pm) < 1e-13);
        CHECK((pp + pm).max_abs_diff(Mat2::identity()) < 1e-13);
        CHECK((pp * pm).max_abs_diff(Mat2{}) < 1e-13);
    }
    // sigma_z convention at k = 0: + projector keeps the upper component
    const Mat2 p0 = projector_matrix(0.0, +1, kNatural);
    CHECK(std::abs(p0.m00 - 1.0) < 1e-15);
    CHECK(std::abs(p0.m11) < 1e-15);
}

TEST_CASE("propagate: identity at dt = 0 and reversibility") {
    const Grid1D g(-40.0, 40.0, 512);
    SpectralEngine eng(g, kNatural);
    const auto f = gaussian_initial_state(g, 2.0, 1.0, 1.0);
    CHECK(max_diff(eng.propagate(f, 0.0), f) < 1e-13);

    const auto fwd = eng.propagate(f, 3.7);
    CHECK(max_diff(eng.propagate(fwd, -3.7), f) < 1e-12);
    CHECK(fwd.time == doctest::Approx(3.7));
}

TEST_CASE("propagate reproduces the frozen transition amplitude") {
    // overlap of the sigma=2 packet with itself evolved by t = 40; frozen
    // from two independent routes (spectral at n = 1024..4096 and a
    // Crank-Nicolson integration), all agreeing to 1e-12
    const Grid1D g(-80.0, 80.0, 2048);
    SpectralEngine eng(g, kNatural);
    const auto f = gaussian_initial_state(g, 2.0, 1.0, 1.0);
    auto evolved = eng.propagate(f, 40.0);
    evolved.time = f.time;
    const cplx a = inner_product(f, evolved);
    CHECK(a.real() == doctest::Approx(-0.5953962792211).epsilon(1e-11));
    CHECK(std::abs(a.imag()) < 1e-12);  // exactly real by k-parity symmetry
}

TEST_CASE("propagate preserves the norm and composes") {
    const Grid1D g(-20.0, 20.0, 256);
    SpectralEngine eng(g, kNatural);
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_field(g, 100 + trial);
        const double dt = u(rng);
        const auto once = eng.propagate(f, dt);
        CHECK(norm_squared(once) == doctest::Approx(norm_squared(f)).epsilon(1e-12));
        const double a = u(rng), b = u(rng);
        const auto split = eng.propagate(eng.propagate(f, a), b);
        auto joint = eng.propagate(f, a + b);
        joint.time = split.time;
        CHECK(max_diff(split, joint) < 1e-12 * std::sqrt(norm_squared(f)));
    }
}

TEST_CASE("project_energy: completeness, idempotency, orthogonality") {
    const Grid1D g(-20.0, 20.0, 256);
    SpectralEngine eng(g, kNatural);
    const auto f = random_field(g, 31), h = random_field(g, 32);
    const auto fp = eng.project_energy(f, +1);
    const auto fm = eng.project_energy(f, -1);

    SpinorField sum(g, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        sum.up[i] = fp.up[i] + fm.up[i];
        sum.dn[i] = fp.dn[i] + fm.dn[i];
    }
    CHECK(max_diff(sum, f) < 1e-13 * std::sqrt(norm_squared(f)));
    CHECK(max_diff(eng.project_energy(fp, +1), fp) < 1e-13);
    CHECK(std::abs(inner_product(fp, eng.project_energy(h, -1))) < 1e-12);
}

TEST_CASE("projection commutes with propagation") {
    const Grid1D g(-20.0, 20.0, 256);
    SpectralEngine eng(g, kNatural);
    const auto f = random_field(g, 41);
    const auto a = eng.project_energy(eng.propagate(f, 5.3), +1);
    auto b = eng.propagate(eng.project_energy(f, +1), 5.3);
    b.time = a.time;
    CHECK(max_diff(a, b) < 1e-12);
}

TEST_CASE("projected components carry definite energy sign") {
    const Grid1D g(-20.0, 20.0, 256);
    SpectralEngine eng(g, kNatural);
    const auto f = random_field(g, 51);
    for (int sign : {+1, -1}) {
        const auto proj = eng.project_energy(f, sign);
        const auto m = eng.to_momentum(proj);
        double expect_h = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            cplx a = m.up[j], b = m.dn[j];
            hamiltonian_matrix(g.k(j), kNatural).apply(a, b);
            expect_h += (std::conj(m.up[j]) * a + std::conj(m.dn[j]) * b).real();
        }
        if (sign > 0) {
            CHECK(expect_h >= -1e-12);
        } else {
            CHECK(expect_h <= 1e-12);
        }
    }
}

TEST_CASE("spectral derivative of a smooth function") {
    const Grid1D g(-10.0, 10.0, 256);
    SpectralEngine eng(g, kNatural);
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = std::exp(-g.x(i) * g.x(i));
    }
    const auto df = eng.derivative(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        CHECK(std::abs(df[i] - cplx{-2.0 * x * std::exp(-x * x), 0.0}) < 1e-10);
    }
}

TEST_CASE("nyquist weight diagnostic") {
    const Grid1D g(-10.0, 10.0, 64);
    SpectralEngine eng(g, kNatural);
    const auto smooth = gaussian_initial_state(g, 1.0, 1.0, 1.0);
    CHECK(eng.nyquist_weight(smooth) < 1e-12);

    SpinorField spiky(g, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        spiky.up[i] = (i % 2 == 0) ? 1.0 : -1.0;  // pure Nyquist mode
    }
    CHECK(eng.nyquist_weight(spiky) == doctest::Approx(1.0).epsilon(1e-12));
}
