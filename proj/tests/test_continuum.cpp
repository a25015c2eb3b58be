#include "bwa/continuum_dynamics.hpp"

#include "bwa/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bwa;

namespace {

double field_diff_l2(const ContinuumField& a, const ContinuumField& b) {
    REQUIRE(a.N() == b.N());
    long double acc = 0.0L;
    for (std::size_t j = 0; j < a.N(); ++j)
        acc += std::norm(a.c1[j] - b.c1[j]) + std::norm(a.c2[j] - b.c2[j]);
    return static_cast<double>(std::sqrt(acc * static_cast<long double>(a.dx())));
}

} // namespace

TEST_CASE("free step with dz = 0 is the identity") {
    const ContinuumField f = sample_continuum(test::gaussian_spinor(), 10.0, 256);
    const ContinuumField g = free_dirac_step(f, 0.0);
    CHECK(field_diff_l2(f, g) < 1e-15);
}

TEST_CASE("free step multiplies a sigma1 eigenmode by e^{-i dz xi0}") {
    const double L = 8.0;
    const std::size_t N = 512;
    const long k0 = 5;
    const double xi0 = std::numbers::pi * static_cast<double>(k0) / L;
    ContinuumField f = make_continuum(L, N);
    for (std::size_t j = 0; j < N; ++j) {
        const cplx e = std::polar(1.0 / std::sqrt(2.0), xi0 * f.x(j));
        f.c1[j] = e;
        f.c2[j] = e; // (1,1)/sqrt(2) is the sigma1 eigenvector with eigenvalue +1
    }
    const double dz = 0.37;
    const ContinuumField g = free_dirac_step(f, dz);
    const cplx mult = std::polar(1.0, -dz * xi0);
    double err = 0.0;
    for (std::size_t j = 0; j < N; ++j)
        err = std::max({err, std::abs(g.c1[j] - mult * f.c1[j]), std::abs(g.c2[j] - mult * f.c2[j])});
    CHECK(err < 1e-13);
}

TEST_CASE("free step conserves the L2 norm to 1e-12") {
    const ContinuumField f = sample_continuum(test::gaussian_spinor(), 12.0, 1024);
    const ContinuumField g = free_dirac_step(f, 0.83);
    CHECK(std::abs(l2_norm(g) - l2_norm(f)) <= 1e-12 * l2_norm(f));
}

TEST_CASE("phase step: hand-evaluated phase and exact moduli invariance") {
    const double L = 4.0;
    const std::size_t N = 64;
    ContinuumField f = make_continuum(L, N);
    f.c1[10] = cplx{1.0, 0.0};
    const ContinuumField g = phase_step(f, MassProfile::constant(1.0), std::numbers::pi);
    // |Psi1| = 1 at that point, so the phase is -pi(beta - 1) = 0
    CHECK(std::abs(g.c1[10] - cplx{1.0, 0.0}) < 1e-15);

    const ContinuumField h = sample_continuum(test::gaussian_spinor(), L, N);
    const ContinuumField ph = phase_step(h, MassProfile::tanh_wall(1.0, 1.0), 0.31);
    for (std::size_t j = 0; j < N; ++j) {
        CHECK(std::abs(ph.c1[j]) == doctest::Approx(std::abs(h.c1[j])).epsilon(1e-14));
        CHECK(std::abs(ph.c2[j]) == doctest::Approx(std::abs(h.c2[j])).epsilon(1e-14));
    }
}

TEST_CASE("zero datum evolves to the zero trajectory") {
    const ContinuumField z = make_continuum(10.0, 128);
    const auto traj = evolve_continuum(z, MassProfile::constant(1.0), 1.0, 0.01, {0.5});
    for (const auto& s : traj.states) CHECK(l2_norm(s) == 0.0);
}

TEST_CASE("Strang splitting is second order (self-convergence ratio near 4)") {
    const double L = 12.0, zend = 0.5;
    const std::size_t N = 1024;
    const ContinuumField chi = sample_continuum(test::gaussian_spinor(), L, N);
    const MassProfile mass = MassProfile::constant(1.0);
    auto solve = [&](double dz) {
        ContinuumSolver s(mass, L, N);
        s.set_state(chi);
        s.advance(zend, dz);
        return s.state();
    };
    const ContinuumField a = solve(2e-3), b = solve(1e-3), c = solve(5e-4);
    const double ratio = field_diff_l2(a, b) / field_diff_l2(b, c);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("composite conserves the L2 norm over thousands of steps") {
    const double L = 12.0;
    const std::size_t N = 1024;
    const ContinuumField chi = sample_continuum(test::gaussian_spinor(), L, N);
    ContinuumSolver s(MassProfile::constant(1.0), L, N);
    s.set_state(chi);
    const double n0 = s.l2_norm_now();
    for (int i = 0; i < 2000; ++i) s.strang_step(1e-3);
    CHECK(std::abs(s.l2_norm_now() - n0) <= 1e-13 * n0);
}

TEST_CASE("boundary contamination raises a numerical error") {
    const ContinuumField chi = sample_continuum(test::gaussian_spinor(), 8.0, 512);
    CHECK_THROWS_AS((void)evolve_continuum(chi, MassProfile::constant(1.0), 5.0, 5e-3, {}),
                    numerical_error);
}

TEST_CASE("datum touching the boundary is rejected up front") {
    ContinuumField bad = sample_continuum(test::gaussian_spinor(), 3.0, 64); // e^{-9} at the edge
    CHECK_THROWS_AS((void)evolve_continuum(bad, MassProfile::constant(1.0), 0.1, 0.01, {}),
                    std::invalid_argument);
}

TEST_CASE("grid validation: N must be a power of two >= 8") {
    CHECK_THROWS_AS((void)make_continuum(4.0, 12), std::invalid_argument);
    CHECK_THROWS_AS((void)make_continuum(4.0, 4), std::invalid_argument);
    CHECK_NOTHROW((void)make_continuum(4.0, 8));
}
