#include "bwa/convergence.hpp"

#include "bwa/lattice_ops.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace bwa;

TEST_CASE("compare_fields: identical zero fields give (0, 0)") {
    const LatticeField z = zero_field(0.25, {-8, 8});
    const ContinuumField Z = make_continuum(4.0, 256);
    const FieldError e = compare_fields(z, Z);
    CHECK(e.l2 == 0.0);
    CHECK(e.h1 == 0.0);
}

TEST_CASE("compare_fields: constant field on a shared window has error at quadrature level") {
    const SpinorFn c = [](double) { return SpinorValue{cplx{0.7, -0.2}, cplx{0.1, 0.4}}; };
    const LatticeField ch = discretize(c, 0.25, {-8, 8});
    ContinuumField C = make_continuum(4.0, 512);
    for (std::size_t j = 0; j < C.N(); ++j) {
        C.c1[j] = cplx{0.7, -0.2};
        C.c2[j] = cplx{0.1, 0.4};
    }
    const FieldError e = compare_fields(ch, C);
    CHECK(e.l2 < 1e-12);
}

TEST_CASE("compare_fields: Gaussian discretization error shrinks with h and matches a quadrature oracle") {
    const double L = 8.0;
    const std::size_t N = 4096;
    const ContinuumField G = sample_continuum(test::gaussian_spinor(), L, N);
    std::vector<double> errs;
    for (double h : {0.4, 0.2, 0.1}) {
        const long M = static_cast<long>(std::ceil(6.0 / h));
        const LatticeField gh = discretize(test::gaussian_spinor(), h, {-M, M});
        const FieldError e = compare_fields(gh, G);
        errs.push_back(e.l2);
        // independent composite-Simpson oracle over the same span
        const double oracle = test::interp_error_l2(
            gh, [](double x) { return cplx{std::exp(-x * x), 0.0}; }, [](double) { return cplx{}; },
            -M * h, M * h);
        CHECK(e.l2 == doctest::Approx(oracle).epsilon(1e-3));
    }
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
}

TEST_CASE("compare_fields rejects unresolved or disjoint grids") {
    const LatticeField u = zero_field(0.01, {-10, 10});
    const ContinuumField C = make_continuum(4.0, 64); // dx = 0.125 > h
    CHECK_THROWS_AS((void)compare_fields(u, C), std::invalid_argument);

    const LatticeField far = zero_field(0.5, {100, 120});
    const ContinuumField D = make_continuum(4.0, 256);
    CHECK_THROWS_AS((void)compare_fields(far, D), std::invalid_argument);
}

TEST_CASE("fit_rate recovers the slope of a power law") {
    std::vector<double> hs{0.4, 0.2, 0.1, 0.05}, errs;
    for (double h : hs) errs.push_back(3.0 * h * h);
    CHECK(fit_rate(hs, errs) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit_rate({0.2, 0.1}, {0.0, 0.0}) == 0.0);
}

TEST_CASE("run_study: zero datum gives zero errors on every rung") {
    const SpinorFn zero = [](double) { return SpinorValue{}; };
    const ConvergenceReport rep =
        run_study(zero, MassProfile::constant(1.0), 0.1, {0.4, 0.2}, {});
    for (const auto& row : rep.rows) {
        CHECK(row.l2 == 0.0);
        CHECK(row.h1 == 0.0);
    }
}

TEST_CASE("run_study: small Gaussian ladder has strictly decreasing errors") {
    StudyOptions opts;
    opts.threads = 2;
    const ConvergenceReport rep = run_study(test::gaussian_spinor(), MassProfile::constant(1.0),
                                            0.1, {0.4, 0.2, 0.1}, opts);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].l2 > rep.rows[1].l2);
    CHECK(rep.rows[1].l2 > rep.rows[2].l2);
    CHECK(rep.rate > 0.5);
    CHECK(rep.horizon > 0.1); // T sits inside the calibrated horizon
    for (const auto& row : rep.rows) CHECK(row.seconds >= 0.0);
}

TEST_CASE("run_study validates the ladder") {
    CHECK_THROWS_AS((void)run_study(test::gaussian_spinor(), MassProfile::constant(1.0), 0.1,
                                    {0.1, 0.2}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)run_study(test::gaussian_spinor(), MassProfile::constant(1.0), 0.1, {}, {}),
        std::invalid_argument);
}

TEST_CASE("domain-wall mass interpolant converges to the wall on the window") {
    // finite-window proxy for || p_h beta_h - beta ||_L2 decreasing along the ladder
    const MassProfile wall = MassProfile::tanh_wall(1.0, 1.0);
    std::vector<double> errs;
    for (double h : {0.4, 0.2, 0.1, 0.05}) {
        const long M = static_cast<long>(std::ceil(8.0 / h));
        const ScalarField bh = discretize_mass(wall, h, {-M, M});
        const ScalarPiecewiseLinear p(bh);
        long double acc = 0.0L;
        const double lo = -8.0, hi = 8.0;
        const std::size_t cells = 64000;
        const double dx = (hi - lo) / cells;
        for (std::size_t i = 0; i < cells; ++i) {
            const double x = lo + dx * (static_cast<double>(i) + 0.5);
            const double d = p(x) - wall(x);
            acc += d * d;
        }
        errs.push_back(std::sqrt(static_cast<double>(acc) * dx));
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) CHECK(errs[i + 1] < errs[i]);
}

TEST_CASE("BWA_THREADS resolves the worker count") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}
