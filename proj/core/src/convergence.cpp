#include "bwa/convergence.hpp"

#include "bwa/errors.hpp"
#include "bwa/fourier.hpp"
#include "bwa/lattice_ops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace bwa {

namespace {

struct Reference {
    ContinuumField psi;
    std::vector<cplx> d1, d2; // spectral derivative
};

std::vector<cplx> spectral_derivative(const std::vector<cplx>& a, double L) {
    std::vector<cplx> f = a;
    dft(f, -1);
    const std::size_t n = f.size();
    for (std::size_t k = 0; k < n; ++k) {
        const long long ks = (k < n / 2) ? static_cast<long long>(k)
                                         : static_cast<long long>(k) - static_cast<long long>(n);
        double xi = std::numbers::pi * static_cast<double>(ks) / L;
        if (static_cast<std::size_t>(std::llabs(ks)) == n / 2) xi = 0.0; // drop the Nyquist mode
        f[k] *= cplx{0.0, xi} / static_cast<double>(n);
    }
    dft(f, +1);
    return f;
}

FieldError compare_against(const Reference& ref, const LatticeField& psi_h) {
    const ContinuumField& Psi = ref.psi;
    const double dx = Psi.dx();
    if (dx > psi_h.h * (1.0 + 1e-9))
        throw std::invalid_argument("compare_fields: continuum grid does not resolve the lattice");
    // node span of the lattice window; the ramp cells outside carry no mass for
    // padded windows and would spoil the exact constant-field case
    const double lo = static_cast<double>(psi_h.origin) * psi_h.h;
    const double hi = static_cast<double>(psi_h.window().last) * psi_h.h;
    if (hi <= -Psi.L || lo >= Psi.L)
        throw std::invalid_argument("compare_fields: non-overlapping domains");

    const long j_lo = std::max(0L, static_cast<long>(std::ceil((lo + Psi.L) / dx)));
    const long j_hi = std::min(static_cast<long>(Psi.N()) - 1, static_cast<long>(std::floor((hi + Psi.L) / dx)));

    const PiecewiseLinear p = interp_linear(psi_h);
    const LatticeField dps = forward_diff(psi_h);
    const PiecewiseConstant dp = interp_constant(dps); // derivative of p_h psi_h

    long double acc0 = 0.0L, acc1 = 0.0L;
    for (long j = j_lo; j <= j_hi; ++j) {
        const double x = Psi.x(static_cast<std::size_t>(j));
        const SpinorValue pv = p(x);
        const SpinorValue dv = dp(x);
        const std::size_t uj = static_cast<std::size_t>(j);
        const double w = (j == j_lo || j == j_hi) ? 0.5 : 1.0; // trapezoid
        acc0 += w * (std::norm(pv.c1 - Psi.c1[uj]) + std::norm(pv.c2 - Psi.c2[uj]));
        acc1 += w * (std::norm(dv.c1 - ref.d1[uj]) + std::norm(dv.c2 - ref.d2[uj]));
    }
    FieldError e;
    e.l2 = static_cast<double>(std::sqrt(acc0 * static_cast<long double>(dx)));
    e.h1 = static_cast<double>(std::sqrt((acc0 + acc1) * static_cast<long double>(dx)));
    return e;
}

// smallest |x| beyond which |chi| stays below 1e-12 of its maximum
double datum_radius(const SpinorFn& chi) {
    const double scan = 40.0, step = 0.01;
    double maxmod = 0.0;
    for (double x = -scan; x <= scan; x += step) {
        const SpinorValue v = chi(x);
        maxmod = std::max(maxmod, std::sqrt(std::norm(v.c1) + std::norm(v.c2)));
    }
    if (maxmod == 0.0) return 1.0;
    double r = scan;
    while (r > step) {
        const SpinorValue a = chi(r), b = chi(-r);
        const double m = std::max(std::sqrt(std::norm(a.c1) + std::norm(a.c2)),
                                  std::sqrt(std::norm(b.c1) + std::norm(b.c2)));
        if (m >= 1e-12 * maxmod) break;
        r -= step;
    }
    return r + step;
}

std::size_t next_pow2(double x) {
    std::size_t n = 8;
    while (static_cast<double>(n) < x) n *= 2;
    return n;
}

} // namespace

FieldError compare_fields(const LatticeField& psi_h, const ContinuumField& Psi) {
    check_valid(psi_h);
    check_valid(Psi);
    Reference ref{Psi, spectral_derivative(Psi.c1, Psi.L), spectral_derivative(Psi.c2, Psi.L)};
    return compare_against(ref, psi_h);
}

double fit_rate(const std::vector<double>& hs, const std::vector<double>& errs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (!(errs[i] > 0.0)) continue;
        const double lx = std::log(hs[i]), ly = std::log(errs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    return (static_cast<double>(n) * sxy - sx * sy) / (static_cast<double>(n) * sxx - sx * sx);
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BWA_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

ConvergenceReport run_study(const SpinorFn& chi, const MassProfile& mass, double T,
                            const std::vector<double>& ladder, const StudyOptions& opts) {
    if (ladder.empty()) throw std::invalid_argument("run_study: empty ladder");
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
        if (!(ladder[i] > ladder[i + 1]))
            throw std::invalid_argument("run_study: ladder must be strictly decreasing in h");
    if (!(T > 0.0)) throw std::invalid_argument("run_study: T must be positive");
    if (!mass.usable_in_dynamics())
        throw config_error("the sign mass is a spectral-only reference; dynamics requires C^1");

    ConvergenceReport report;
    report.datum_id = opts.datum_id;
    report.mass_id = mass.id();
    report.T = T;

    const double radius = datum_radius(chi);
    const double window_r = radius + T + 2.0;
    const double h_min = ladder.back();

    const double L = (opts.ref_l > 0.0) ? opts.ref_l : window_r + 4.0;
    std::size_t N = (opts.ref_n > 0) ? opts.ref_n : next_pow2(2.0 * L / (h_min / 4.0));
    double ref_dz = opts.ref_dz;

    auto make_window = [&](double h) {
        return IndexWindow{static_cast<long>(std::floor(-window_r / h)) - 1,
                           static_cast<long>(std::ceil(window_r / h)) + 1};
    };

    // Bihari constant: explicit, or calibrated on a coarse burn-in
    double C = opts.bihari_c;
    if (!(C > 0.0)) {
        const LatticeField chi_h = discretize(chi, ladder.front(), make_window(ladder.front()));
        if (l2h_norm(chi_h) == 0.0) {
            C = 1e-6;
        } else {
            const double zb = std::min(T, 0.05);
            std::vector<double> snaps;
            for (int i = 1; i < 6; ++i) snaps.push_back(zb * i / 6.0);
            const DiscreteTrajectory burnin =
                evolve_discrete(chi_h, mass, zb, default_dz(ladder.front()), snaps);
            C = calibrate_bihari_constant(burnin);
        }
    }
    report.bihari_c = C;

    // reference solution (shared, with its spectral derivative precomputed)
    auto solve_reference = [&](std::size_t n, double dz) {
        const ContinuumField datum = sample_continuum(chi, L, n);
        if (l2_norm(datum) == 0.0) return datum;
        ContinuumTrajectory traj = evolve_continuum(datum, mass, T, dz, {});
        return traj.states.back();
    };
    Reference ref;
    ref.psi = solve_reference(N, ref_dz);
    if (N >= 16) {
        const ContinuumField coarse = solve_reference(N / 2, 2.0 * ref_dz);
        // resample the coarse run onto the fine grid by index doubling
        long double acc = 0.0L;
        for (std::size_t j = 0; j < coarse.N(); ++j) {
            acc += std::norm(coarse.c1[j] - ref.psi.c1[2 * j]) +
                   std::norm(coarse.c2[j] - ref.psi.c2[2 * j]);
        }
        report.reference_self_error = static_cast<double>(std::sqrt(acc * static_cast<long double>(coarse.dx())));
    }
    ref.d1 = spectral_derivative(ref.psi.c1, L);
    ref.d2 = spectral_derivative(ref.psi.c2, L);

    struct RungResult {
        LadderRow row;
        double t_max = 0.0;
    };
    auto run_rung = [&](double h) {
        const auto t0 = std::chrono::steady_clock::now();
        const LatticeField chi_h = discretize(chi, h, make_window(h));
        const double M = h1h_norm(chi_h);
        RungResult r;
        r.row.h = h;
        if (M > 0.0) {
            const BihariBound bound = bihari_horizon(M, C);
            r.t_max = bound.t_max;
            if (T >= bound.t_max)
                throw numerical_error("run_study: T exceeds the a-priori horizon (2 C M^2)^{-1} at h=" +
                                      std::to_string(h));
            const DiscreteTrajectory traj = evolve_discrete(chi_h, mass, T, default_dz(h), {});
            const FieldError err = compare_against(ref, traj.states.back());
            r.row.l2 = err.l2;
            r.row.h1 = err.h1;
        }
        r.row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };

    const unsigned workers = std::min<unsigned>(resolve_threads(opts.threads),
                                                static_cast<unsigned>(ladder.size()));
    std::vector<RungResult> results(ladder.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < ladder.size(); ++i) results[i] = run_rung(ladder[i]);
    } else {
        std::vector<std::future<RungResult>> futs(ladder.size());
        std::size_t next = 0;
        while (next < ladder.size()) {
            const std::size_t batch = std::min<std::size_t>(workers, ladder.size() - next);
            for (std::size_t b = 0; b < batch; ++b)
                futs[next + b] = std::async(std::launch::async, run_rung, ladder[next + b]);
            for (std::size_t b = 0; b < batch; ++b) results[next + b] = futs[next + b].get();
            next += batch;
        }
    }

    std::vector<double> hs, errs;
    for (const auto& r : results) {
        report.rows.push_back(r.row);
        hs.push_back(r.row.h);
        errs.push_back(r.row.l2);
    }
    report.horizon = results.front().t_max;
    report.rate = fit_rate(hs, errs);

    // reference-quality gate: self-convergence error must not pollute the fit
    const double coarsest = report.rows.front().l2;
    if (coarsest > 0.0 && report.reference_self_error > 0.1 * coarsest)
        throw numerical_error("run_study: reference solution too coarse for the requested ladder");
    return report;
}

} // namespace bwa
