#include "bwa/continuum_dynamics.hpp"

#include "bwa/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bwa {

namespace {

using lcplx = std::complex<long double>;

std::mutex& planl_mutex() {
    static std::mutex m;
    return m;
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<double> snapshot_marks(double z0, double z_end, const std::vector<double>& snapshots) {
    std::vector<double> marks;
    for (double z : snapshots)
        if (z > z0 && z < z_end) marks.push_back(z);
    marks.push_back(z_end);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    return marks;
}

} // namespace

ContinuumField make_continuum(double L, std::size_t N) {
    ContinuumField f;
    f.L = L;
    f.c1.assign(N, cplx{0.0, 0.0});
    f.c2.assign(N, cplx{0.0, 0.0});
    check_valid(f);
    return f;
}

void check_valid(const ContinuumField& f) {
    if (!(f.L > 0.0)) throw std::invalid_argument("continuum field: L must be positive");
    if (f.N() < 8 || !power_of_two(f.N()))
        throw std::invalid_argument("continuum field: N must be a power of two >= 8");
    if (f.c1.size() != f.c2.size())
        throw std::invalid_argument("continuum field: mismatched component lengths");
    for (std::size_t j = 0; j < f.N(); ++j)
        if (!std::isfinite(f.c1[j].real()) || !std::isfinite(f.c1[j].imag()) ||
            !std::isfinite(f.c2[j].real()) || !std::isfinite(f.c2[j].imag()))
            throw std::invalid_argument("continuum field: non-finite samples");
}

double l2_norm(const ContinuumField& f) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < f.N(); ++j) s += std::norm(f.c1[j]) + std::norm(f.c2[j]);
    return static_cast<double>(std::sqrt(s * static_cast<long double>(f.dx())));
}

double linf_norm(const ContinuumField& f) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.N(); ++j)
        m = std::max(m, std::sqrt(std::norm(f.c1[j]) + std::norm(f.c2[j])));
    return m;
}

double boundary_ratio(const ContinuumField& f) {
    const double m = linf_norm(f);
    if (m == 0.0) return 0.0;
    const std::size_t n = f.N();
    double b = 0.0;
    for (std::size_t j : {std::size_t{0}, n - 1})
        b = std::max(b, std::sqrt(std::norm(f.c1[j]) + std::norm(f.c2[j])));
    return b / m;
}

ContinuumField sample_continuum(const SpinorFn& f, double L, std::size_t N) {
    ContinuumField out = make_continuum(L, N);
    for (std::size_t j = 0; j < N; ++j) {
        const SpinorValue v = f(out.x(j));
        out.c1[j] = v.c1;
        out.c2[j] = v.c2;
    }
    check_valid(out);
    return out;
}

// Long-double state plus fftwl transforms; one instance per trajectory.
struct ContinuumSolverImpl {
    MassProfile mass;
    double L;
    std::size_t N;
    double z = 0.0;
    std::vector<lcplx> c1, c2;
    std::vector<long double> beta; // sampled at grid points
    std::vector<long double> xi;   // FFT-ordered frequencies pi*k/L
    fftwl_complex* buf = nullptr;
    fftwl_plan fwd = nullptr, bwd = nullptr;

    ContinuumSolverImpl(const MassProfile& m, double L_, std::size_t N_) : mass(m), L(L_), N(N_) {
        c1.assign(N, lcplx{0.0L, 0.0L});
        c2.assign(N, lcplx{0.0L, 0.0L});
        beta.resize(N);
        xi.resize(N);
        const long double pi_over_L = std::numbers::pi_v<long double> / static_cast<long double>(L);
        for (std::size_t k = 0; k < N; ++k) {
            const long long ks = (k < N / 2) ? static_cast<long long>(k)
                                             : static_cast<long long>(k) - static_cast<long long>(N);
            xi[k] = pi_over_L * static_cast<long double>(ks);
            beta[k] =
                static_cast<long double>(mass(-L + 2.0 * L * static_cast<double>(k) / static_cast<double>(N)));
        }
        std::lock_guard<std::mutex> lock(planl_mutex());
        buf = fftwl_alloc_complex(N);
        fwd = fftwl_plan_dft_1d(static_cast<int>(N), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftwl_plan_dft_1d(static_cast<int>(N), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~ContinuumSolverImpl() {
        std::lock_guard<std::mutex> lock(planl_mutex());
        if (fwd) fftwl_destroy_plan(fwd);
        if (bwd) fftwl_destroy_plan(bwd);
        if (buf) fftwl_free(buf);
    }

    void load(const ContinuumField& f) {
        for (std::size_t j = 0; j < N; ++j) {
            c1[j] = lcplx{f.c1[j].real(), f.c1[j].imag()};
            c2[j] = lcplx{f.c2[j].real(), f.c2[j].imag()};
        }
        z = f.z;
    }

    ContinuumField unload() const {
        ContinuumField f = make_continuum(L, N);
        f.z = z;
        for (std::size_t j = 0; j < N; ++j) {
            f.c1[j] = cplx{static_cast<double>(c1[j].real()), static_cast<double>(c1[j].imag())};
            f.c2[j] = cplx{static_cast<double>(c2[j].real()), static_cast<double>(c2[j].imag())};
        }
        return f;
    }

    void fft(std::vector<lcplx>& a, fftwl_plan plan) {
        for (std::size_t j = 0; j < N; ++j) {
            buf[j][0] = a[j].real();
            buf[j][1] = a[j].imag();
        }
        fftwl_execute(plan);
        for (std::size_t j = 0; j < N; ++j) a[j] = lcplx{buf[j][0], buf[j][1]};
    }

    // e^{-i dz xi sigma1} = cos(dz xi) I - i sin(dz xi) sigma1, mode by mode
    void free_step(long double dz) {
        fft(c1, fwd);
        fft(c2, fwd);
        const long double inv_n = 1.0L / static_cast<long double>(N); // exact: N is a power of two
        for (std::size_t k = 0; k < N; ++k) {
            const long double th = dz * xi[k];
            const long double c = std::cos(th), s = std::sin(th);
            const lcplx a = c1[k], b = c2[k];
            const lcplx is{0.0L, s};
            c1[k] = (c * a - is * b) * inv_n;
            c2[k] = (c * b - is * a) * inv_n;
        }
        fft(c1, bwd);
        fft(c2, bwd);
    }

    // Psi1 <- e^{-i dz (beta - |Psi1|^2)} Psi1,  Psi2 <- e^{-i dz (-beta - |Psi2|^2)} Psi2
    void phase_step(long double dz) {
        for (std::size_t j = 0; j < N; ++j) {
            const long double th1 = -dz * (beta[j] - std::norm(c1[j]));
            const long double th2 = -dz * (-beta[j] - std::norm(c2[j]));
            c1[j] *= lcplx{std::cos(th1), std::sin(th1)};
            c2[j] *= lcplx{std::cos(th2), std::sin(th2)};
        }
    }

    void strang_step(long double dz) {
        phase_step(dz / 2.0L);
        free_step(dz);
        phase_step(dz / 2.0L);
    }

    double norm() const {
        long double s = 0.0L;
        for (std::size_t j = 0; j < N; ++j) s += std::norm(c1[j]) + std::norm(c2[j]);
        return static_cast<double>(
            std::sqrt(s * (2.0L * static_cast<long double>(L) / static_cast<long double>(N))));
    }
};

ContinuumSolver::ContinuumSolver(const MassProfile& mass, double L, std::size_t N) {
    if (!(L > 0.0)) throw std::invalid_argument("continuum solver: L must be positive");
    if (N < 8 || !power_of_two(N))
        throw std::invalid_argument("continuum solver: N must be a power of two >= 8");
    if (!mass.usable_in_dynamics())
        throw config_error("the sign mass is a spectral-only reference; dynamics requires C^1");
    impl_ = std::make_unique<ContinuumSolverImpl>(mass, L, N);
}

ContinuumSolver::~ContinuumSolver() = default;

void ContinuumSolver::set_state(const ContinuumField& f) {
    check_valid(f);
    if (f.N() != impl_->N || f.L != impl_->L)
        throw std::invalid_argument("continuum solver: state does not match the configured grid");
    impl_->load(f);
}

ContinuumField ContinuumSolver::state() const { return impl_->unload(); }

double ContinuumSolver::z() const { return impl_->z; }

void ContinuumSolver::strang_step(double dz) {
    impl_->strang_step(static_cast<long double>(dz));
    impl_->z += dz;
}

void ContinuumSolver::advance(double z_target, double dz) {
    if (!(dz > 0.0)) throw std::invalid_argument("continuum solver: dz must be positive");
    const double len = z_target - impl_->z;
    if (len <= 0.0) return;
    const long steps = std::max(1L, static_cast<long>(std::ceil(len / dz - 1e-12)));
    const long double step = static_cast<long double>(len) / static_cast<long double>(steps);
    for (long s = 0; s < steps; ++s) impl_->strang_step(step);
    impl_->z = z_target;
}

double ContinuumSolver::l2_norm_now() const { return impl_->norm(); }

ContinuumField free_dirac_step(const ContinuumField& f, double dz) {
    check_valid(f);
    ContinuumSolverImpl impl(MassProfile::constant(1.0), f.L, f.N());
    impl.load(f);
    impl.free_step(static_cast<long double>(dz));
    ContinuumField out = impl.unload();
    out.z = f.z + dz;
    return out;
}

ContinuumField phase_step(const ContinuumField& f, const MassProfile& mass, double dz) {
    check_valid(f);
    ContinuumField out = f;
    for (std::size_t j = 0; j < f.N(); ++j) {
        const double b = mass(f.x(j));
        const lcplx a1{f.c1[j].real(), f.c1[j].imag()};
        const lcplx a2{f.c2[j].real(), f.c2[j].imag()};
        const long double th1 = -static_cast<long double>(dz) * (b - std::norm(a1));
        const long double th2 = -static_cast<long double>(dz) * (-b - std::norm(a2));
        const lcplx r1 = a1 * lcplx{std::cos(th1), std::sin(th1)};
        const lcplx r2 = a2 * lcplx{std::cos(th2), std::sin(th2)};
        out.c1[j] = cplx{static_cast<double>(r1.real()), static_cast<double>(r1.imag())};
        out.c2[j] = cplx{static_cast<double>(r2.real()), static_cast<double>(r2.imag())};
    }
    out.z = f.z + dz;
    return out;
}

ContinuumTrajectory evolve_continuum(const ContinuumField& chi, const MassProfile& mass,
                                     double z_end, double dz, const std::vector<double>& snapshots) {
    check_valid(chi);
    if (!(dz > 0.0) || !(z_end >= chi.z)) throw std::invalid_argument("evolve_continuum: bad steps");
    if (boundary_ratio(chi) > 1e-10)
        throw std::invalid_argument("evolve_continuum: datum does not decay below 1e-10 at the boundary");

    ContinuumSolver solver(mass, chi.L, chi.N());
    solver.set_state(chi);

    ContinuumTrajectory traj;
    auto record = [&]() {
        traj.states.push_back(solver.state());
        traj.zs.push_back(solver.z());
        traj.l2_norms.push_back(solver.l2_norm_now());
        if (boundary_ratio(traj.states.back()) > 1e-6)
            throw numerical_error(
                "boundary contamination: field magnitude at the domain edge exceeds 1e-6 of max; "
                "enlarge L (finite propagation speed 1 makes the required L predictable)");
    };
    record();
    for (double mark : snapshot_marks(chi.z, z_end, snapshots)) {
        solver.advance(mark, dz);
        record();
    }
    return traj;
}

} // namespace bwa
