#include "bwa/discrete_dynamics.hpp"

#include "bwa/errors.hpp"
#include "bwa/lattice_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bwa {

namespace {

constexpr double kBlowupGuard = 1e6;

double sup_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

// Generic RK4 over a complex state vector.
template <typename Rhs>
void rk4_step(std::vector<cplx>& y, double dz, const Rhs& rhs, std::vector<cplx>& k1,
              std::vector<cplx>& k2, std::vector<cplx>& k3, std::vector<cplx>& k4,
              std::vector<cplx>& tmp) {
    const std::size_t n = y.size();
    rhs(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dz * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dz * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dz * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        y[i] += (dz / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Split [0, z_end] at the requested snapshot values; each segment is covered
// by ceil(len/dz) equal steps so snapshots land exactly.
std::vector<double> snapshot_schedule(double z_end, const std::vector<double>& snapshots) {
    std::vector<double> marks{0.0};
    for (double z : snapshots)
        if (z > 0.0 && z < z_end) marks.push_back(z);
    marks.push_back(z_end);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    return marks;
}

} // namespace

double default_dz(double h) { return std::min(0.1 * h, 0.01); }

AmplitudeTrajectory evolve_amplitudes(const AmplitudeState& a0, double beta, double z_end,
                                      double dz, const std::vector<double>& snapshots) {
    if (a0.a.empty()) throw std::invalid_argument("evolve_amplitudes: empty state");
    if (!(a0.h > 0.0)) throw std::invalid_argument("evolve_amplitudes: h must be positive");
    if (!(dz > 0.0) || !(z_end >= 0.0)) throw std::invalid_argument("evolve_amplitudes: bad steps");

    const double k = 1.0 / a0.h;
    const long N = static_cast<long>(a0.size());
    const long origin = a0.origin;
    auto rhs = [&](const std::vector<cplx>& y, std::vector<cplx>& out) {
        const cplx iu{0.0, 1.0};
        for (long j = 0; j < N; ++j) {
            const cplx right = (j + 1 < N) ? y[static_cast<std::size_t>(j + 1)] : cplx{0.0, 0.0};
            const cplx left = (j - 1 >= 0) ? y[static_cast<std::size_t>(j - 1)] : cplx{0.0, 0.0};
            const cplx an = y[static_cast<std::size_t>(j)];
            const double stagger = ((origin + j) % 2 != 0) ? -beta : beta;
            // i a' = -k(a_{n+1} + a_{n-1}) + (-1)^n beta a_n - |a_n|^2 a_n;
            // the symmetric evanescent coupling is what the staggered
            // substitution turns into the discrete Dirac differences
            out[static_cast<std::size_t>(j)] =
                -iu * (-k * (right + left) + stagger * an - std::norm(an) * an);
        }
    };

    AmplitudeTrajectory traj;
    AmplitudeState cur = a0;
    std::vector<cplx> k1(cur.size()), k2(cur.size()), k3(cur.size()), k4(cur.size()), tmp(cur.size());
    traj.states.push_back(cur);
    traj.zs.push_back(cur.z);

    for (const auto marks = snapshot_schedule(z_end, snapshots); double mark : marks) {
        if (mark <= cur.z) continue;
        const double len = mark - cur.z;
        const long steps = std::max(1L, static_cast<long>(std::ceil(len / dz - 1e-12)));
        const double step = len / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            rk4_step(cur.a, step, rhs, k1, k2, k3, k4, tmp);
            if (sup_abs(cur.a) > kBlowupGuard)
                throw numerical_error("amplitude evolution diverged (sup norm exceeded 1e6)");
        }
        cur.z = mark;
        traj.states.push_back(cur);
        traj.zs.push_back(mark);
    }
    return traj;
}

LatticeField amplitudes_to_spinor(const AmplitudeState& a) {
    if (a.a.empty()) throw std::invalid_argument("amplitudes_to_spinor: empty state");
    const long first = a.origin;
    const long last = a.origin + static_cast<long>(a.size()) - 1;
    // window must be {2 n0 - 1, ..., 2 n1} covering pairs (2n-1, 2n)
    if (first % 2 == 0 || last % 2 != 0)
        throw std::invalid_argument("amplitudes_to_spinor: window must span pairs (2n-1, 2n)");
    const long n0 = (first + 1) / 2;
    const long n1 = last / 2;
    if (n1 < n0) throw std::invalid_argument("amplitudes_to_spinor: window too small");

    LatticeField psi = zero_field(a.h, {n0, n1});
    const cplx iu{0.0, 1.0};
    for (long n = n0; n <= n1; ++n) {
        const double sgn = (n % 2 != 0) ? -1.0 : 1.0;
        const std::size_t j = static_cast<std::size_t>(n - n0);
        psi.c1[j] = sgn * a.a[static_cast<std::size_t>(2 * n - first)];
        psi.c2[j] = iu * sgn * a.a[static_cast<std::size_t>(2 * n - 1 - first)];
    }
    return psi;
}

AmplitudeState spinor_to_amplitudes(const LatticeField& psi) {
    check_valid(psi);
    const long n0 = psi.origin;
    const long n1 = psi.origin + static_cast<long>(psi.size()) - 1;
    AmplitudeState a;
    a.h = psi.h;
    a.origin = 2 * n0 - 1;
    a.a.assign(static_cast<std::size_t>(2 * (n1 - n0 + 1)), cplx{0.0, 0.0});
    const cplx mi{0.0, -1.0};
    for (long n = n0; n <= n1; ++n) {
        const double sgn = (n % 2 != 0) ? -1.0 : 1.0;
        const std::size_t j = static_cast<std::size_t>(n - n0);
        a.a[static_cast<std::size_t>(2 * n - a.origin)] = sgn * psi.c1[j];
        a.a[static_cast<std::size_t>(2 * n - 1 - a.origin)] = mi * sgn * psi.c2[j];
    }
    return a;
}

namespace {

// psi' = -i [ D_h psi + beta sigma3 psi - G(psi) psi ], interleaved (c1, c2) state.
struct NldRhs {
    double h;
    const std::vector<double>* beta; // per-site, aligned with the field window
    double beta_const;

    void operator()(const std::vector<cplx>& y, std::vector<cplx>& out) const {
        const long N = static_cast<long>(y.size() / 2);
        const cplx mi{0.0, -1.0};
        for (long j = 0; j < N; ++j) {
            const cplx p1 = y[static_cast<std::size_t>(2 * j)];
            const cplx p2 = y[static_cast<std::size_t>(2 * j + 1)];
            const cplx p2r = (j + 1 < N) ? y[static_cast<std::size_t>(2 * j + 3)] : cplx{0.0, 0.0};
            const cplx p1l = (j - 1 >= 0) ? y[static_cast<std::size_t>(2 * j - 2)] : cplx{0.0, 0.0};
            const double b = beta ? (*beta)[static_cast<std::size_t>(j)] : beta_const;
            const cplx d1 = mi * (p2r - p2) / h;  // (D_h psi)^1
            const cplx d2 = mi * (p1 - p1l) / h;  // (D_h psi)^2
            out[static_cast<std::size_t>(2 * j)] = mi * (d1 + b * p1 - std::norm(p1) * p1);
            out[static_cast<std::size_t>(2 * j + 1)] = mi * (d2 - b * p2 - std::norm(p2) * p2);
        }
    }
};

std::vector<cplx> interleave(const LatticeField& psi) {
    std::vector<cplx> y(2 * psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        y[2 * j] = psi.c1[j];
        y[2 * j + 1] = psi.c2[j];
    }
    return y;
}

void deinterleave(const std::vector<cplx>& y, LatticeField& psi) {
    for (std::size_t j = 0; j < psi.size(); ++j) {
        psi.c1[j] = y[2 * j];
        psi.c2[j] = y[2 * j + 1];
    }
}

std::vector<double> beta_on_window(const ScalarField& beta_h, const LatticeField& psi) {
    if (beta_h.h != psi.h) throw std::invalid_argument("mass field spacing mismatch");
    if (beta_h.window().first > psi.window().first || beta_h.window().last < psi.window().last)
        throw std::invalid_argument("mass field window does not cover the state window");
    std::vector<double> b(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j)
        b[j] = beta_h.v[static_cast<std::size_t>(psi.index(j) - beta_h.origin)];
    return b;
}

LatticeField one_rk4_step(const LatticeField& psi, const std::vector<double>* beta,
                          double beta_const, double dz) {
    std::vector<cplx> y = interleave(psi);
    std::vector<cplx> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
    NldRhs rhs{psi.h, beta, beta_const};
    rk4_step(y, dz, rhs, k1, k2, k3, k4, tmp);
    LatticeField out = psi;
    deinterleave(y, out);
    if (linf_norm(out) > kBlowupGuard)
        throw numerical_error("discrete evolution diverged (sup norm exceeded 1e6)");
    return out;
}

} // namespace

LatticeField step_discrete_nld(const LatticeField& psi, const ScalarField& beta_h, double dz) {
    check_valid(psi);
    const std::vector<double> b = beta_on_window(beta_h, psi);
    return one_rk4_step(psi, &b, 0.0, dz);
}

LatticeField step_discrete_nld(const LatticeField& psi, double beta, double dz) {
    check_valid(psi);
    return one_rk4_step(psi, nullptr, beta, dz);
}

DiscreteTrajectory evolve_discrete(const LatticeField& psi0, const MassProfile& mass,
                                   double z_end, double dz, const std::vector<double>& snapshots) {
    check_valid(psi0);
    if (!mass.usable_in_dynamics())
        throw config_error("the sign mass is a spectral-only reference; dynamics requires C^1");
    if (!(dz > 0.0) || !(z_end >= 0.0)) throw std::invalid_argument("evolve_discrete: bad steps");

    std::vector<double> beta_values;
    const std::vector<double>* beta_ptr = nullptr;
    double beta_const = 0.0;
    if (mass.is_constant()) {
        beta_const = mass.beta_inf();
    } else {
        const ScalarField beta_h = discretize_mass(mass, psi0.h, psi0.window());
        beta_values = beta_on_window(beta_h, psi0);
        beta_ptr = &beta_values;
    }

    std::vector<cplx> y = interleave(psi0);
    std::vector<cplx> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
    NldRhs rhs{psi0.h, beta_ptr, beta_const};

    DiscreteTrajectory traj;
    LatticeField cur = psi0;
    double z = 0.0;
    auto record = [&](double zv) {
        deinterleave(y, cur);
        traj.states.push_back(cur);
        traj.zs.push_back(zv);
        traj.norms.push_back({zv, l2h_norm(cur), h1h_norm(cur), linf_norm(cur)});
    };
    record(0.0);

    for (const auto marks = snapshot_schedule(z_end, snapshots); double mark : marks) {
        if (mark <= z) continue;
        const double len = mark - z;
        const long steps = std::max(1L, static_cast<long>(std::ceil(len / dz - 1e-12)));
        const double step = len / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            rk4_step(y, step, rhs, k1, k2, k3, k4, tmp);
            if (sup_abs(y) > kBlowupGuard)
                throw numerical_error("discrete evolution diverged (sup norm exceeded 1e6)");
        }
        z = mark;
        record(z);
    }
    return traj;
}

double BihariBound::eval(double t) const {
    if (t >= t_max)
        throw numerical_error("Bihari horizon exceeded: t >= (2 C M^2)^{-1}");
    return 1.0 / std::sqrt(1.0 / (datum_norm * datum_norm) - 2.0 * growth_const * t);
}

BihariBound bihari_horizon(double M, double C) {
    if (!(M > 0.0) || !(C > 0.0)) throw std::invalid_argument("bihari_horizon: M, C must be positive");
    BihariBound b;
    b.datum_norm = M;
    b.growth_const = C;
    b.t_max = 1.0 / (2.0 * C * M * M);
    return b;
}

double calibrate_bihari_constant(const DiscreteTrajectory& burnin) {
    if (burnin.norms.size() < 2)
        throw std::invalid_argument("calibration needs at least two snapshots");
    const double m0 = burnin.norms.front().h1h;
    double integral = 0.0;
    double c = 0.0;
    for (std::size_t i = 1; i < burnin.norms.size(); ++i) {
        const auto& a = burnin.norms[i - 1];
        const auto& b = burnin.norms[i];
        integral += 0.5 * (b.z - a.z) * (a.h1h * a.h1h * a.h1h + b.h1h * b.h1h * b.h1h);
        if (integral > 0.0) c = std::max(c, (b.h1h - m0) / integral);
    }
    return std::max(c, 1e-6);
}

std::vector<std::size_t> bihari_violations(const DiscreteTrajectory& traj, const BihariBound& bound) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < traj.norms.size(); ++i) {
        const double z = traj.norms[i].z;
        if (z >= bound.t_max || traj.norms[i].h1h > bound.eval(z)) bad.push_back(i);
    }
    return bad;
}

} // namespace bwa
