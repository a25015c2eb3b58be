#include "bwa/standing_waves.hpp"

#include "bwa/errors.hpp"
#include "bwa/spectral_gap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bwa {

namespace {

constexpr double kOrbitGuard = 1e3; // trial integrations veering off are failures, not blow-ups

using Vec2 = std::array<double, 2>;

struct PlaneRhs {
    const MassProfile* mass = nullptr; // null: constant beta
    double beta = 0.0;
    double omega = 0.0;

    Vec2 operator()(double x, const Vec2& y) const {
        const double b = mass ? (*mass)(x) : beta;
        return {-(omega + b) * y[1] - y[1] * y[1] * y[1],
                (omega - b) * y[0] + y[0] * y[0] * y[0]};
    }
};

// Dormand-Prince 5(4) step; returns the embedded error estimate.
struct Dp54 {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    template <typename Rhs>
    static double step(const Rhs& f, double x, const Vec2& y, double h, Vec2& out) {
        auto ax = [&](double c, const Vec2& a, const Vec2& b) {
            return Vec2{a[0] + c * b[0], a[1] + c * b[1]};
        };
        const Vec2 k1 = f(x, y);
        const Vec2 k2 = f(x + h / 5, ax(h * a21, y, k1));
        Vec2 t{y[0] + h * (a31 * k1[0] + a32 * k2[0]), y[1] + h * (a31 * k1[1] + a32 * k2[1])};
        const Vec2 k3 = f(x + 3 * h / 10, t);
        t = {y[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
             y[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])};
        const Vec2 k4 = f(x + 4 * h / 5, t);
        t = {y[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
             y[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])};
        const Vec2 k5 = f(x + 8 * h / 9, t);
        t = {y[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
             y[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])};
        const Vec2 k6 = f(x + h, t);
        out = {y[0] + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
               y[1] + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1])};
        const Vec2 k7 = f(x + h, out);
        const Vec2 err{h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] + e7 * k7[0]),
                       h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] + e7 * k7[1])};
        return std::hypot(err[0], err[1]);
    }
};

// Adaptive integration from x to x_target (either direction). Returns false if
// the trajectory exceeds the guard.
template <typename Rhs>
bool integrate_to(const Rhs& f, double& x, Vec2& y, double x_target, double tol) {
    const double dir = (x_target >= x) ? 1.0 : -1.0;
    double h = dir * std::min(1e-2, std::abs(x_target - x));
    int rejects_in_a_row = 0;
    while (dir * (x_target - x) > 1e-14 * std::max(1.0, std::abs(x_target))) {
        if (dir * (x + h) > dir * x_target) h = x_target - x;
        Vec2 ynew;
        const double err = Dp54::step(f, x, y, h, ynew);
        const double scale = tol * std::max({1.0e-30, std::hypot(y[0], y[1]), std::hypot(ynew[0], ynew[1])});
        if (err <= scale) {
            x += h;
            y = ynew;
            if (std::hypot(y[0], y[1]) > kOrbitGuard) return false;
            rejects_in_a_row = 0;
            const double grow = (err > 0.0) ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(scale / err, 0.2), 0.1, 0.9);
            if (++rejects_in_a_row > 60)
                throw numerical_error("phase-plane integrator failed to meet the step tolerance");
        }
    }
    return true;
}

// Integrate one half-axis, emitting at every multiple of dx_out up to x_end.
// Emission starts at k = 1 (the caller owns x = x_start). Stops early once the
// emitted point has modulus below tail_tol; returns the last emitted k.
template <typename Rhs>
long sample_half_axis(const Rhs& f, double x_start, double dir, long k_end, double dx_out,
                      Vec2 y, double ode_tol, double tail_tol,
                      const std::function<void(long, const Vec2&)>& emit) {
    double x = x_start;
    for (long k = 1; k <= k_end; ++k) {
        const double target = x_start + dir * dx_out * static_cast<double>(k);
        if (!integrate_to(f, x, y, target, ode_tol))
            throw numerical_error("phase-plane trajectory exceeded the divergence guard");
        emit(k, y);
        if (std::hypot(y[0], y[1]) < tail_tol) return k;
    }
    return k_end;
}

double round_step_count(double span, double dx) { return std::max(1.0, std::round(span / dx)); }

} // namespace

double hamiltonian(double u, double v, double beta, double omega) {
    if (!(beta > 0.0) || !(omega > 0.0) || !(omega < beta))
        throw config_error("hamiltonian requires beta > 0 and omega in (0, beta)");
    return (u * u * u * u + v * v * v * v) / 4.0 + 0.5 * beta * (v * v - u * u) +
           0.5 * omega * (u * u + v * v);
}

std::pair<double, double> vector_field(const PhaseState& s, double beta, double omega) {
    if (!(beta > 0.0) || !(omega > 0.0) || !(omega < beta))
        throw config_error("vector_field requires beta > 0 and omega in (0, beta)");
    const PlaneRhs rhs{nullptr, beta, omega};
    const Vec2 d = rhs(s.x, {s.u, s.v});
    return {d[0], d[1]};
}

double WaveProfile::max_modulus() const {
    double m = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) m = std::max(m, std::hypot(us[i], vs[i]));
    return m;
}

double fit_decay_rate(const WaveProfile& profile, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double x = profile.xs[i];
        if (x < lo || x > hi) continue;
        const double r = std::hypot(profile.us[i], profile.vs[i]);
        if (r <= 0.0) continue;
        const double ly = std::log(r);
        sx += x;
        sy += ly;
        sxx += x * x;
        sxy += x * ly;
        ++n;
    }
    if (n < 3) throw numerical_error("decay fit window contains fewer than 3 usable samples");
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return -(static_cast<double>(n) * sxy - sx * sy) / denom;
}

WaveProfile homoclinic_orbit(double beta, double omega, double x_max, double tail_tol,
                             double dx_out, double ode_tol) {
    if (!(beta > 0.0) || !(omega > 0.0) || !(omega < beta))
        throw config_error("homoclinic orbit requires omega in (0, beta)");
    if (!(x_max > 0.0) || !(dx_out > 0.0) || !(tail_tol > 0.0))
        throw std::invalid_argument("homoclinic orbit: bad grid or tolerance");
    const double mu = std::sqrt(beta * beta - omega * omega);
    if (std::exp(-mu * x_max) >= tail_tol)
        throw config_error("x_max too small: exp(-sqrt(beta^2-omega^2) x_max) must lie below tol");

    const long K = static_cast<long>(round_step_count(x_max, dx_out));
    WaveProfile p;
    p.omega = omega;
    p.mass_id = MassProfile::constant(beta).id();
    p.xs.resize(2 * K + 1);
    p.us.assign(2 * K + 1, 0.0);
    p.vs.assign(2 * K + 1, 0.0);
    for (long k = -K; k <= K; ++k) p.xs[static_cast<std::size_t>(k + K)] = dx_out * static_cast<double>(k);

    const Vec2 y0{std::sqrt(2.0 * (beta - omega)), 0.0};
    p.us[static_cast<std::size_t>(K)] = y0[0];
    p.vs[static_cast<std::size_t>(K)] = y0[1];

    // Direct integration toward the saddle loses one digit per e-fold once the
    // unstable-mode error catches up with the decaying orbit, so the numeric
    // phase stops at r_switch and the tail continues with the asymptotic
    // exponential along the reached state (a solution to O(r^3) there).
    const double r_switch = std::max(1e-4 * std::hypot(y0[0], y0[1]), tail_tol);
    const PlaneRhs rhs{nullptr, beta, omega};
    const long k_right = sample_half_axis(rhs, 0.0, +1.0, K, dx_out, y0, ode_tol, r_switch,
                                          [&](long k, const Vec2& y) {
                                              p.us[static_cast<std::size_t>(K + k)] = y[0];
                                              p.vs[static_cast<std::size_t>(K + k)] = y[1];
                                          });
    const long k_left = sample_half_axis(rhs, 0.0, -1.0, K, dx_out, y0, ode_tol, r_switch,
                                         [&](long k, const Vec2& y) {
                                             p.us[static_cast<std::size_t>(K - k)] = y[0];
                                             p.vs[static_cast<std::size_t>(K - k)] = y[1];
                                         });

    auto value_at = [&](long idx) {
        return std::hypot(p.us[static_cast<std::size_t>(idx)], p.vs[static_cast<std::size_t>(idx)]);
    };
    if (value_at(K + k_right) >= std::max(r_switch, tail_tol) ||
        value_at(K - k_left) >= std::max(r_switch, tail_tol))
        throw numerical_error("non-homoclinic: the orbit did not decay below tol by x_max "
                              "(check (beta, omega) and the tolerance)");
    for (long k = k_right + 1; k <= K; ++k) {
        const double decay = std::exp(-mu * dx_out * static_cast<double>(k - k_right));
        p.us[static_cast<std::size_t>(K + k)] = p.us[static_cast<std::size_t>(K + k_right)] * decay;
        p.vs[static_cast<std::size_t>(K + k)] = p.vs[static_cast<std::size_t>(K + k_right)] * decay;
    }
    for (long k = k_left + 1; k <= K; ++k) {
        const double decay = std::exp(-mu * dx_out * static_cast<double>(k - k_left));
        p.us[static_cast<std::size_t>(K - k)] = p.us[static_cast<std::size_t>(K - k_left)] * decay;
        p.vs[static_cast<std::size_t>(K - k)] = p.vs[static_cast<std::size_t>(K - k_left)] * decay;
    }

    double max_h = 0.0, min_gap = std::numeric_limits<double>::infinity();
    for (long k = -K; k <= K; ++k) {
        const std::size_t i = static_cast<std::size_t>(K + k);
        max_h = std::max(max_h, std::abs(hamiltonian(p.us[i], p.vs[i], beta, omega)));
        min_gap = std::min(min_gap, p.us[i] * p.us[i] - p.vs[i] * p.vs[i]);
    }
    p.max_abs_hamiltonian = max_h;
    p.min_sector_gap = min_gap;

    // fit only the numerically integrated tail, never the analytic closure
    p.decay_fit_hi = dx_out * static_cast<double>(k_right);
    p.decay_fit_lo = 0.5 * p.decay_fit_hi;
    p.decay_rate = fit_decay_rate(p, p.decay_fit_lo, p.decay_fit_hi);
    return p;
}

double stationary_residual(const WaveProfile& profile, const MassProfile& mass, double omega) {
    const std::size_t n = profile.size();
    if (n < 5) return 0.0;
    const double dx = profile.dx();
    auto at = [&](const std::vector<double>& f, long j) {
        return (j < 0 || j >= static_cast<long>(n)) ? 0.0 : f[static_cast<std::size_t>(j)];
    };
    long double acc = 0.0L;
    for (long j = 0; j < static_cast<long>(n); ++j) {
        const double du = (at(profile.us, j - 2) - 8.0 * at(profile.us, j - 1) +
                           8.0 * at(profile.us, j + 1) - at(profile.us, j + 2)) /
                          (12.0 * dx);
        const double dv = (at(profile.vs, j - 2) - 8.0 * at(profile.vs, j - 1) +
                           8.0 * at(profile.vs, j + 1) - at(profile.vs, j + 2)) /
                          (12.0 * dx);
        const double b = mass(profile.xs[static_cast<std::size_t>(j)]);
        const double u = at(profile.us, j), v = at(profile.vs, j);
        const double r1 = dv + (b - omega) * u - u * u * u;
        const double r2 = -du - (b + omega) * v - v * v * v;
        acc += static_cast<long double>(r1) * r1 + static_cast<long double>(r2) * r2;
    }
    return static_cast<double>(std::sqrt(acc * static_cast<long double>(dx)));
}

void check_gap_separation(const MassProfile& mass, double omega, double separation) {
    if (mass.is_constant()) return; // constant mass has no gap eigenvalues
    const double binf = mass.beta_inf();
    const double h = 0.02;
    const double L = 40.0;
    const OperatorMatrix op = assemble(mass, h, L);
    const double margin = 10.0 * h;
    for (const auto& pair : gap_eigenvalues(op, -binf + margin, binf - margin))
        if (std::abs(omega - pair.lambda) < separation)
            throw config_error("omega is within 1e-3 of a gap eigenvalue of D + beta sigma3");
}

WaveProfile domain_wall_wave(const MassProfile& mass, double omega, double x_max, double tol,
                             double dx_out) {
    if (mass.kind() != MassKind::DomainWall)
        throw config_error("domain_wall_wave requires a domain-wall mass");
    const double binf = mass.beta_inf();
    if (!(omega > 0.0) || !(omega < binf))
        throw config_error("domain_wall_wave requires omega in (0, beta(inf))");
    if (!(x_max > 0.0) || !(dx_out > 0.0) || !(tol > 0.0))
        throw std::invalid_argument("domain_wall_wave: bad grid or tolerance");
    check_gap_separation(mass, omega);

    const double mu = std::sqrt(binf * binf - omega * omega);
    const double kappa = std::sqrt((binf - omega) / (binf + omega));
    const double ode_tol = 1e-12;

    // seed location: linear regime (amplitude ~ 1e-7), snapped to the output grid
    const long K = static_cast<long>(round_step_count(x_max, dx_out));
    long K0 = std::min(K, static_cast<long>(std::floor(std::log(1e7) / mu / dx_out)));
    K0 = std::max(K0, 2L);
    const double x0 = dx_out * static_cast<double>(K0);
    if (std::exp(-mu * x_max) >= 1e-8)
        throw config_error("x_max too small: the tail cannot fall below 1e-8 of the maximum");

    // amplitude scale from the constant-mass orbit: integrate while the forward
    // direction is still accurate, then continue with the exact exponential
    double seed_scale;
    {
        const PlaneRhs const_rhs{nullptr, binf, omega};
        Vec2 y{std::sqrt(2.0 * (binf - omega)), 0.0};
        const double r_probe = 1e-4 * std::hypot(y[0], y[1]);
        double x = 0.0;
        while (x < x0 && std::hypot(y[0], y[1]) > r_probe) {
            if (!integrate_to(const_rhs, x, y, std::min(x0, x + 0.25), 1e-10))
                throw numerical_error("domain-wall shooting: constant-mass probe diverged");
        }
        seed_scale = std::max(std::hypot(y[0], y[1]) * std::exp(-mu * (x0 - x)), 1e-300);
    }

    const double ep = std::hypot(1.0, kappa);
    const Vec2 e_plus{1.0 / ep, kappa / ep}; // decaying direction as x -> +inf
    const Vec2 e_minus{kappa / ep, 1.0 / ep}; // decaying direction as x -> -inf
    const PlaneRhs rhs{&mass, 0.0, omega};

    // matching defect at x = 0 as a function of the rescaled seed amplitudes
    auto shoot = [&](const Vec2& sigma, Vec2& defect) -> bool {
        Vec2 yr{sigma[0] * seed_scale * e_plus[0], sigma[0] * seed_scale * e_plus[1]};
        Vec2 yl{sigma[1] * seed_scale * e_minus[0], sigma[1] * seed_scale * e_minus[1]};
        double xr = x0, xl = -x0;
        if (!integrate_to(rhs, xr, yr, 0.0, ode_tol)) return false;
        if (!integrate_to(rhs, xl, yl, 0.0, ode_tol)) return false;
        defect = {yl[0] - yr[0], yl[1] - yr[1]};
        return true;
    };

    // The trivial solution sigma = 0 is always a root (omega is off the
    // spectrum), so seed where the amplitude-normalized defect |F|/t is
    // smallest; that functional stays bounded away from zero along the trivial
    // ray and vanishes only at a genuine solution. Both reflection classes
    // (sigma_- = +-sigma_+) are scanned; the localized branch in the gap sits
    // in the odd class of the (u,v)(x) -> (v,u)(-x) map.
    Vec2 best{1.0, 1.0};
    double best_g = std::numeric_limits<double>::infinity();
    for (double sign : {1.0, -1.0}) {
        for (int i = 0; i < 40; ++i) {
            const double t = 0.0625 * std::pow(2.0, 10.0 * static_cast<double>(i) / 39.0);
            Vec2 Ft;
            if (!shoot({t, sign * t}, Ft)) continue;
            const double g = std::hypot(Ft[0], Ft[1]) / t;
            if (g < best_g) {
                best_g = g;
                best = {t, sign * t};
            }
        }
    }
    Vec2 sigma = best;
    Vec2 F{0.0, 0.0};
    if (!shoot(sigma, F)) throw numerical_error("domain-wall shooting: seed trajectory diverged");
    double fnorm = std::hypot(F[0], F[1]);
    int iter = 0;
    for (; iter < 50 && fnorm > tol; ++iter) {
        // central-difference Jacobian in the rescaled amplitudes
        const double d = 1e-6;
        Vec2 fp, fm, gp, gm;
        if (!shoot({sigma[0] + d, sigma[1]}, fp) || !shoot({sigma[0] - d, sigma[1]}, fm) ||
            !shoot({sigma[0], sigma[1] + d}, gp) || !shoot({sigma[0], sigma[1] - d}, gm))
            throw numerical_error("domain-wall shooting: Jacobian probe diverged");
        const double j11 = (fp[0] - fm[0]) / (2 * d), j12 = (gp[0] - gm[0]) / (2 * d);
        const double j21 = (fp[1] - fm[1]) / (2 * d), j22 = (gp[1] - gm[1]) / (2 * d);
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300)
            throw numerical_error("domain-wall shooting: singular Newton system");
        const Vec2 delta{-(j22 * F[0] - j12 * F[1]) / det, -(-j21 * F[0] + j11 * F[1]) / det};

        double t = 1.0;
        Vec2 trial, Ft;
        while (true) {
            trial = {sigma[0] + t * delta[0], sigma[1] + t * delta[1]};
            if (shoot(trial, Ft) && std::hypot(Ft[0], Ft[1]) < fnorm) break;
            t *= 0.5;
            if (t < 1e-8)
                throw numerical_error("domain-wall shooting: Newton line search stalled, defect " +
                                      std::to_string(fnorm));
        }
        sigma = trial;
        F = Ft;
        fnorm = std::hypot(F[0], F[1]);
    }
    if (fnorm > tol)
        throw numerical_error("domain-wall shooting: no convergence in 50 iterations, defect " +
                              std::to_string(fnorm));
    if (std::max(std::abs(sigma[0]), std::abs(sigma[1])) < 1e-2)
        throw numerical_error("domain-wall shooting: Newton collapsed to the zero solution; "
                              "no localized wave found from the default seed");

    // assemble the profile: integrated region on [-x0, x0], exponential closure outside
    WaveProfile p;
    p.omega = omega;
    p.mass_id = mass.id();
    p.matching_defect = fnorm;
    p.xs.resize(2 * K + 1);
    p.us.assign(2 * K + 1, 0.0);
    p.vs.assign(2 * K + 1, 0.0);
    for (long k = -K; k <= K; ++k) p.xs[static_cast<std::size_t>(k + K)] = dx_out * static_cast<double>(k);

    Vec2 yr{sigma[0] * seed_scale * e_plus[0], sigma[0] * seed_scale * e_plus[1]};
    Vec2 yl{sigma[1] * seed_scale * e_minus[0], sigma[1] * seed_scale * e_minus[1]};
    p.us[static_cast<std::size_t>(K + K0)] = yr[0];
    p.vs[static_cast<std::size_t>(K + K0)] = yr[1];
    p.us[static_cast<std::size_t>(K - K0)] = yl[0];
    p.vs[static_cast<std::size_t>(K - K0)] = yl[1];
    sample_half_axis(rhs, x0, -1.0, K0, dx_out, yr, ode_tol, 0.0,
                     [&](long k, const Vec2& y) {
                         p.us[static_cast<std::size_t>(K + K0 - k)] = y[0];
                         p.vs[static_cast<std::size_t>(K + K0 - k)] = y[1];
                     });
    Vec2 center_right{p.us[static_cast<std::size_t>(K)], p.vs[static_cast<std::size_t>(K)]};
    sample_half_axis(rhs, -x0, +1.0, K0, dx_out, yl, ode_tol, 0.0,
                     [&](long k, const Vec2& y) {
                         p.us[static_cast<std::size_t>(K - K0 + k)] = y[0];
                         p.vs[static_cast<std::size_t>(K - K0 + k)] = y[1];
                     });
    // the two halves meet at x = 0 within the Newton tolerance; keep their mean
    p.us[static_cast<std::size_t>(K)] = 0.5 * (center_right[0] + p.us[static_cast<std::size_t>(K)]);
    p.vs[static_cast<std::size_t>(K)] = 0.5 * (center_right[1] + p.vs[static_cast<std::size_t>(K)]);
    for (long k = K0 + 1; k <= K; ++k) {
        const double decay = std::exp(-mu * dx_out * static_cast<double>(k - K0));
        p.us[static_cast<std::size_t>(K + k)] = sigma[0] * seed_scale * e_plus[0] * decay;
        p.vs[static_cast<std::size_t>(K + k)] = sigma[0] * seed_scale * e_plus[1] * decay;
        p.us[static_cast<std::size_t>(K - k)] = sigma[1] * seed_scale * e_minus[0] * decay;
        p.vs[static_cast<std::size_t>(K - k)] = sigma[1] * seed_scale * e_minus[1] * decay;
    }

    p.decay_fit_hi = x0;
    p.decay_fit_lo = 0.5 * x0;
    p.decay_rate = fit_decay_rate(p, p.decay_fit_lo, p.decay_fit_hi);
    return p;
}

} // namespace bwa
