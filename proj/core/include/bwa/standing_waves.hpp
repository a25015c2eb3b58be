#pragma once

#include "bwa/mass_profile.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bwa {

// Point of the real phase-plane system; x plays the role of time.
struct PhaseState {
    double u = 0.0;
    double v = 0.0;
    double x = 0.0;
};

// H = (u^4 + v^4)/4 + (beta/2)(v^2 - u^2) + (omega/2)(u^2 + v^2); requires
// beta > 0 and omega in (0, beta).
double hamiltonian(double u, double v, double beta, double omega);

// u' = -(omega + beta) v - v^3,  v' = (omega - beta) u + u^3.
std::pair<double, double> vector_field(const PhaseState& s, double beta, double omega);

// Localized standing-wave profile Phi = (u, i v) on a symmetric uniform grid.
struct WaveProfile {
    std::vector<double> xs, us, vs;
    double omega = 0.0;
    std::string mass_id;

    double max_abs_hamiltonian = 0.0; // constant mass: max |H| along the orbit
    double matching_defect = 0.0;     // domain wall: final Newton mismatch at x = 0
    double decay_rate = 0.0;          // log-linear tail fit, numerically integrated region
    double decay_fit_lo = 0.0, decay_fit_hi = 0.0;
    double min_sector_gap = 0.0;      // min (u^2 - v^2), constant mass only

    std::size_t size() const { return xs.size(); }
    double dx() const { return xs.size() > 1 ? xs[1] - xs[0] : 0.0; }
    double max_modulus() const;
};

// Homoclinic orbit for constant mass from the zero-energy initial point
// (u, v)(0) = (sqrt(2(beta - omega)), 0), integrated both ways with an
// adaptive Dormand-Prince 5(4) pair at tolerance `ode_tol` and sampled on the
// uniform output grid. Integration stops once |(u,v)| < tail_tol and the rest
// of the grid is zero-filled. Throws numerical_error if the orbit fails to
// decay below tail_tol by x_max.
WaveProfile homoclinic_orbit(double beta, double omega, double x_max, double tail_tol,
                             double dx_out = 1e-3, double ode_tol = 1e-10);

// Discrete L^2 norm of (D + beta sigma3 - omega)Phi - G(Phi)Phi with
// fourth-order central differences; the universal certificate for both solvers.
double stationary_residual(const WaveProfile& profile, const MassProfile& mass, double omega);

// Two-sided shooting for a domain-wall mass: seed on the decaying asymptotic
// eigendirections at +-x0, integrate inward, 2d Newton on the matching defect
// at x = 0. omega must lie in (0, beta(inf)) away from every gap eigenvalue
// (checked against the spectral module by the caller or check_gap_separation).
WaveProfile domain_wall_wave(const MassProfile& mass, double omega, double x_max, double tol,
                             double dx_out = 1e-3);

// Throws config_error if omega is within `separation` of a gap eigenvalue of
// D + beta sigma3 (finite-section computation at the given resolution).
void check_gap_separation(const MassProfile& mass, double omega, double separation = 1e-3);

// Least-squares slope of log |Phi| on [lo, hi]; returns the decay rate (-slope).
double fit_decay_rate(const WaveProfile& profile, double lo, double hi);

} // namespace bwa
