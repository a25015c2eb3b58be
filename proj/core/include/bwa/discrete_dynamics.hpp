#pragma once

#include "bwa/lattice.hpp"
#include "bwa/mass_profile.hpp"

#include <optional>
#include <vector>

namespace bwa {

// Waveguide amplitudes a_n on a finite index window; coupling k = 1/h.
struct AmplitudeState {
    double h = 1.0;
    long origin = 0;
    std::vector<cplx> a;
    double z = 0.0;

    std::size_t size() const { return a.size(); }
    long index(std::size_t j) const { return origin + static_cast<long>(j); }
};

struct NormRecord {
    double z = 0.0;
    double l2h = 0.0;
    double h1h = 0.0;
    double linf = 0.0;
};

struct DiscreteTrajectory {
    std::vector<LatticeField> states; // snapshots, z strictly increasing
    std::vector<double> zs;
    std::vector<NormRecord> norms;
};

struct AmplitudeTrajectory {
    std::vector<AmplitudeState> states;
    std::vector<double> zs;
};

// Integrator step bound: dz = min(0.1*h, 0.01) keeps the stiff 1/h coupling
// inside the RK4 stability region with margin.
double default_dz(double h);

// RK4 evolution of i a' = -k[a_{n+1} - a_{n-1}] + (-1)^n beta a_n - |a_n|^2 a_n,
// k = 1/h, gamma = 1, zero exterior. Aborts with numerical_error if the sup
// norm exceeds 1e6.
AmplitudeTrajectory evolve_amplitudes(const AmplitudeState& a0, double beta, double z_end,
                                      double dz, const std::vector<double>& snapshots);

// Staggered substitution psi^1(x_n) = (-1)^n a_{2n}, psi^2(x_n) = i(-1)^n a_{2n-1}.
// The amplitude window must cover exactly the pairs {2n-1, 2n} of the spinor window.
LatticeField amplitudes_to_spinor(const AmplitudeState& a);
AmplitudeState spinor_to_amplitudes(const LatticeField& psi);

// One RK4 step of i psi' = D_h psi + beta sigma3 psi - G(psi) psi.
LatticeField step_discrete_nld(const LatticeField& psi, const ScalarField& beta_h, double dz);
LatticeField step_discrete_nld(const LatticeField& psi, double beta, double dz);

DiscreteTrajectory evolve_discrete(const LatticeField& psi0, const MassProfile& mass,
                                   double z_end, double dz, const std::vector<double>& snapshots);

// A-priori H^1_h bound: T_max = (2 C M^2)^{-1}, A(T) = (M^-2 - 2CT)^{-1/2}.
struct BihariBound {
    double datum_norm = 0.0;   // M
    double growth_const = 0.0; // C
    double t_max = 0.0;
    double eval(double t) const; // throws numerical_error if t >= t_max
};

BihariBound bihari_horizon(double M, double C);

// Smallest C with ||psi(z)|| <= ||psi(0)|| + C*int_0^z ||psi||^3 along the
// recorded snapshots (trapezoid); clamped below at 1e-6.
double calibrate_bihari_constant(const DiscreteTrajectory& burnin);

// Indices of snapshots whose H^1_h norm exceeds the calibrated A(z); reported,
// never asserted.
std::vector<std::size_t> bihari_violations(const DiscreteTrajectory& traj, const BihariBound& bound);

} // namespace bwa
