#pragma once

#include "bwa/continuum_dynamics.hpp"
#include "bwa/discrete_dynamics.hpp"
#include "bwa/lattice.hpp"
#include "bwa/mass_profile.hpp"

#include <string>
#include <vector>

namespace bwa {

struct FieldError {
    double l2 = 0.0;
    double h1 = 0.0;
};

// L^2 and H^1 errors of p_h psi_h - Psi by trapezoid quadrature on the
// continuum grid, restricted to the lattice window's extent. The continuum
// grid must resolve the lattice (dx <= h) and the domains must overlap.
FieldError compare_fields(const LatticeField& psi_h, const ContinuumField& Psi);

struct LadderRow {
    double h = 0.0;
    double l2 = 0.0;
    double h1 = 0.0;
    double seconds = 0.0;
};

struct ConvergenceReport {
    std::string datum_id;
    std::string mass_id;
    double T = 0.0;
    std::vector<LadderRow> rows; // h strictly decreasing
    double rate = 0.0;           // least-squares slope of log l2 vs log h
    double bihari_c = 0.0;       // calibrated growth constant
    double horizon = 0.0;        // (2 C M^2)^{-1} at the coarsest rung
    double reference_self_error = 0.0;
};

struct StudyOptions {
    double bihari_c = 0.0;    // 0: calibrate on a coarse burn-in
    unsigned threads = 0;     // 0: BWA_THREADS or hardware concurrency
    double ref_dz = 1e-3;
    std::size_t ref_n = 0;    // 0: chosen from the finest h
    double ref_l = 0.0;       // 0: chosen from the datum radius and T
    std::string datum_id = "datum";
};

// The discrete-to-continuum experiment: discretize, evolve each rung to T,
// interpolate, compare against a continuum reference solved at >= 4x the
// finest lattice resolution, and fit the rate.
ConvergenceReport run_study(const SpinorFn& chi, const MassProfile& mass, double T,
                            const std::vector<double>& ladder, const StudyOptions& opts = {});

// Least-squares slope of log(err) vs log(h) over rows with positive error.
double fit_rate(const std::vector<double>& hs, const std::vector<double>& errs);

// Resolved worker count: explicit value, else BWA_THREADS, else hardware.
unsigned resolve_threads(unsigned requested);

} // namespace bwa
