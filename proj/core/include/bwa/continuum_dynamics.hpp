#pragma once

#include "bwa/lattice.hpp"
#include "bwa/mass_profile.hpp"

#include <memory>
#include <vector>

namespace bwa {

// Complex 2-spinor on the uniform periodic grid x_j = -L + j*(2L/N) over [-L, L).
struct ContinuumField {
    double L = 1.0;
    double z = 0.0;
    std::vector<cplx> c1, c2;

    std::size_t N() const { return c1.size(); }
    double dx() const { return 2.0 * L / static_cast<double>(N()); }
    double x(std::size_t j) const { return -L + dx() * static_cast<double>(j); }
};

ContinuumField make_continuum(double L, std::size_t N); // zero field; N >= 8, power of two
void check_valid(const ContinuumField& f);

double l2_norm(const ContinuumField& f);
double linf_norm(const ContinuumField& f);
// max |field| over the outermost cell on each side, relative to the global max
double boundary_ratio(const ContinuumField& f);

ContinuumField sample_continuum(const SpinorFn& f, double L, std::size_t N);

// Exact free flow e^{-i dz xi sigma1} per Fourier mode of the periodic domain.
ContinuumField free_dirac_step(const ContinuumField& f, double dz);

// Exact pointwise flow of i dPsi = beta sigma3 Psi - G(Psi) Psi; the moduli
// |Psi^1|, |Psi^2| are invariants of this sub-flow.
ContinuumField phase_step(const ContinuumField& f, const MassProfile& mass, double dz);

struct ContinuumTrajectory {
    std::vector<ContinuumField> states;
    std::vector<double> zs;
    std::vector<double> l2_norms;
};

// Strang composition phase(dz/2) . free(dz) . phase(dz/2). The solver state and
// transforms run in long double so the composite conserves the L^2 norm far
// below the 1e-12 gate over 1e4 steps; the interface stays double.
struct ContinuumSolverImpl;

class ContinuumSolver {
public:
    ContinuumSolver(const MassProfile& mass, double L, std::size_t N);
    ~ContinuumSolver();
    ContinuumSolver(const ContinuumSolver&) = delete;
    ContinuumSolver& operator=(const ContinuumSolver&) = delete;

    void set_state(const ContinuumField& f);
    ContinuumField state() const;
    double z() const;
    void strang_step(double dz);
    void advance(double z_target, double dz); // equal substeps landing on z_target
    double l2_norm_now() const;

private:
    std::unique_ptr<ContinuumSolverImpl> impl_;
};

// Monitors boundary contamination: throws numerical_error once the boundary
// magnitude exceeds 1e-6 of the field maximum. The datum must decay below
// 1e-10 of its maximum at the boundary.
ContinuumTrajectory evolve_continuum(const ContinuumField& chi, const MassProfile& mass,
                                     double z_end, double dz, const std::vector<double>& snapshots);

} // namespace bwa
