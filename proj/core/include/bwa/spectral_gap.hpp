#pragma once

#include "bwa/mass_profile.hpp"

#include <vector>

namespace bwa {

// Finite section of D_h + beta sigma3 in the real (u, iv) representation.
// The (d_h, d*_h) pair acts as a centered difference on the staggered grid
// (u at x_n, v at x_{n-1/2}); the mass is sampled at each component's own
// point. Ordered u_{-M}, v_{-M+1}, u_{-M+1}, ..., v_M, u_M the matrix is real
// symmetric tridiagonal of odd dimension 4M+1, and for an odd mass it
// anti-commutes with the (u,v)-swapping mirror: exactly one eigenvalue is
// pinned at zero whenever a gap mode exists.
struct OperatorMatrix {
    double h = 0.0;
    double L = 0.0;
    std::vector<double> diag;   // alternating +beta(u-point), -beta(v-point)
    std::vector<double> off;    // alternating +1/h, -1/h
    std::vector<double> points; // physical coordinate per row
    std::vector<char> is_u;     // 1 for u rows, 0 for v rows

    std::size_t dim() const { return diag.size(); }
};

// Requires L/h integer, h <= 0.1, and |beta(+-L) -+ beta(inf)| <= 1e-6 for walls.
OperatorMatrix assemble(const MassProfile& mass, double h, double L);

// Number of eigenvalues strictly below lambda (Sturm sequence count).
int sturm_count(const OperatorMatrix& op, double lambda);

struct GapEigenpair {
    double lambda = 0.0;
    std::vector<double> vec; // normalized, ordered as the matrix rows
    double residual = 0.0;   // ||A v - lambda v||_2
};

// All eigenvalues in (lo, hi) by inertia bisection followed by inverse
// iteration; pairs closer than 1e-8 are re-orthogonalized as a cluster.
std::vector<GapEigenpair> gap_eigenvalues(const OperatorMatrix& op, double lo, double hi);

// Quadratic form <A psi, psi> / <psi, psi> for a test vector.
double rayleigh_quotient(const OperatorMatrix& op, const std::vector<double>& psi);

// Decay rate of an eigenvector tail via log-linear fit of the u-component
// magnitudes over |x| in [lo, hi] on the positive side.
double eigenvector_decay_rate(const OperatorMatrix& op, const std::vector<double>& vec,
                              double lo, double hi);

} // namespace bwa
