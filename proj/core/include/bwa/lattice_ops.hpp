#pragma once

#include "bwa/lattice.hpp"

namespace bwa {

// Cell-average discretization f_h(x_n) = (1/h) int_{x_n}^{x_{n+1}} f dx,
// each cell integrated with 5-point Gauss-Legendre (exact through degree 9).
LatticeField discretize(const SpinorFn& f, double h, IndexWindow w);
ScalarField discretize_scalar(const std::function<double(double)>& f, double h, IndexWindow w);

// Piecewise linear interpolant p_h u_h: on [x_n, x_{n+1}) equals
// u(x_n) + (d_h u)(x_n) (x - x_n); zero outside the extended window.
class PiecewiseLinear {
public:
    explicit PiecewiseLinear(const LatticeField& u) : u_(u) {}
    SpinorValue operator()(double x) const;
    double support_lo() const { return (u_.origin - 1) * u_.h; }
    double support_hi() const { return (u_.origin + static_cast<long>(u_.size())) * u_.h; }

private:
    LatticeField u_;
};

// Piecewise constant interpolant q_h u_h: u(x_n) on [x_n, x_{n+1}).
class PiecewiseConstant {
public:
    explicit PiecewiseConstant(const LatticeField& u) : u_(u) {}
    SpinorValue operator()(double x) const;

private:
    LatticeField u_;
};

PiecewiseLinear interp_linear(const LatticeField& u);
PiecewiseConstant interp_constant(const LatticeField& u);

// Scalar piecewise-linear interpolant (used for p_h beta_h).
class ScalarPiecewiseLinear {
public:
    explicit ScalarPiecewiseLinear(const ScalarField& b) : b_(b) {}
    double operator()(double x) const;

private:
    ScalarField b_;
};

// Discrete derivatives against the zero exterior; the window grows by one
// site to hold the boundary differences.
LatticeField forward_diff(const LatticeField& u);   // (d_h u)(x_n)  = [u(x_{n+1}) - u(x_n)] / h
LatticeField backward_diff(const LatticeField& u);  // (d*_h u)(x_n) = [u(x_n) - u(x_{n-1})] / h

// Discrete Dirac operator: (D_h u)^1 = -i d_h u^2, (D_h u)^2 = -i d*_h u^1.
LatticeField dirac_discrete(const LatticeField& u);

double l2h_norm(const LatticeField& u);
double l2h_norm(const ScalarField& b);
double h1h_norm(const LatticeField& u);   // sequence form: sqrt(l2h^2 + l2h(d_h u)^2)
double linf_norm(const LatticeField& u);  // sup_n |u(x_n)|, Euclidean spinor modulus
cplx l2h_inner(const LatticeField& u, const LatticeField& v);

// H^1_h norm in the Fourier form h * int (1 + h^-2 |xi|^2) |u_hat|^2 dxi,
// evaluated exactly via closed-form trigonometric moments (no quadrature).
double h1h_norm_fourier(const LatticeField& u);

LatticeField add(const LatticeField& u, const LatticeField& v);
LatticeField sub(const LatticeField& u, const LatticeField& v);

} // namespace bwa
