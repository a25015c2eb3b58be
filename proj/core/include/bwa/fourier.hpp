#pragma once

#include "bwa/lattice.hpp"

namespace bwa {

// Fourier coefficients u_hat(xi_k) at xi_k = -pi + 2*pi*k/N, k = 0..N-1,
// with the convention u_hat(xi) = (2*pi)^{-1/2} sum_n u(x_n) e^{-i n xi}.
struct LatticeSpectrum {
    double h = 1.0;
    long origin = 0;  // window the coefficients refer to; inversion restores it
    std::vector<cplx> c1, c2;

    std::size_t size() const { return c1.size(); }
    double xi(std::size_t k) const;
};

LatticeSpectrum lattice_fourier(const LatticeField& u);
LatticeField lattice_fourier_inv(const LatticeSpectrum& s);

// h * sum_k |u_hat(xi_k)|^2 * dxi  (rectangle rule, exact for N-site fields);
// equals l2h_norm(u)^2 by Parseval.
double spectrum_l2h_sq(const LatticeSpectrum& s);

// In-place complex DFT, sign -1 forward (e^{-2pi i jk/N}), +1 backward,
// unnormalized. Arbitrary length, FFTW-backed.
void dft(std::vector<cplx>& a, int sign);

} // namespace bwa
