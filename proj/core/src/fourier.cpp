#include "bwa/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bwa {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

void dft(std::vector<cplx>& a, int sign) {
    if (a.empty()) return;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(a.size()),
                                reinterpret_cast<fftw_complex*>(a.data()),
                                reinterpret_cast<fftw_complex*>(a.data()),
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

double LatticeSpectrum::xi(std::size_t k) const {
    const double N = static_cast<double>(size());
    return -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) / N;
}

// u_hat(xi_k) = (2pi)^{-1/2} e^{-i*origin*xi_k} * DFT_k[ (-1)^{origin+j} u_j ]
// with xi_k = -pi + 2*pi*k/N; the (-1)^. factor absorbs the -pi offset.
LatticeSpectrum lattice_fourier(const LatticeField& u) {
    check_valid(u);
    const std::size_t N = u.size();
    LatticeSpectrum s;
    s.h = u.h;
    s.origin = u.origin;
    s.c1 = u.c1;
    s.c2 = u.c2;
    for (std::size_t j = 0; j < N; ++j) {
        if ((u.origin + static_cast<long>(j)) % 2 != 0) {
            s.c1[j] = -s.c1[j];
            s.c2[j] = -s.c2[j];
        }
    }
    dft(s.c1, -1);
    dft(s.c2, -1);
    const double amp = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < N; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(u.origin) *
                             static_cast<double>(k) / static_cast<double>(N);
        const cplx phase = amp * std::polar(1.0, -theta);
        s.c1[k] *= phase;
        s.c2[k] *= phase;
    }
    return s;
}

LatticeField lattice_fourier_inv(const LatticeSpectrum& s) {
    const std::size_t N = s.size();
    if (N == 0 || s.c1.size() != s.c2.size())
        throw std::invalid_argument("spectrum length does not match the target window");
    LatticeField u;
    u.h = s.h;
    u.origin = s.origin;
    u.c1 = s.c1;
    u.c2 = s.c2;
    for (std::size_t k = 0; k < N; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(s.origin) *
                             static_cast<double>(k) / static_cast<double>(N);
        const cplx phase = std::polar(1.0, theta);
        u.c1[k] *= phase;
        u.c2[k] *= phase;
    }
    dft(u.c1, +1);
    dft(u.c2, +1);
    const double amp = std::sqrt(2.0 * std::numbers::pi) / static_cast<double>(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double sgn = ((s.origin + static_cast<long>(j)) % 2 != 0) ? -1.0 : 1.0;
        u.c1[j] *= sgn * amp;
        u.c2[j] *= sgn * amp;
    }
    check_valid(u);
    return u;
}

double spectrum_l2h_sq(const LatticeSpectrum& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += std::norm(s.c1[k]) + std::norm(s.c2[k]);
    const double dxi = 2.0 * std::numbers::pi / static_cast<double>(s.size());
    return s.h * acc * dxi;
}

} // namespace bwa
