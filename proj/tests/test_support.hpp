#pragma once

#include "bwa/lattice.hpp"
#include "bwa/lattice_ops.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace bwa::test {

// Adaptive Simpson quadrature, the independent oracle for cell averages.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 30) {
    const auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    };
    std::function<double(double, double, double, int)> rec = [&](double lo, double hi, double whole,
                                                                 int d) {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid), right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right;
        return rec(lo, mid, left, d - 1) + rec(mid, hi, right, d - 1);
    };
    return rec(a, b, simpson(a, b), depth);
}

inline LatticeField random_field(std::mt19937& rng, double h, long origin, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    LatticeField u;
    u.h = h;
    u.origin = origin;
    u.c1.resize(n);
    u.c2.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        u.c1[j] = cplx{dist(rng), dist(rng)};
        u.c2[j] = cplx{dist(rng), dist(rng)};
    }
    return u;
}

inline SpinorFn gaussian_spinor() {
    return [](double x) { return SpinorValue{cplx{std::exp(-x * x), 0.0}, cplx{0.0, 0.0}}; };
}

// L^2 norm of p_h u - f over the real line by composite Simpson on a fine grid.
inline double interp_error_l2(const LatticeField& u, const std::function<cplx(double)>& f1,
                              const std::function<cplx(double)>& f2, double lo, double hi,
                              std::size_t cells = 20000) {
    const PiecewiseLinear p = interp_linear(u);
    const double dx = (hi - lo) / static_cast<double>(cells);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = lo + dx * static_cast<double>(i);
        for (const auto& [x, w] : {std::pair{a, 1.0}, {a + 0.5 * dx, 4.0}, {a + dx, 1.0}}) {
            const SpinorValue pv = p(x);
            acc += w * (std::norm(pv.c1 - f1(x)) + std::norm(pv.c2 - f2(x)));
        }
    }
    return static_cast<double>(std::sqrt(acc * dx / 6.0L));
}

} // namespace bwa::test
