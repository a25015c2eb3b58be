#include "bwa/lattice_ops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bwa {

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double gl_x[5] = {
    -0.9061798459386640, -0.5384693101056831, 0.0,
    0.5384693101056831, 0.9061798459386640};
constexpr double gl_w[5] = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

cplx cell_average(const std::function<cplx(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc{0.0, 0.0};
    for (int q = 0; q < 5; ++q) acc += gl_w[q] * f(mid + half * gl_x[q]);
    return acc * half / (b - a);
}

// Cell index for x in [x_n, x_{n+1}); queries that land a rounding error below
// a node are snapped up so that x = n*h always selects cell n.
long cell_of(double x, double h) {
    const double t = x / h;
    double n = std::floor(t);
    if (t - n > 1.0 - 1e-9) n += 1.0;
    return static_cast<long>(n);
}

} // namespace

LatticeField discretize(const SpinorFn& f, double h, IndexWindow w) {
    if (!(h > 0.0)) throw std::invalid_argument("discretize: h must be positive");
    if (w.last < w.first) throw std::invalid_argument("discretize: empty window");
    LatticeField u;
    u.h = h;
    u.origin = w.first;
    u.c1.resize(w.size());
    u.c2.resize(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double a = (w.first + static_cast<long>(j)) * h;
        u.c1[j] = cell_average([&](double x) { return f(x).c1; }, a, a + h);
        u.c2[j] = cell_average([&](double x) { return f(x).c2; }, a, a + h);
    }
    check_valid(u); // rejects non-finite samples of f
    return u;
}

ScalarField discretize_scalar(const std::function<double(double)>& f, double h, IndexWindow w) {
    if (!(h > 0.0)) throw std::invalid_argument("discretize: h must be positive");
    if (w.last < w.first) throw std::invalid_argument("discretize: empty window");
    ScalarField b;
    b.h = h;
    b.origin = w.first;
    b.v.resize(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double a = (w.first + static_cast<long>(j)) * h;
        b.v[j] = cell_average([&](double x) { return cplx{f(x), 0.0}; }, a, a + h).real();
    }
    check_valid(b);
    return b;
}

SpinorValue PiecewiseLinear::operator()(double x) const {
    const long n = cell_of(x, u_.h);
    const long j = n - u_.origin;
    const long N = static_cast<long>(u_.size());
    if (j < -1 || j >= N) return {};
    auto site = [&](long k) -> SpinorValue {
        if (k < 0 || k >= N) return {};
        return {u_.c1[static_cast<std::size_t>(k)], u_.c2[static_cast<std::size_t>(k)]};
    };
    const SpinorValue a = site(j), b = site(j + 1);
    const double s = (x - static_cast<double>(n) * u_.h) / u_.h;
    return {a.c1 + (b.c1 - a.c1) * s, a.c2 + (b.c2 - a.c2) * s};
}

SpinorValue PiecewiseConstant::operator()(double x) const {
    const long n = cell_of(x, u_.h);
    const long j = n - u_.origin;
    if (j < 0 || j >= static_cast<long>(u_.size())) return {};
    return {u_.c1[static_cast<std::size_t>(j)], u_.c2[static_cast<std::size_t>(j)]};
}

double ScalarPiecewiseLinear::operator()(double x) const {
    const long n = cell_of(x, b_.h);
    const long j = n - b_.origin;
    const long N = static_cast<long>(b_.size());
    if (j < -1 || j >= N) return 0.0;
    auto site = [&](long k) { return (k < 0 || k >= N) ? 0.0 : b_.v[static_cast<std::size_t>(k)]; };
    const double s = (x - static_cast<double>(n) * b_.h) / b_.h;
    return site(j) + (site(j + 1) - site(j)) * s;
}

PiecewiseLinear interp_linear(const LatticeField& u) {
    check_valid(u);
    return PiecewiseLinear(u);
}

PiecewiseConstant interp_constant(const LatticeField& u) {
    check_valid(u);
    return PiecewiseConstant(u);
}

LatticeField forward_diff(const LatticeField& u) {
    check_valid(u);
    const long N = static_cast<long>(u.size());
    LatticeField d;
    d.h = u.h;
    d.origin = u.origin - 1; // difference against the zero exterior on the left
    d.c1.resize(u.size() + 1);
    d.c2.resize(u.size() + 1);
    auto at = [&](const std::vector<cplx>& c, long k) {
        return (k < 0 || k >= N) ? cplx{0.0, 0.0} : c[static_cast<std::size_t>(k)];
    };
    for (long j = 0; j <= N; ++j) {
        d.c1[static_cast<std::size_t>(j)] = (at(u.c1, j) - at(u.c1, j - 1)) / u.h;
        d.c2[static_cast<std::size_t>(j)] = (at(u.c2, j) - at(u.c2, j - 1)) / u.h;
    }
    return d;
}

LatticeField backward_diff(const LatticeField& u) {
    check_valid(u);
    const long N = static_cast<long>(u.size());
    LatticeField d;
    d.h = u.h;
    d.origin = u.origin; // grows one site to the right
    d.c1.resize(u.size() + 1);
    d.c2.resize(u.size() + 1);
    auto at = [&](const std::vector<cplx>& c, long k) {
        return (k < 0 || k >= N) ? cplx{0.0, 0.0} : c[static_cast<std::size_t>(k)];
    };
    for (long j = 0; j <= N; ++j) {
        d.c1[static_cast<std::size_t>(j)] = (at(u.c1, j) - at(u.c1, j - 1)) / u.h;
        d.c2[static_cast<std::size_t>(j)] = (at(u.c2, j) - at(u.c2, j - 1)) / u.h;
    }
    return d;
}

LatticeField dirac_discrete(const LatticeField& u) {
    check_valid(u);
    const long N = static_cast<long>(u.size());
    LatticeField r;
    r.h = u.h;
    r.origin = u.origin - 1; // union of the forward/backward supports
    r.c1.assign(u.size() + 2, cplx{0.0, 0.0});
    r.c2.assign(u.size() + 2, cplx{0.0, 0.0});
    auto at = [&](const std::vector<cplx>& c, long k) {
        return (k < 0 || k >= N) ? cplx{0.0, 0.0} : c[static_cast<std::size_t>(k)];
    };
    const cplx mi{0.0, -1.0};
    for (long j = -1; j <= N; ++j) {
        const std::size_t out = static_cast<std::size_t>(j + 1);
        r.c1[out] = mi * (at(u.c2, j + 1) - at(u.c2, j)) / u.h; // -i d_h u^2
        r.c2[out] = mi * (at(u.c1, j) - at(u.c1, j - 1)) / u.h; // -i d*_h u^1
    }
    return r;
}

double l2h_norm(const LatticeField& u) {
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += std::norm(u.c1[j]) + std::norm(u.c2[j]);
    return std::sqrt(u.h * s);
}

double l2h_norm(const ScalarField& b) {
    double s = 0.0;
    for (double x : b.v) s += x * x;
    return std::sqrt(b.h * s);
}

double h1h_norm(const LatticeField& u) {
    const double a = l2h_norm(u);
    const double b = l2h_norm(forward_diff(u));
    return std::sqrt(a * a + b * b);
}

double linf_norm(const LatticeField& u) {
    double m = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        m = std::max(m, std::sqrt(std::norm(u.c1[j]) + std::norm(u.c2[j])));
    return m;
}

cplx l2h_inner(const LatticeField& u, const LatticeField& v) {
    if (u.h != v.h) throw std::invalid_argument("inner product: mismatched spacings");
    cplx s{0.0, 0.0};
    const long lo = std::max(u.window().first, v.window().first);
    const long hi = std::min(u.window().last, v.window().last);
    for (long n = lo; n <= hi; ++n) {
        const std::size_t ju = static_cast<std::size_t>(n - u.origin);
        const std::size_t jv = static_cast<std::size_t>(n - v.origin);
        s += std::conj(u.c1[ju]) * v.c1[jv] + std::conj(u.c2[ju]) * v.c2[jv];
    }
    return u.h * s;
}

double h1h_norm_fourier(const LatticeField& u) {
    check_valid(u);
    // h*int |u_hat|^2 = h*sum |u|^2 exactly (Parseval); the |xi|^2 weight uses
    // int_{-pi}^{pi} xi^2 e^{-ik xi} dxi = 2 pi^3/3 (k=0), 4 pi (-1)^k / k^2 (k!=0).
    const std::size_t N = u.size();
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < N; ++j) sum_sq += std::norm(u.c1[j]) + std::norm(u.c2[j]);

    const double pi = std::numbers::pi;
    double weighted = (pi * pi / 3.0) * sum_sq;
    for (std::size_t k = 1; k < N; ++k) {
        cplx ck{0.0, 0.0};
        for (std::size_t j = 0; j + k < N; ++j)
            ck += u.c1[j + k] * std::conj(u.c1[j]) + u.c2[j + k] * std::conj(u.c2[j]);
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        weighted += 4.0 * sgn / (static_cast<double>(k) * static_cast<double>(k)) * ck.real();
    }
    return std::sqrt(u.h * sum_sq + weighted / u.h);
}

namespace {

LatticeField combine(const LatticeField& u, const LatticeField& v, double sv) {
    if (u.h != v.h) throw std::invalid_argument("field combine: mismatched spacings");
    IndexWindow w{std::min(u.window().first, v.window().first),
                  std::max(u.window().last, v.window().last)};
    LatticeField r = zero_field(u.h, w);
    for (std::size_t j = 0; j < u.size(); ++j) {
        const std::size_t out = static_cast<std::size_t>(u.index(j) - w.first);
        r.c1[out] += u.c1[j];
        r.c2[out] += u.c2[j];
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
        const std::size_t out = static_cast<std::size_t>(v.index(j) - w.first);
        r.c1[out] += sv * v.c1[j];
        r.c2[out] += sv * v.c2[j];
    }
    return r;
}

} // namespace

LatticeField add(const LatticeField& u, const LatticeField& v) { return combine(u, v, 1.0); }
LatticeField sub(const LatticeField& u, const LatticeField& v) { return combine(u, v, -1.0); }

} // namespace bwa
