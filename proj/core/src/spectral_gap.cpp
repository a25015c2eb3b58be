#include "bwa/spectral_gap.hpp"

#include "bwa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bwa {

namespace {

// deterministic start vectors for inverse iteration
double lcg_unit(unsigned long long& s) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>((s >> 11) & ((1ULL << 52) - 1)) / static_cast<double>(1ULL << 52) - 0.5;
}

// Solve (T - lambda I) x = b for symmetric tridiagonal T given by (d, e),
// Gaussian elimination with partial pivoting (one extra superdiagonal fills in).
bool tridiag_shifted_solve(const std::vector<double>& d, const std::vector<double>& e,
                           double lambda, std::vector<double>& x) {
    const std::size_t n = d.size();
    std::vector<double> a(n), b(n, 0.0), c(n, 0.0); // diag, super1, super2 after elimination
    std::vector<double> sub(n, 0.0);                // current subdiagonal entry below row i
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = d[i] - lambda;
        if (i + 1 < n) {
            b[i] = e[i];
            sub[i] = e[i];
        }
    }
    const double tiny = std::numeric_limits<double>::min() * 4.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(a[i])) {
            std::swap(a[i], sub[i]);
            std::swap(b[i], a[i + 1]);
            if (i + 2 < n) std::swap(c[i], b[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        if (std::abs(a[i]) < tiny) a[i] = (a[i] < 0.0 ? -tiny : tiny);
        const double m = sub[i] / a[i];
        a[i + 1] -= m * b[i];
        if (i + 2 < n) b[i + 1] -= m * c[i];
        x[i + 1] -= m * x[i];
        sub[i] = m; // kept only for clarity; not reused
    }
    if (std::abs(a[n - 1]) < tiny) a[n - 1] = (a[n - 1] < 0.0 ? -tiny : tiny);
    for (std::size_t ir = n; ir-- > 0;) {
        double s = x[ir];
        if (ir + 1 < n) s -= b[ir] * x[ir + 1];
        if (ir + 2 < n) s -= c[ir] * x[ir + 2];
        x[ir] = s / a[ir];
        if (!std::isfinite(x[ir])) return false;
    }
    return true;
}

void matvec(const OperatorMatrix& op, const std::vector<double>& v, std::vector<double>& out) {
    const std::size_t n = op.dim();
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = op.diag[i] * v[i];
        if (i > 0) s += op.off[i - 1] * v[i - 1];
        if (i + 1 < n) s += op.off[i] * v[i + 1];
        out[i] = s;
    }
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s > 0.0)
        for (double& x : v) x /= s;
}

} // namespace

OperatorMatrix assemble(const MassProfile& mass, double h, double L) {
    if (!(h > 0.0) || h > 0.1) throw config_error("assemble: requires 0 < h <= 0.1");
    const double ratio = L / h;
    const long M = static_cast<long>(std::llround(ratio));
    if (!(L > 0.0) || std::abs(ratio - static_cast<double>(M)) > 1e-9)
        throw config_error("assemble: L/h must be an integer");
    if (!mass.is_constant()) {
        const double binf = mass.beta_inf();
        if (std::abs(mass(L) - binf) > 1e-6 || std::abs(mass(-L) + binf) > 1e-6)
            throw config_error("assemble: window too small for the wall "
                               "(beta must be within 1e-6 of +-beta(inf) at +-L)");
    }

    OperatorMatrix op;
    op.h = h;
    op.L = L;
    const std::size_t dim = static_cast<std::size_t>(4 * M + 1);
    op.diag.resize(dim);
    op.off.resize(dim - 1);
    op.points.resize(dim);
    op.is_u.resize(dim);
    // rows: u_{-M}, v_{-M+1}, u_{-M+1}, v_{-M+2}, ..., v_M, u_M
    for (std::size_t i = 0; i < dim; ++i) {
        if (i % 2 == 0) { // u at x_n, n = -M + i/2
            const double x = (static_cast<double>(-M) + static_cast<double>(i / 2)) * h;
            op.points[i] = x;
            op.diag[i] = mass(x);
            op.is_u[i] = 1;
        } else { // v at x_{n-1/2}, n = -M + (i+1)/2
            const double x = (static_cast<double>(-M) + static_cast<double>((i + 1) / 2) - 0.5) * h;
            op.points[i] = x;
            op.diag[i] = -mass(x);
            op.is_u[i] = 0;
        }
    }
    for (std::size_t i = 0; i + 1 < dim; ++i) op.off[i] = (i % 2 == 0) ? 1.0 / h : -1.0 / h;
    return op;
}

int sturm_count(const OperatorMatrix& op, double lambda) {
    const std::size_t n = op.dim();
    double offmax = 0.0;
    for (double e : op.off) offmax = std::max(offmax, std::abs(e));
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, offmax * offmax);
    int count = 0;
    double q = op.diag[0] - lambda;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(q) < pivmin) q = -pivmin;
        q = (op.diag[i] - lambda) - op.off[i - 1] * op.off[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<GapEigenpair> gap_eigenvalues(const OperatorMatrix& op, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("gap_eigenvalues: empty interval");
    const int k_lo = sturm_count(op, lo);
    const int k_hi = sturm_count(op, hi);

    double scale = 0.0;
    for (double d : op.diag) scale = std::max(scale, std::abs(d));
    for (double e : op.off) scale = std::max(scale, std::abs(e));
    const double tol_bisect = 1e-14 * std::max(scale, 1.0);

    std::vector<GapEigenpair> out;
    for (int j = k_lo; j < k_hi; ++j) {
        // smallest lambda with sturm_count > j
        double a = lo, b = hi;
        while (b - a > tol_bisect) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(op, mid) > j)
                b = mid;
            else
                a = mid;
        }
        GapEigenpair pair;
        pair.lambda = 0.5 * (a + b);

        // inverse iteration with a deterministic start
        const std::size_t n = op.dim();
        std::vector<double> v(n);
        unsigned long long seed = 0x9e3779b97f4a7c15ULL + static_cast<unsigned long long>(j);
        for (double& x : v) x = lcg_unit(seed);
        normalize(v);
        bool ok = false;
        double shift = pair.lambda;
        for (int sweep = 0; sweep < 8 && !ok; ++sweep) {
            std::vector<double> w = v;
            if (tridiag_shifted_solve(op.diag, op.off, shift, w)) {
                normalize(w);
                // one refinement pass stabilizes the residual at the eps floor
                std::vector<double> w2 = w;
                if (tridiag_shifted_solve(op.diag, op.off, shift, w2)) {
                    normalize(w2);
                    w = w2;
                }
                // orthogonalize within a cluster of nearby eigenvalues
                for (const auto& prev : out) {
                    if (std::abs(prev.lambda - pair.lambda) < 1e-8 * std::max(scale, 1.0)) {
                        double dot = 0.0;
                        for (std::size_t i = 0; i < n; ++i) dot += prev.vec[i] * w[i];
                        for (std::size_t i = 0; i < n; ++i) w[i] -= dot * prev.vec[i];
                        normalize(w);
                    }
                }
                std::vector<double> aw;
                matvec(op, w, aw);
                double rq = 0.0;
                for (std::size_t i = 0; i < n; ++i) rq += w[i] * aw[i];
                double res = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = aw[i] - rq * w[i];
                    res += r * r;
                }
                pair.lambda = rq;
                pair.residual = std::sqrt(res);
                pair.vec = std::move(w);
                ok = pair.residual <= 1e-10;
                if (!ok) {
                    v = pair.vec;
                    shift = rq + (sweep + 1) * 1e-13 * scale; // nudge off an exact-singular shift
                }
            } else {
                shift += (sweep + 1) * 1e-12 * scale;
            }
        }
        if (!ok && pair.vec.empty())
            throw numerical_error("inverse iteration failed to produce an eigenvector");
        out.push_back(std::move(pair)); // non-converged residuals are reported as-is
    }
    return out;
}

double rayleigh_quotient(const OperatorMatrix& op, const std::vector<double>& psi) {
    if (psi.size() != op.dim()) throw std::invalid_argument("rayleigh_quotient: dimension mismatch");
    std::vector<double> ap;
    matvec(op, psi, ap);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        num += psi[i] * ap[i];
        den += psi[i] * psi[i];
    }
    if (den == 0.0) throw std::invalid_argument("rayleigh_quotient: zero vector");
    return num / den;
}

double eigenvector_decay_rate(const OperatorMatrix& op, const std::vector<double>& vec,
                              double lo, double hi) {
    if (vec.size() != op.dim()) throw std::invalid_argument("decay fit: dimension mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        if (!op.is_u[i]) continue;
        const double x = op.points[i];
        if (x < lo || x > hi) continue;
        const double a = std::abs(vec[i]);
        if (a <= 0.0) continue;
        const double ly = std::log(a);
        sx += x;
        sy += ly;
        sxx += x * x;
        sxy += x * ly;
        ++n;
    }
    if (n < 3) throw numerical_error("decay fit window contains fewer than 3 usable samples");
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return -(static_cast<double>(n) * sxy - sx * sy) / denom;
}

} // namespace bwa
