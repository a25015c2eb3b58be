#include "bwa/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace bwa {

namespace {

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

LatticeField make_field(double h, long origin, std::vector<cplx> c1, std::vector<cplx> c2) {
    LatticeField u;
    u.h = h;
    u.origin = origin;
    u.c1 = std::move(c1);
    u.c2 = std::move(c2);
    check_valid(u);
    return u;
}

LatticeField zero_field(double h, IndexWindow w) {
    if (w.last < w.first) throw std::invalid_argument("lattice window is empty");
    LatticeField u;
    u.h = h;
    u.origin = w.first;
    u.c1.assign(w.size(), cplx{0.0, 0.0});
    u.c2.assign(w.size(), cplx{0.0, 0.0});
    check_valid(u);
    return u;
}

void check_valid(const LatticeField& u) {
    if (!(u.h > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    if (u.c1.empty()) throw std::invalid_argument("lattice field has no stored sites");
    if (u.c1.size() != u.c2.size())
        throw std::invalid_argument("spinor components have mismatched lengths");
    for (std::size_t j = 0; j < u.size(); ++j)
        if (!finite(u.c1[j]) || !finite(u.c2[j]))
            throw std::invalid_argument("lattice field contains non-finite samples");
}

void check_valid(const ScalarField& b) {
    if (!(b.h > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    if (b.v.empty()) throw std::invalid_argument("scalar field has no stored sites");
    for (double x : b.v)
        if (!std::isfinite(x)) throw std::invalid_argument("scalar field contains non-finite samples");
}

} // namespace bwa
