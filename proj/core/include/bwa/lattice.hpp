#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace bwa {

using cplx = std::complex<double>;

// Value of a C^2-spinor at one point.
struct SpinorValue {
    cplx c1{0.0, 0.0};
    cplx c2{0.0, 0.0};
};

using SpinorFn = std::function<SpinorValue(double)>;

// Inclusive integer index range [first, last] on the lattice hZ.
struct IndexWindow {
    long first = 0;
    long last = 0;
    std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
};

// Complex 2-spinor samples on hZ restricted to a finite window.
// Sites outside the stored window are exactly zero (compact support).
struct LatticeField {
    double h = 1.0;            // grid spacing, > 0
    long origin = 0;           // integer index of the leftmost stored site
    std::vector<cplx> c1, c2;  // spinor components at x_n = n*h

    std::size_t size() const { return c1.size(); }
    long index(std::size_t j) const { return origin + static_cast<long>(j); }
    double x(std::size_t j) const { return static_cast<double>(index(j)) * h; }
    IndexWindow window() const { return {origin, origin + static_cast<long>(size()) - 1}; }
};

// Real scalar samples on hZ (mass discretizations and similar).
struct ScalarField {
    double h = 1.0;
    long origin = 0;
    std::vector<double> v;

    std::size_t size() const { return v.size(); }
    double x(std::size_t j) const { return static_cast<double>(origin + static_cast<long>(j)) * h; }
    IndexWindow window() const { return {origin, origin + static_cast<long>(size()) - 1}; }
};

LatticeField make_field(double h, long origin, std::vector<cplx> c1, std::vector<cplx> c2);
LatticeField zero_field(double h, IndexWindow w);

// Throws std::invalid_argument on h <= 0, empty values, mismatched
// component lengths, or non-finite entries.
void check_valid(const LatticeField& u);
void check_valid(const ScalarField& b);

} // namespace bwa
