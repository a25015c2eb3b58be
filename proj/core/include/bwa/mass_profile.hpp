#pragma once

#include "bwa/lattice.hpp"

#include <string>
#include <vector>

namespace bwa {

enum class MassKind { Constant, DomainWall, Sign };

// Constant mass or odd domain-wall mass with asymptote beta(inf).
// The sign profile is a limiting reference admitted by the spectral module
// only; it is rejected by the dynamics solvers.
class MassProfile {
public:
    static MassProfile constant(double beta);
    static MassProfile tanh_wall(double beta_inf, double length_scale);
    static MassProfile sign_wall(double beta_inf);

    double operator()(double x) const;
    double derivative(double x) const;

    MassKind kind() const { return kind_; }
    bool is_constant() const { return kind_ == MassKind::Constant; }
    bool usable_in_dynamics() const { return kind_ != MassKind::Sign; }
    // beta for Constant, beta(inf) for walls
    double beta_inf() const { return beta_; }
    double length_scale() const { return scale_; }
    std::string id() const;

private:
    MassProfile(MassKind k, double beta, double scale) : kind_(k), beta_(beta), scale_(scale) {}
    MassKind kind_;
    double beta_;
    double scale_;
};

struct ValidationItem {
    std::string property;
    bool pass = false;
    double defect = 0.0;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass() const;
    const ValidationItem& find(const std::string& property) const;
};

// Checks the domain-wall properties (oddness, monotonicity, bounded slope /
// C^1 smoothness, tail integrability) on a symmetric sample grid and reports
// the measured defect of each. Constant profiles only need beta > 0.
ValidationReport validate(const MassProfile& profile, const std::vector<double>& grid);

// Default validation grid: [-50, 50] with 10^4 points.
std::vector<double> default_validation_grid();

// beta_h by cell averages, same quadrature as lattice discretize.
ScalarField discretize_mass(const MassProfile& profile, double h, IndexWindow w);

} // namespace bwa
