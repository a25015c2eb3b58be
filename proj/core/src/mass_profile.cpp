#include "bwa/mass_profile.hpp"

#include "bwa/lattice_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bwa {

MassProfile MassProfile::constant(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("constant mass requires beta > 0");
    return MassProfile(MassKind::Constant, beta, 0.0);
}

MassProfile MassProfile::tanh_wall(double beta_inf, double length_scale) {
    if (!(beta_inf > 0.0)) throw std::invalid_argument("domain wall requires beta(inf) > 0");
    if (!(length_scale > 0.0)) throw std::invalid_argument("domain wall requires length scale > 0");
    return MassProfile(MassKind::DomainWall, beta_inf, length_scale);
}

MassProfile MassProfile::sign_wall(double beta_inf) {
    if (!(beta_inf > 0.0)) throw std::invalid_argument("sign wall requires beta(inf) > 0");
    return MassProfile(MassKind::Sign, beta_inf, 0.0);
}

double MassProfile::operator()(double x) const {
    switch (kind_) {
        case MassKind::Constant: return beta_;
        case MassKind::DomainWall: return beta_ * std::tanh(x / scale_);
        case MassKind::Sign: return x > 0.0 ? beta_ : (x < 0.0 ? -beta_ : 0.0);
    }
    return 0.0;
}

double MassProfile::derivative(double x) const {
    switch (kind_) {
        case MassKind::Constant: return 0.0;
        case MassKind::DomainWall: {
            const double c = std::cosh(x / scale_);
            return beta_ / (scale_ * c * c);
        }
        case MassKind::Sign: return 0.0; // distributional at 0; flat elsewhere
    }
    return 0.0;
}

std::string MassProfile::id() const {
    std::ostringstream os;
    switch (kind_) {
        case MassKind::Constant: os << "constant(beta=" << beta_ << ")"; break;
        case MassKind::DomainWall:
            os << "tanh_wall(beta_inf=" << beta_ << ",ell=" << scale_ << ")";
            break;
        case MassKind::Sign: os << "sign_wall(beta_inf=" << beta_ << ")"; break;
    }
    return os.str();
}

bool ValidationReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.pass; });
}

const ValidationItem& ValidationReport::find(const std::string& property) const {
    for (const auto& i : items)
        if (i.property == property) return i;
    throw std::invalid_argument("no validation item named " + property);
}

std::vector<double> default_validation_grid() {
    const std::size_t n = 10000;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = -50.0 + 100.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

ValidationReport validate(const MassProfile& profile, const std::vector<double>& grid) {
    ValidationReport rep;
    if (profile.is_constant()) {
        rep.items.push_back({"positive", profile.beta_inf() > 0.0, 0.0});
        return rep;
    }
    if (grid.size() < 3) throw std::invalid_argument("validation grid too small");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1])) throw std::invalid_argument("validation grid must increase");
    const double lo = grid.front(), hi = grid.back();
    if (std::abs(lo + hi) > 1e-9 * std::max(1.0, std::abs(hi)))
        throw std::invalid_argument("validation grid must be symmetric about 0");

    const double binf = profile.beta_inf();

    // odd: beta(-x) = -beta(x)
    double odd_defect = 0.0;
    for (double x : grid) odd_defect = std::max(odd_defect, std::abs(profile(x) + profile(-x)));
    rep.items.push_back({"odd", odd_defect <= 1e-12 * binf, odd_defect});

    // nondecreasing on the grid
    double drop = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        drop = std::max(drop, profile(grid[i]) - profile(grid[i + 1]));
    rep.items.push_back({"nondecreasing", drop <= 0.0, std::max(drop, 0.0)});

    // bounded derivative, measured as the largest difference quotient
    double max_slope = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double dx = grid[i + 1] - grid[i];
        max_slope = std::max(max_slope, std::abs(profile(grid[i + 1]) - profile(grid[i])) / dx);
    }
    rep.items.push_back({"derivative_bounded", std::isfinite(max_slope), max_slope});

    // C^1 smoothness proxy: jump between adjacent difference quotients should
    // vanish like dx * |beta''|; the sign profile fails this by orders of magnitude.
    double slope_jump = 0.0, dx_grid = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double sl = (profile(grid[i]) - profile(grid[i - 1])) / (grid[i] - grid[i - 1]);
        const double sr = (profile(grid[i + 1]) - profile(grid[i])) / (grid[i + 1] - grid[i]);
        slope_jump = std::max(slope_jump, std::abs(sr - sl));
        dx_grid = std::max(dx_grid, grid[i + 1] - grid[i]);
    }
    const double c1_tol = 10.0 * dx_grid * std::max(max_slope, 1e-30);
    rep.items.push_back({"c1_smooth", slope_jump <= c1_tol, slope_jump});

    // tail integrability: the Cauchy increment int_{3X/4}^{X} |beta - beta(inf)|
    // of the partial sums must be below 1e-8 at X = hi
    const double X = hi;
    double cauchy = 0.0;
    {
        const int n = 2000;
        const double dx = 0.25 * X / n;
        for (int i = 0; i < n; ++i) {
            const double x0 = 0.75 * X + i * dx;
            cauchy += 0.5 * dx *
                      (std::abs(profile(x0) - binf) + std::abs(profile(x0 + dx) - binf));
        }
    }
    rep.items.push_back({"tail_integrable", cauchy <= 1e-8, cauchy});

    return rep;
}

ScalarField discretize_mass(const MassProfile& profile, double h, IndexWindow w) {
    return discretize_scalar([&](double x) { return profile(x); }, h, w);
}

} // namespace bwa
