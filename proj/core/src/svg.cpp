#include "bwa/svg.hpp"

#include "bwa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace bwa {

namespace {

constexpr int W = 640, H = 480;
constexpr int ML = 70, MR = 20, MT = 40, MB = 60;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Mapper {
    double x0, x1, y0, y1;
    bool logx, logy;

    double tx(double x) const {
        const double u = logx ? std::log10(x) : x;
        const double a = logx ? std::log10(x0) : x0, b = logx ? std::log10(x1) : x1;
        return ML + (u - a) / (b - a) * (W - ML - MR);
    }
    double ty(double y) const {
        const double u = logy ? std::log10(y) : y;
        const double a = logy ? std::log10(y0) : y0, b = logy ? std::log10(y1) : y1;
        return H - MB - (u - a) / (b - a) * (H - MT - MB);
    }
};

std::vector<double> linear_ticks(double a, double b) {
    const double span = b - a;
    if (!(span > 0.0)) return {a};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(a / step) * step; v <= b + 1e-9 * span; v += step) t.push_back(v);
    return t;
}

std::vector<double> log_ticks(double a, double b) {
    std::vector<double> t;
    for (int e = static_cast<int>(std::floor(std::log10(a))); e <= static_cast<int>(std::ceil(std::log10(b))); ++e) {
        const double v = std::pow(10.0, e);
        if (v >= a * (1 - 1e-12) && v <= b * (1 + 1e-12)) t.push_back(v);
    }
    if (t.empty()) t = {a, b};
    return t;
}

} // namespace

std::string render_plot(const PlotSpec& spec) {
    bool any = false;
    for (const auto& s : spec.series) any = any || !s.points.empty();
    if (!any) throw config_error("plot: empty dataset");

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : spec.series)
        for (const auto& [x, y] : s.points) {
            if (spec.logx && !(x > 0.0)) continue;
            if (spec.logy && !(y > 0.0)) continue;
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    if (!(x0 < x1)) { x0 -= 0.5; x1 += 0.5; }
    if (!(y0 < y1)) { y0 -= 0.5; y1 += 0.5; }
    if (!spec.logx) { const double p = 0.05 * (x1 - x0); x0 -= p; x1 += p; }
    else { x0 /= 1.3; x1 *= 1.3; }
    if (!spec.logy) { const double p = 0.05 * (y1 - y0); y0 -= p; y1 += p; }
    else { y0 /= 1.3; y1 *= 1.3; }

    const Mapper m{x0, x1, y0, y1, spec.logx, spec.logy};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
          "font-family=\"sans-serif\">" << spec.title << "</text>\n";

    // axes box
    os << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << (W - ML - MR) << "\" height=\""
       << (H - MT - MB) << "\" fill=\"none\" stroke=\"black\"/>\n";

    const auto xticks = spec.logx ? log_ticks(x0, x1) : linear_ticks(x0, x1);
    for (double v : xticks) {
        const double px = m.tx(v);
        os << "<line x1=\"" << fmt(px) << "\" y1=\"" << (H - MB) << "\" x2=\"" << fmt(px) << "\" y2=\""
           << (H - MB + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(px) << "\" y=\"" << (H - MB + 18)
           << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(v)
           << "</text>\n";
    }
    const auto yticks = spec.logy ? log_ticks(y0, y1) : linear_ticks(y0, y1);
    for (double v : yticks) {
        const double py = m.ty(v);
        os << "<line x1=\"" << (ML - 5) << "\" y1=\"" << fmt(py) << "\" x2=\"" << ML << "\" y2=\""
           << fmt(py) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << (ML - 8) << "\" y=\"" << fmt(py + 4)
           << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(v)
           << "</text>\n";
    }
    os << "<text x=\"" << W / 2 << "\" y=\"" << (H - MB + 36)
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << spec.xlabel
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
          "font-family=\"sans-serif\" transform=\"rotate(-90 16 " << H / 2 << ")\">" << spec.ylabel
       << "</text>\n";

    for (const auto& s : spec.series) {
        if (s.line && s.points.size() > 1) {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points) {
                if ((spec.logx && !(x > 0.0)) || (spec.logy && !(y > 0.0))) continue;
                os << fmt(m.tx(x)) << ',' << fmt(m.ty(y)) << ' ';
            }
            os << "\"/>\n";
        }
        if (s.markers) {
            for (const auto& [x, y] : s.points) {
                if ((spec.logx && !(x > 0.0)) || (spec.logy && !(y > 0.0))) continue;
                os << "<circle cx=\"" << fmt(m.tx(x)) << "\" cy=\"" << fmt(m.ty(y))
                   << "\" r=\"3.5\" fill=\"" << s.color << "\"/>\n";
            }
        }
    }

    os << "<text x=\"" << W / 2 << "\" y=\"" << (H - 8)
       << "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#444\" "
          "font-family=\"sans-serif\">" << spec.caption << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string svg_phase_plane(const WaveProfile& orbit, double beta, double omega) {
    // {H = 0}: r^2 = (2 beta cos 2t - 2 omega)/(cos^4 t + sin^4 t) on the lobes
    PlotSeries level_r, level_l;
    level_r.color = level_l.color = "#888888";
    const double tstar = 0.5 * std::acos(omega / beta);
    const int n = 400;
    for (int i = -n; i <= n; ++i) {
        const double t = tstar * static_cast<double>(i) / n;
        const double c = std::cos(t), s = std::sin(t);
        const double num = 2.0 * beta * std::cos(2.0 * t) - 2.0 * omega;
        if (num < 0.0) continue;
        const double r = std::sqrt(num / (c * c * c * c + s * s * s * s));
        level_r.points.emplace_back(r * c, r * s);
        level_l.points.emplace_back(-r * c, -r * s);
    }

    PlotSeries orb;
    orb.color = "#d62728";
    for (std::size_t i = 0; i < orbit.size(); ++i) orb.points.emplace_back(orbit.us[i], orbit.vs[i]);

    PlotSpec spec;
    spec.title = "Zero-energy level curve and computed orbit";
    spec.xlabel = "u";
    spec.ylabel = "v";
    spec.caption = "{H = 0} for beta = " + fmt(beta) + ", omega = " + fmt(omega);
    spec.series = {level_r, level_l, orb};
    return render_plot(spec);
}

std::string svg_error_loglog(const ConvergenceReport& report) {
    PlotSeries pts;
    pts.markers = true;
    pts.line = false;
    for (const auto& row : report.rows)
        if (row.l2 > 0.0) pts.points.emplace_back(row.h, row.l2);

    PlotSpec spec;
    spec.title = "Discrete-to-continuum error";
    spec.xlabel = "h";
    spec.ylabel = "L2 error";
    spec.logx = spec.logy = true;
    spec.caption = "mass " + report.mass_id + ", T = " + fmt(report.T) +
                   ", fitted rate = " + fmt(report.rate);
    spec.series.push_back(pts);

    if (pts.points.size() >= 2) {
        // fitted line through the first marker with the reported slope
        PlotSeries fitline;
        fitline.color = "#2ca02c";
        const auto& [h0, e0] = pts.points.front();
        const auto& [h1, e1] = pts.points.back();
        fitline.points.emplace_back(h0, e0);
        fitline.points.emplace_back(h1, e0 * std::pow(h1 / h0, report.rate));
        spec.series.push_back(fitline);
    }
    return render_plot(spec);
}

std::string svg_profile(const WaveProfile& profile) {
    PlotSeries su, sv;
    su.color = "#1f77b4";
    sv.color = "#d62728";
    for (std::size_t i = 0; i < profile.size(); ++i) {
        su.points.emplace_back(profile.xs[i], profile.us[i]);
        sv.points.emplace_back(profile.xs[i], profile.vs[i]);
    }
    PlotSpec spec;
    spec.title = "Standing-wave profile (u blue, v red)";
    spec.xlabel = "x";
    spec.ylabel = "u, v";
    spec.caption = "mass " + profile.mass_id + ", omega = " + fmt(profile.omega) +
                   ", decay rate = " + fmt(profile.decay_rate);
    spec.series = {su, sv};
    return render_plot(spec);
}

std::string svg_spectrum_ladder(const std::vector<std::vector<double>>& eigs_per_run,
                                const std::vector<std::string>& labels, double band_edge,
                                const std::string& caption) {
    PlotSpec spec;
    spec.title = "Gap eigenvalues";
    spec.xlabel = "run";
    spec.ylabel = "lambda";
    spec.caption = caption;

    PlotSeries edges;
    edges.color = "#888888";
    edges.points.emplace_back(0.5, band_edge);
    edges.points.emplace_back(static_cast<double>(eigs_per_run.size()) + 0.5, band_edge);
    PlotSeries edges2 = edges;
    for (auto& p : edges2.points) p.second = -band_edge;
    spec.series.push_back(edges);
    spec.series.push_back(edges2);

    PlotSeries eigs;
    eigs.markers = true;
    eigs.line = false;
    eigs.color = "#d62728";
    for (std::size_t r = 0; r < eigs_per_run.size(); ++r)
        for (double lam : eigs_per_run[r]) eigs.points.emplace_back(static_cast<double>(r + 1), lam);
    if (eigs.points.empty()) {
        // keep the band edges as the visible dataset when the gap is empty
        eigs.points.emplace_back(1.0, band_edge);
        eigs.markers = false;
    }
    spec.series.push_back(eigs);
    (void)labels;
    return render_plot(spec);
}

} // namespace bwa
