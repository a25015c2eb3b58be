#pragma once

#include "bwa/convergence.hpp"
#include "bwa/spectral_gap.hpp"
#include "bwa/standing_waves.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bwa {

using PlotPoint = std::pair<double, double>;

struct PlotSeries {
    std::vector<PlotPoint> points;
    std::string color = "#1f77b4";
    bool markers = false;
    bool line = true;
};

struct PlotSpec {
    std::string title, xlabel, ylabel, caption;
    bool logx = false, logy = false;
    std::vector<PlotSeries> series;
};

// Standalone SVG with axes, tick labels, and an embedded parameter caption.
// Throws config_error on an empty dataset.
std::string render_plot(const PlotSpec& spec);

// Fig.-1-style phase plane: the {H = 0} level curve with the orbit overlay.
std::string svg_phase_plane(const WaveProfile& orbit, double beta, double omega);

// log-log error plot with the fitted-rate line.
std::string svg_error_loglog(const ConvergenceReport& report);

// u, v profile curves against x.
std::string svg_profile(const WaveProfile& profile);

// Gap eigenvalues between the band edges, one run per column.
std::string svg_spectrum_ladder(const std::vector<std::vector<double>>& eigs_per_run,
                                const std::vector<std::string>& labels, double band_edge,
                                const std::string& caption);

} // namespace bwa
