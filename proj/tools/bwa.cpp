// Command-line front end: evolve-discrete, evolve-continuum, converge,
// standing-wave, spectrum. Flags override values from --config <file.json>.
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 I/O error.

#include "bwa/config.hpp"
#include "bwa/convergence.hpp"
#include "bwa/csv_io.hpp"
#include "bwa/errors.hpp"
#include "bwa/lattice_ops.hpp"
#include "bwa/manifest.hpp"
#include "bwa/spectral_gap.hpp"
#include "bwa/standing_waves.hpp"
#include "bwa/svg.hpp"
#include "bwa/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw bwa::config_error("malformed JSON in " + what);
    return j;
}

// --mass accepts inline JSON or @file
json mass_arg_to_json(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@')
        return parse_json_text(bwa::read_text_file(arg.substr(1)), arg.substr(1));
    return parse_json_text(arg, "--mass");
}

std::vector<double> parse_list(const std::string& csv, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw bwa::config_error(what + ": bad number '" + item + "'");
        }
    }
    return out;
}

bwa::SpinorFn gaussian_datum() {
    return [](double x) {
        return bwa::SpinorValue{bwa::cplx{std::exp(-x * x), 0.0}, bwa::cplx{0.0, 0.0}};
    };
}

bwa::LatticeField load_lattice_datum(const std::string& datum, double h, double radius) {
    if (datum == "builtin:gaussian") {
        const long M = static_cast<long>(std::ceil(radius / h)) + 1;
        return bwa::discretize(gaussian_datum(), h, {-M, M});
    }
    return bwa::parse_field_csv(bwa::read_text_file(datum));
}

struct CommonState {
    std::optional<std::string> config_path;
    json file_cfg; // loaded config file values
};

// Merge: start from the config file (if any), overlay every flag the user set.
json merge_config(const CommonState& st, const std::string& command, const json& flag_values) {
    json doc = st.file_cfg.is_object() ? st.file_cfg : json::object();
    doc["command"] = command;
    for (const auto& [k, v] : flag_values.items()) doc[k] = v;
    return doc;
}

int run_evolve_discrete(const bwa::ExperimentConfig& cfg) {
    const json& p = cfg.params;
    const double h = p.at("h").get<double>();
    const double zend = p.at("zend").get<double>();
    const double dz = p.contains("dz") ? p.at("dz").get<double>() : bwa::default_dz(h);
    const bwa::MassProfile mass = bwa::mass_from_json(p.at("mass"));
    const std::string datum = p.contains("datum") ? p.at("datum").get<std::string>() : "builtin:gaussian";
    std::vector<double> snaps;
    if (p.contains("snapshots")) {
        if (p.at("snapshots").is_string())
            snaps = parse_list(p.at("snapshots").get<std::string>(), "snapshots");
        else
            snaps = p.at("snapshots").get<std::vector<double>>();
    }

    const bwa::LatticeField psi0 =
        load_lattice_datum(datum, h, /*radius=*/5.5 + zend + 2.0);

    bwa::RunManifest manifest(cfg.output_dir, cfg.echo());
    manifest.begin();
    const bwa::DiscreteTrajectory traj = bwa::evolve_discrete(psi0, mass, zend, dz, snaps);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
        const fs::path file = cfg.output_dir / name;
        bwa::write_text_file(file, bwa::field_csv(traj.states[i]));
        manifest.add_output(file);
    }
    const fs::path norms = cfg.output_dir / "norms.csv";
    bwa::write_text_file(norms, bwa::norms_csv(traj.norms));
    manifest.add_output(norms);
    manifest.finish();
    std::cout << "evolve-discrete: " << traj.states.size() << " snapshots, final l2h = "
              << bwa::fmt_double(traj.norms.back().l2h) << "\n";
    return 0;
}

int run_evolve_continuum(const bwa::ExperimentConfig& cfg) {
    const json& p = cfg.params;
    const double L = p.at("L").get<double>();
    const auto N = static_cast<std::size_t>(p.at("N").get<double>());
    const double zend = p.at("zend").get<double>();
    const double dz = p.contains("dz") ? p.at("dz").get<double>() : 1e-3;
    const bwa::MassProfile mass = bwa::mass_from_json(p.at("mass"));
    const std::string datum = p.contains("datum") ? p.at("datum").get<std::string>() : "builtin:gaussian";
    std::vector<double> snaps;
    if (p.contains("snapshots")) {
        if (p.at("snapshots").is_string())
            snaps = parse_list(p.at("snapshots").get<std::string>(), "snapshots");
        else
            snaps = p.at("snapshots").get<std::vector<double>>();
    }

    bwa::ContinuumField chi;
    if (datum == "builtin:gaussian")
        chi = bwa::sample_continuum(gaussian_datum(), L, N);
    else
        chi = bwa::parse_continuum_csv(bwa::read_text_file(datum), L);

    bwa::RunManifest manifest(cfg.output_dir, cfg.echo());
    manifest.begin();
    const bwa::ContinuumTrajectory traj = bwa::evolve_continuum(chi, mass, zend, dz, snaps);
    std::vector<bwa::NormRecord> norms;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
        const fs::path file = cfg.output_dir / name;
        bwa::write_text_file(file, bwa::continuum_csv(traj.states[i]));
        manifest.add_output(file);
        norms.push_back({traj.zs[i], traj.l2_norms[i], 0.0, bwa::linf_norm(traj.states[i])});
    }
    const fs::path normsf = cfg.output_dir / "norms.csv";
    bwa::write_text_file(normsf, bwa::norms_csv(norms));
    manifest.add_output(normsf);
    manifest.finish();
    std::cout << "evolve-continuum: " << traj.states.size() << " snapshots, final l2 = "
              << bwa::fmt_double(traj.l2_norms.back()) << "\n";
    return 0;
}

json report_to_json(const bwa::ConvergenceReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"h", row.h}, {"l2", row.l2}, {"h1", row.h1}, {"seconds", row.seconds}});
    return json{{"datum", r.datum_id}, {"mass", r.mass_id}, {"T", r.T},
                {"rows", rows},        {"rate", r.rate}};
}

int run_converge(const bwa::ExperimentConfig& cfg) {
    const json& p = cfg.params;
    const bwa::MassProfile mass = bwa::mass_from_json(p.at("mass"));
    const double T = p.at("T").get<double>();
    std::vector<double> ladder;
    if (p.at("ladder").is_string())
        ladder = parse_list(p.at("ladder").get<std::string>(), "ladder");
    else
        ladder = p.at("ladder").get<std::vector<double>>();

    bwa::StudyOptions opts;
    if (p.contains("threads")) opts.threads = p.at("threads").get<unsigned>();
    if (p.contains("bihari_c")) opts.bihari_c = p.at("bihari_c").get<double>();
    const std::string datum = p.contains("datum") ? p.at("datum").get<std::string>() : "builtin:gaussian";
    if (datum != "builtin:gaussian")
        throw bwa::config_error("converge.datum: only builtin:gaussian is available");
    opts.datum_id = datum;

    // `out` may name the report file directly or a directory
    fs::path report_path = cfg.output_dir;
    fs::path dir = cfg.output_dir;
    if (report_path.extension() == ".json") {
        dir = report_path.parent_path().empty() ? fs::path(".") : report_path.parent_path();
    } else {
        report_path = dir / "report.json";
    }

    bwa::RunManifest manifest(dir, cfg.echo());
    manifest.begin();
    const bwa::ConvergenceReport report = bwa::run_study(gaussian_datum(), mass, T, ladder, opts);
    bwa::write_text_file(report_path, report_to_json(report).dump(2) + "\n");
    manifest.add_output(report_path);
    const fs::path svg = report_path.parent_path() / (report_path.stem().string() + ".svg");
    bwa::write_text_file(svg, bwa::svg_error_loglog(report));
    manifest.add_output(svg);
    manifest.finish();
    std::cout << "converge: fitted rate " << bwa::fmt_double(report.rate) << ", report at "
              << report_path.string() << "\n";
    return 0;
}

int run_standing_wave(const bwa::ExperimentConfig& cfg) {
    const json& p = cfg.params;
    const bwa::MassProfile mass = bwa::mass_from_json(p.at("mass"));
    const double omega = p.at("omega").get<double>();
    const double xmax = p.contains("xmax") ? p.at("xmax").get<double>() : 30.0;
    const double tol = p.contains("tol") ? p.at("tol").get<double>() : 1e-10;
    const double dx = p.contains("dx") ? p.at("dx").get<double>() : 1e-3;

    fs::path profile_path = cfg.output_dir;
    fs::path dir = cfg.output_dir;
    if (profile_path.extension() == ".csv") {
        dir = profile_path.parent_path().empty() ? fs::path(".") : profile_path.parent_path();
    } else {
        profile_path = dir / "profile.csv";
    }

    bwa::RunManifest manifest(dir, cfg.echo());
    manifest.begin();
    bwa::WaveProfile prof;
    if (mass.is_constant())
        prof = bwa::homoclinic_orbit(mass.beta_inf(), omega, xmax, tol, dx);
    else
        prof = bwa::domain_wall_wave(mass, omega, xmax, std::max(tol, 1e-12), dx);

    bwa::write_text_file(profile_path, bwa::profile_csv(prof));
    manifest.add_output(profile_path);

    fs::path svg_path = dir / "orbit.svg";
    if (p.contains("svg")) svg_path = dir / p.at("svg").get<std::string>();
    bwa::write_text_file(svg_path, mass.is_constant()
                                       ? bwa::svg_phase_plane(prof, mass.beta_inf(), omega)
                                       : bwa::svg_profile(prof));
    manifest.add_output(svg_path);
    manifest.finish();

    const double res = bwa::stationary_residual(prof, mass, omega);
    std::cout << "standing-wave: decay rate " << bwa::fmt_double(prof.decay_rate)
              << ", stationary residual " << bwa::fmt_double(res);
    if (mass.is_constant())
        std::cout << ", max|H| " << bwa::fmt_double(prof.max_abs_hamiltonian);
    else
        std::cout << ", matching defect " << bwa::fmt_double(prof.matching_defect);
    std::cout << "\n";
    return 0;
}

int run_spectrum(const bwa::ExperimentConfig& cfg) {
    const json& p = cfg.params;
    const bwa::MassProfile mass = bwa::mass_from_json(p.at("mass"));
    const double h = p.at("h").get<double>();
    const double L = p.at("L").get<double>();
    const double binf = mass.beta_inf();
    const double margin = p.contains("gap_margin") ? p.at("gap_margin").get<double>() : 10.0 * h;
    if (!(margin < binf)) throw bwa::config_error("spectrum.gap_margin: must stay below beta(inf)");

    bwa::RunManifest manifest(cfg.output_dir, cfg.echo());
    manifest.begin();
    const bwa::OperatorMatrix op = bwa::assemble(mass, h, L);
    const auto eigs = bwa::gap_eigenvalues(op, -binf + margin, binf - margin);

    json out;
    out["gap"] = {-binf + margin, binf - margin};
    out["eigs"] = json::array();
    std::vector<double> lambdas;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        out["eigs"].push_back({{"lambda", eigs[i].lambda}, {"residual", eigs[i].residual}});
        lambdas.push_back(eigs[i].lambda);
        // eigenvector CSV in long format: staggered u and v rows
        std::ostringstream os;
        os << "x,component,value\n";
        for (std::size_t r = 0; r < op.dim(); ++r)
            os << bwa::fmt_double(op.points[r]) << ',' << (op.is_u[r] ? 'u' : 'v') << ','
               << bwa::fmt_double(eigs[i].vec[r]) << '\n';
        char name[32];
        std::snprintf(name, sizeof name, "eigenvector_%02zu.csv", i);
        const fs::path file = cfg.output_dir / name;
        bwa::write_text_file(file, os.str());
        manifest.add_output(file);
    }
    const fs::path spec_path = cfg.output_dir / "spectrum.json";
    bwa::write_text_file(spec_path, out.dump(2) + "\n");
    manifest.add_output(spec_path);
    const fs::path svg = cfg.output_dir / "spectrum.svg";
    bwa::write_text_file(svg, bwa::svg_spectrum_ladder({lambdas}, {mass.id()}, binf,
                                                       "gap eigenvalues for " + mass.id()));
    manifest.add_output(svg);
    manifest.finish();
    std::cout << "spectrum: " << eigs.size() << " gap eigenvalue(s)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary waveguide array laboratory: discrete and continuum cubic Dirac dynamics, "
                 "standing waves, spectra"};
    app.set_version_flag("--version", bwa::version);
    app.set_help_flag("--help", "print help"); // frees -h for the lattice spacing flag
    app.require_subcommand(0, 1);

    CommonState st;
    std::string config_path;
    app.add_option("--config", config_path, "JSON experiment config; flags override file values")
        ->expected(1);

    struct FlagSet {
        std::string mass, datum, snapshots, ladder, out, svg;
        double h = 0, zend = 0, dz = 0, L = 0, T = 0, omega = 0, xmax = 0, tol = 0, dx = 0,
               gap_margin = 0, bihari_c = 0;
        unsigned long N = 0;
        unsigned threads = 0;
    } f;

    auto* ed = app.add_subcommand("evolve-discrete", "RK4 evolution of the discrete system");
    ed->set_help_flag("--help", "print help");
    ed->add_option("--h", f.h, "lattice spacing");
    ed->add_option("--zend", f.zend, "final z");
    ed->add_option("--dz", f.dz, "integrator step (default min(0.1h, 0.01))");
    ed->add_option("--mass", f.mass, "mass JSON or @file");
    ed->add_option("--datum", f.datum, "datum CSV path or builtin:gaussian");
    ed->add_option("--snapshots", f.snapshots, "comma-separated z values");
    ed->add_option("--out", f.out, "output directory");

    auto* ec = app.add_subcommand("evolve-continuum", "Strang splitting for the cubic Dirac equation");
    ec->set_help_flag("--help", "print help");
    ec->add_option("--L", f.L, "half-width of [-L, L)");
    ec->add_option("--N", f.N, "grid points (power of two)");
    ec->add_option("--zend", f.zend, "final z");
    ec->add_option("--dz", f.dz, "step (default 1e-3)");
    ec->add_option("--mass", f.mass, "mass JSON or @file");
    ec->add_option("--datum", f.datum, "datum CSV path or builtin:gaussian");
    ec->add_option("--snapshots", f.snapshots, "comma-separated z values");
    ec->add_option("--out", f.out, "output directory");

    auto* cv = app.add_subcommand("converge", "discrete-to-continuum refinement study");
    cv->set_help_flag("--help", "print help");
    cv->add_option("--datum", f.datum, "builtin:gaussian");
    cv->add_option("--mass", f.mass, "mass JSON or @file");
    cv->add_option("--T", f.T, "final z (inside the a-priori horizon)");
    cv->add_option("--ladder", f.ladder, "comma-separated h values, decreasing");
    cv->add_option("--threads", f.threads, "parallel rungs cap (default BWA_THREADS)");
    cv->add_option("--bihari-c", f.bihari_c, "growth constant override (default: calibrated)");
    cv->add_option("--out", f.out, "report path (.json) or directory");

    auto* sw = app.add_subcommand("standing-wave", "localized standing-wave profiles");
    sw->set_help_flag("--help", "print help");
    sw->add_option("--mass", f.mass, "mass JSON or @file");
    sw->add_option("--omega", f.omega, "frequency in the gap");
    sw->add_option("--xmax", f.xmax, "half-width of the profile grid (default 30)");
    sw->add_option("--tol", f.tol, "tail/matching tolerance (default 1e-10)");
    sw->add_option("--dx", f.dx, "output grid spacing (default 1e-3)");
    sw->add_option("--out", f.out, "profile path (.csv) or directory");
    sw->add_option("--svg", f.svg, "phase-plane / profile plot filename");

    auto* sp = app.add_subcommand("spectrum", "finite-section gap spectrum of D + beta sigma3");
    sp->set_help_flag("--help", "print help");
    sp->add_option("--mass", f.mass, "mass JSON or @file");
    sp->add_option("--h", f.h, "grid step (<= 0.1)");
    sp->add_option("--L", f.L, "half-width (L/h integer)");
    sp->add_option("--gap-margin", f.gap_margin, "band-edge margin (default 10h)");
    sp->add_option("--out", f.out, "output directory");

    try {
        app.parse(argc, argv);

        if (!config_path.empty())
            st.file_cfg = parse_json_text(bwa::read_text_file(config_path), config_path);

        CLI::App* sub = nullptr;
        for (CLI::App* s : {ed, ec, cv, sw, sp})
            if (s->parsed()) sub = s;
        std::string command;
        if (sub)
            command = sub->get_name();
        else if (st.file_cfg.is_object() && st.file_cfg.contains("command"))
            command = st.file_cfg.at("command").get<std::string>();
        else
            throw bwa::config_error("missing 'command': pass a subcommand or a config file");

        json flags = json::object();
        auto given = [&](const char* name) {
            const CLI::Option* opt = sub ? sub->get_option_no_throw(name) : nullptr;
            return opt != nullptr && opt->count() > 0;
        };
        auto set_if = [&](const char* name, const json& v) {
            if (given(name)) flags[std::string(name).substr(2)] = v;
        };
        if (sub) {
            set_if("--h", f.h);
            set_if("--zend", f.zend);
            set_if("--dz", f.dz);
            set_if("--L", f.L);
            set_if("--T", f.T);
            set_if("--omega", f.omega);
            set_if("--xmax", f.xmax);
            set_if("--tol", f.tol);
            set_if("--dx", f.dx);
            set_if("--threads", f.threads);
            if (given("--N")) flags["N"] = static_cast<double>(f.N);
            if (given("--gap-margin")) flags["gap_margin"] = f.gap_margin;
            if (given("--bihari-c")) flags["bihari_c"] = f.bihari_c;
            if (given("--mass")) flags["mass"] = mass_arg_to_json(f.mass);
            if (given("--datum")) flags["datum"] = f.datum;
            if (given("--snapshots")) flags["snapshots"] = f.snapshots;
            if (given("--ladder")) flags["ladder"] = f.ladder;
            if (given("--out")) flags["out"] = f.out;
            if (given("--svg")) flags["svg"] = f.svg;
        }

        const bwa::ExperimentConfig cfg = bwa::parse_config(merge_config(st, command, flags));
        if (cfg.output_dir.empty())
            throw bwa::config_error("missing 'out': pass --out or set it in the config file");

        if (command == "evolve-discrete") return run_evolve_discrete(cfg);
        if (command == "evolve-continuum") return run_evolve_continuum(cfg);
        if (command == "converge") return run_converge(cfg);
        if (command == "standing-wave") return run_standing_wave(cfg);
        if (command == "spectrum") return run_spectrum(cfg);
        throw bwa::config_error("unknown command " + command);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const bwa::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bwa::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const bwa::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
