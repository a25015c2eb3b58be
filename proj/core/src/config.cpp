#include "bwa/config.hpp"

#include "bwa/errors.hpp"

#include <cmath>
#include <set>

namespace bwa {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
    if (!obj.is_object()) throw config_error(where + ": expected a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw config_error(where + ": unknown key '" + key + "'");
    for (const auto& key : required)
        if (!obj.contains(key)) throw config_error(where + ": missing required key '" + key + "'");
}

double num(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number()) throw config_error(where + "." + key + ": expected a number");
    return v.get<double>();
}

double num_or(const json& obj, const std::string& where, const std::string& key, double dflt) {
    if (!obj.contains(key)) return dflt;
    return num(obj, where, key);
}

} // namespace

MassProfile mass_from_json(const json& j) {
    require_keys(j, "mass", {"kind", "beta", "beta_inf", "length_scale"}, {"kind"});
    const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (kind == "constant") {
        require_keys(j, "mass", {"kind", "beta"}, {"kind", "beta"});
        const double beta = num(j, "mass", "beta");
        if (!(beta > 0.0)) throw config_error("mass.beta: must be positive");
        return MassProfile::constant(beta);
    }
    if (kind == "domain_wall") {
        require_keys(j, "mass", {"kind", "beta_inf", "length_scale"}, {"kind", "beta_inf"});
        const double binf = num(j, "mass", "beta_inf");
        const double ell = num_or(j, "mass", "length_scale", 1.0);
        if (!(binf > 0.0)) throw config_error("mass.beta_inf: must be positive");
        if (!(ell > 0.0)) throw config_error("mass.length_scale: must be positive");
        return MassProfile::tanh_wall(binf, ell);
    }
    if (kind == "sign") {
        require_keys(j, "mass", {"kind", "beta_inf"}, {"kind", "beta_inf"});
        const double binf = num(j, "mass", "beta_inf");
        if (!(binf > 0.0)) throw config_error("mass.beta_inf: must be positive");
        return MassProfile::sign_wall(binf);
    }
    throw config_error("mass.kind: expected constant | domain_wall | sign");
}

json mass_to_json(const MassProfile& m) {
    json j;
    switch (m.kind()) {
        case MassKind::Constant:
            j["kind"] = "constant";
            j["beta"] = m.beta_inf();
            break;
        case MassKind::DomainWall:
            j["kind"] = "domain_wall";
            j["beta_inf"] = m.beta_inf();
            j["length_scale"] = m.length_scale();
            break;
        case MassKind::Sign:
            j["kind"] = "sign";
            j["beta_inf"] = m.beta_inf();
            break;
    }
    return j;
}

json ExperimentConfig::echo() const {
    json j = params;
    j["command"] = command;
    if (!output_dir.empty()) j["out"] = output_dir.string();
    return j;
}

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw config_error("config: expected a JSON object");
    if (!doc.contains("command")) throw config_error("config: missing required key 'command'");
    if (!doc.at("command").is_string()) throw config_error("config.command: expected a string");

    ExperimentConfig cfg;
    cfg.command = doc.at("command").get<std::string>();
    json p = doc;
    p.erase("command");
    if (p.contains("out")) {
        if (!p.at("out").is_string()) throw config_error("config.out: expected a path string");
        cfg.output_dir = p.at("out").get<std::string>();
        p.erase("out");
    }

    const std::string& cmd = cfg.command;
    if (cmd == "evolve-discrete") {
        require_keys(p, cmd, {"h", "zend", "dz", "mass", "datum", "snapshots"}, {"h", "zend", "mass"});
        const double h = num(p, cmd, "h");
        if (!(h > 0.0)) throw config_error(cmd + ".h: must be positive");
        if (!(num(p, cmd, "zend") >= 0.0)) throw config_error(cmd + ".zend: must be nonnegative");
        const double dz = num_or(p, cmd, "dz", std::min(0.1 * h, 0.01));
        if (!(dz > 0.0)) throw config_error(cmd + ".dz: must be positive");
        const MassProfile mass = mass_from_json(p.at("mass"));
        if (!mass.usable_in_dynamics())
            throw config_error(cmd + ".mass: the sign profile is spectral-only");
    } else if (cmd == "evolve-continuum") {
        require_keys(p, cmd, {"L", "N", "zend", "dz", "mass", "datum", "snapshots"},
                     {"L", "N", "zend", "mass"});
        const double L = num(p, cmd, "L");
        if (!(L > 0.0)) throw config_error(cmd + ".L: must be positive");
        const double Nd = num(p, cmd, "N");
        const auto N = static_cast<std::size_t>(Nd);
        if (Nd != static_cast<double>(N) || N < 8 || (N & (N - 1)) != 0)
            throw config_error(cmd + ".N: must be a power of two >= 8");
        if (!(num(p, cmd, "zend") >= 0.0)) throw config_error(cmd + ".zend: must be nonnegative");
        if (!(num_or(p, cmd, "dz", 1e-3) > 0.0)) throw config_error(cmd + ".dz: must be positive");
        const MassProfile mass = mass_from_json(p.at("mass"));
        if (!mass.usable_in_dynamics())
            throw config_error(cmd + ".mass: the sign profile is spectral-only");
    } else if (cmd == "converge") {
        require_keys(p, cmd, {"datum", "mass", "T", "ladder", "threads", "bihari_c"},
                     {"mass", "T", "ladder"});
        if (!(num(p, cmd, "T") > 0.0)) throw config_error(cmd + ".T: must be positive");
        const json& ladder = p.at("ladder");
        if (!ladder.is_array() || ladder.size() < 2)
            throw config_error(cmd + ".ladder: expected an array of at least two h values");
        double prev = 0.0;
        bool first = true;
        for (const json& v : ladder) {
            if (!v.is_number() || !(v.get<double>() > 0.0))
                throw config_error(cmd + ".ladder: entries must be positive numbers");
            if (!first && !(v.get<double>() < prev))
                throw config_error(cmd + ".ladder: entries must strictly decrease");
            prev = v.get<double>();
            first = false;
        }
        const MassProfile mass = mass_from_json(p.at("mass"));
        if (!mass.usable_in_dynamics())
            throw config_error(cmd + ".mass: the sign profile is spectral-only");
    } else if (cmd == "standing-wave") {
        require_keys(p, cmd, {"mass", "omega", "xmax", "tol", "dx", "svg"}, {"mass", "omega"});
        const MassProfile mass = mass_from_json(p.at("mass"));
        const double omega = num(p, cmd, "omega");
        if (mass.kind() == MassKind::Sign)
            throw config_error(cmd + ".mass: the sign profile is spectral-only");
        if (!(omega > 0.0) || !(omega < mass.beta_inf()))
            throw config_error(cmd + ".omega: must lie in (0, beta) -- the mass gap");
        if (!(num_or(p, cmd, "xmax", 30.0) > 0.0)) throw config_error(cmd + ".xmax: must be positive");
        if (!(num_or(p, cmd, "tol", 1e-10) > 0.0)) throw config_error(cmd + ".tol: must be positive");
        if (!(num_or(p, cmd, "dx", 1e-3) > 0.0)) throw config_error(cmd + ".dx: must be positive");
    } else if (cmd == "spectrum") {
        require_keys(p, cmd, {"mass", "h", "L", "gap_margin"}, {"mass", "h", "L"});
        mass_from_json(p.at("mass"));
        const double h = num(p, cmd, "h");
        if (!(h > 0.0) || h > 0.1) throw config_error(cmd + ".h: requires 0 < h <= 0.1");
        const double L = num(p, cmd, "L");
        if (!(L > 0.0)) throw config_error(cmd + ".L: must be positive");
        const double ratio = L / h;
        if (std::abs(ratio - std::round(ratio)) > 1e-9)
            throw config_error(cmd + ".L: L/h must be an integer");
        if (!(num_or(p, cmd, "gap_margin", 10.0 * h) > 0.0))
            throw config_error(cmd + ".gap_margin: must be positive");
    } else {
        throw config_error("config.command: unknown command '" + cmd + "'");
    }

    cfg.params = p;
    return cfg;
}

} // namespace bwa
