#include "cskin/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cskin/errors.hpp"

namespace cskin {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int parse_int(const std::string& text, const std::string& key) {
    try {
        size_t pos = 0;
        const long v = std::stol(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected integer, got '" + text + "'");
    }
}

} // namespace

double parse_real(const std::string& text, const std::string& key) {
    std::string t = trim(text);
    double factor = 1.0;
    if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
        factor = kPi;
        t = trim(t.substr(0, t.size() - 2));
        if (t.empty() || t == "+") t = "1";
        if (t == "-") t = "-1";
    }
    try {
        size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("trailing");
        return v * factor;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected real number, got '" + text + "'");
    }
}

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::Fig2: return "fig2";
        case Experiment::Fig3: return "fig3";
        case Experiment::Fig4: return "fig4";
        case Experiment::FigS1: return "figS1";
        case Experiment::FigS2: return "figS2";
        case Experiment::FigS3: return "figS3";
        case Experiment::FigS4Potential: return "figS4_potential";
        case Experiment::FigS5State: return "figS5_state";
        case Experiment::FigS6: return "figS6";
        case Experiment::FigS7S8: return "figS7_S8";
        case Experiment::VerifyAnalytics: return "verify-analytics";
        default: return "custom";
    }
}

Experiment experiment_from_string(const std::string& s) {
    static const std::map<std::string, Experiment> lut = {
        {"fig2", Experiment::Fig2},
        {"fig3", Experiment::Fig3},
        {"fig4", Experiment::Fig4},
        {"figS1", Experiment::FigS1},
        {"figS2", Experiment::FigS2},
        {"figS3", Experiment::FigS3},
        {"figS4_potential", Experiment::FigS4Potential},
        {"figS5_state", Experiment::FigS5State},
        {"figS6", Experiment::FigS6},
        {"figS7_S8", Experiment::FigS7S8},
        {"verify-analytics", Experiment::VerifyAnalytics},
        {"custom", Experiment::Custom},
    };
    const auto it = lut.find(s);
    if (it == lut.end())
        throw ConfigError("config key 'experiment': unknown experiment '" + s + "'");
    return it->second;
}

int ExperimentConfig::resolved_grid_size() const {
    return numerics.grid_size > 0 ? numerics.grid_size : 4 * model.n_atoms;
}

int ExperimentConfig::resolved_quadrature_points() const {
    return numerics.quadrature_points > 0 ? numerics.quadrature_points
                                          : std::max(4096, 64 * effective.n_sites);
}

std::map<std::string, std::string> ExperimentConfig::resolved() const {
    std::map<std::string, std::string> m;
    m["experiment"] = to_string(experiment);
    m["model.phi"] = fmt_real(model.phi);
    m["model.xi"] = fmt_real(model.xi);
    m["model.gamma1d"] = fmt_real(model.gamma1d);
    m["model.n_atoms"] = std::to_string(model.n_atoms);
    m["model.omega0"] = fmt_real(model.omega0);
    m["effective.t"] = fmt_real(effective.t);
    m["effective.Phi"] = fmt_real(effective.Phi);
    m["effective.Gamma"] = fmt_real(effective.Gamma);
    m["effective.sigma"] = fmt_real(effective.sigma);
    m["effective.two_phi"] = fmt_real(effective.two_phi);
    m["effective.n_sites"] = std::to_string(effective.n_sites);
    m["numerics.r_max"] = std::to_string(numerics.r_max);
    m["numerics.k_points"] = std::to_string(numerics.k_points);
    m["numerics.grid_size"] = std::to_string(resolved_grid_size());
    m["numerics.peak_threshold"] = fmt_real(numerics.peak_threshold);
    m["numerics.eig_tol"] = fmt_real(numerics.eig_tol);
    m["numerics.quadrature_points"] = std::to_string(resolved_quadrature_points());
    m["numerics.q_samples"] = std::to_string(numerics.q_samples);
    m["output.format"] = output.format == OutputFormat::Json ? "json" : "csv";
    m["threads"] = std::to_string(threads);
    m["seed"] = std::to_string(seed);
    return m;
}

namespace {

void apply_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
    if (key == "experiment") {
        c.experiment = experiment_from_string(value);
    } else if (key == "model.phi") {
        c.model.phi = parse_real(value, key);
    } else if (key == "model.xi") {
        c.model.xi = parse_real(value, key);
    } else if (key == "model.gamma1d") {
        c.model.gamma1d = parse_real(value, key);
    } else if (key == "model.n_atoms") {
        c.model.n_atoms = parse_int(value, key);
    } else if (key == "model.omega0") {
        c.model.omega0 = parse_real(value, key);
    } else if (key == "effective.t") {
        c.effective.t = parse_real(value, key);
    } else if (key == "effective.Phi") {
        c.effective.Phi = parse_real(value, key);
    } else if (key == "effective.Gamma") {
        c.effective.Gamma = parse_real(value, key);
    } else if (key == "effective.sigma") {
        c.effective.sigma = parse_real(value, key);
    } else if (key == "effective.two_phi") {
        c.effective.two_phi = parse_real(value, key);
    } else if (key == "effective.n_sites") {
        c.effective.n_sites = parse_int(value, key);
    } else if (key == "numerics.r_max") {
        c.numerics.r_max = parse_int(value, key);
    } else if (key == "numerics.k_points") {
        c.numerics.k_points = parse_int(value, key);
    } else if (key == "numerics.grid_size") {
        c.numerics.grid_size = parse_int(value, key);
    } else if (key == "numerics.peak_threshold") {
        c.numerics.peak_threshold = parse_real(value, key);
    } else if (key == "numerics.eig_tol") {
        c.numerics.eig_tol = parse_real(value, key);
    } else if (key == "numerics.quadrature_points") {
        c.numerics.quadrature_points = parse_int(value, key);
    } else if (key == "numerics.q_samples") {
        c.numerics.q_samples = parse_int(value, key);
    } else if (key == "output.dir") {
        c.output.dir = value;
        c.output.dir_set = true;
    } else if (key == "output.format") {
        if (value == "csv")
            c.output.format = OutputFormat::Csv;
        else if (value == "json")
            c.output.format = OutputFormat::Json;
        else
            throw ConfigError("config key 'output.format': expected csv or json, got '" + value +
                              "'");
    } else if (key == "threads") {
        c.threads = parse_int(value, key);
    } else if (key == "seed") {
        c.seed = static_cast<unsigned>(parse_int(value, key));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void range_check(const ExperimentConfig& c, ValidationReport& rep) {
    auto err = [&](const std::string& m) { rep.errors.push_back(m); };
    if (!(c.model.xi > 0) || c.model.xi > 1) err("model.xi must be in (0, 1]");
    if (!(c.model.phi > 0) || !(c.model.phi < kPi)) err("model.phi must be in (0, pi)");
    if (!(c.model.gamma1d > 0)) err("model.gamma1d must be positive");
    if (c.model.n_atoms < 2) err("model.n_atoms must be >= 2");
    if (!(c.effective.t > 0)) err("effective.t must be positive");
    if (c.effective.Gamma < 0) err("effective.Gamma must be >= 0");
    if (!(c.effective.sigma > 0)) err("effective.sigma must be positive");
    if (!(c.effective.two_phi > 0) || !(c.effective.two_phi < kPi))
        err("effective.two_phi must be in (0, pi)");
    if (c.effective.n_sites < 2) err("effective.n_sites must be >= 2");
    if (c.numerics.r_max < 2) err("numerics.r_max must be >= 2");
    if (c.numerics.k_points < 5) err("numerics.k_points must be >= 5");
    if (c.numerics.grid_size != 0 && c.numerics.grid_size < 4 * c.model.n_atoms)
        err("numerics.grid_size must be 0 (auto) or >= 4*model.n_atoms");
    if (!(c.numerics.peak_threshold > 0) || !(c.numerics.peak_threshold < 1))
        err("numerics.peak_threshold must be in (0, 1)");
    if (!(c.numerics.eig_tol > 0)) err("numerics.eig_tol must be positive");
    if (c.numerics.q_samples < 100) err("numerics.q_samples must be >= 100");
    if (c.threads < 1) err("threads must be >= 1");

    if (c.effective.sigma > kPi / c.effective.n_sites)
        rep.warnings.push_back(
            "effective.sigma exceeds pi/N; robustness against sigma and N is only claimed for "
            "sigma below the finite-size momentum broadening pi/N");
    if (c.model.xi < 0.3)
        rep.warnings.push_back(
            "model.xi below 0.3: the tracked bound branch approaches the scattering continuum "
            "and may require a larger numerics.r_max");
}

ExperimentConfig parse_stream(std::istream& in) {
    ExperimentConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        apply_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

} // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    ExperimentConfig c = parse_stream(in);
    ValidationReport rep;
    range_check(c, rep);
    if (!rep.ok()) throw ConfigError("config '" + path + "' invalid: " + rep.errors.front());
    return c;
}

ValidationReport validate_config_file(const std::string& path) {
    ValidationReport rep;
    std::ifstream in(path);
    if (!in) {
        rep.errors.push_back("cannot open config file '" + path + "'");
        return rep;
    }
    try {
        ExperimentConfig c = parse_stream(in);
        range_check(c, rep);
    } catch (const ConfigError& e) {
        rep.errors.push_back(e.what());
    }
    return rep;
}

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const auto& e : errors) os << "error: " << e << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    if (ok()) os << "ok" << (warnings.empty() ? "" : " (with warnings)") << "\n";
    return os.str();
}

} // namespace cskin
