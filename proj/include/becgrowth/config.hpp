#ifndef BECGROWTH_CONFIG_HPP
#define BECGROWTH_CONFIG_HPP

// =====================================================================
//  becgrowth/config.hpp
//
//  Run configuration: the SimConfig aggregate, whole-config validation
//  (returning the complete list of violations, not just the first),
//  and the plain-text configuration file format.
//
//  FILE FORMAT
//    INI-like sections with flat key = value pairs.  '#' starts a
//    comment.  Unknown sections or keys are hard errors: a silently
//    ignored typo in a physics parameter is worse than a failed run.
//
//      [species]
//      preset = rb87              # or mass_kg / scattering_length_nm
//      [trap]
//      omega_x_hz = 150           # linear frequency; stored as 2*pi*f
//      omega_y_hz = 150
//      omega_z_hz = 150
//      [bath]
//      temp_nK = 400
//      mu_frac_kT = 0.1           # exactly one of mu_frac_kT / mu_nK
//      eta = 10
//      mode = static              # static | depleting
//      [solver]
//      t_end_s = 1.0
//      rel_tol = 1e-8
//      [output]
//      samples = 400
//
//    Unit suffixes are part of the key names so a value can never be
//    mistaken for a different scale.
// =====================================================================

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "becgrowth/core.hpp"

namespace becgrowth {

struct SolverOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-4;        // absolute floor on the occupation number scale
    long max_steps = 10'000'000;
    double t_end = 0.0;           // s
    double n_initial = 0.0;
};

struct OutputOptions {
    std::size_t samples = 400;    // output grid points (grow/ssa)
    bool svg = false;
    std::string out_prefix;       // empty = stdout summary only
};

struct SimConfig {
    Species species;
    Trap trap;
    BathState bath;
    SolverOptions solver;
    OutputOptions output;
    std::optional<double> n_total;   // depleting bath: initial reservoir atom count
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool allow_negative_mu = false;  // debug hook for latency-regime studies
};

struct ConfigIssue {
    std::string field;
    std::string message;
};

// Collects every violated invariant; an empty result means the config is
// usable as-is. Running it twice never changes the config (it only reads).
inline std::vector<ConfigIssue> validate_config(const SimConfig& c) {
    std::vector<ConfigIssue> issues;
    auto bad = [&issues](const std::string& f, const std::string& m) {
        issues.push_back({f, m});
    };

    if (!(c.species.mass > 0.0))
        bad("species.mass", "mass must be positive");
    if (!(c.species.scattering_length > 0.0))
        bad("species.scattering_length", "scattering length must be positive");
    if (!(c.trap.omega_x > 0.0) || !(c.trap.omega_y > 0.0) || !(c.trap.omega_z > 0.0))
        bad("trap.omega", "all three trap frequencies must be positive");
    if (!(c.bath.temperature > 0.0))
        bad("bath.temperature", "bath temperature must be positive");
    if (!(c.bath.eta > 0.0))
        bad("bath.eta", "energy cut eta must be positive");
    if (!c.allow_negative_mu && c.bath.chemical_potential < 0.0)
        bad("bath.chemical_potential",
            "negative chemical potential requires allow_negative_mu");
    if (c.bath.temperature > 0.0 && c.bath.eta > 0.0) {
        const PhysicalConstants consts;
        if (c.bath.chemical_potential >= c.bath.eta * consts.k_B * c.bath.temperature)
            bad("bath.chemical_potential",
                "chemical potential must lie below the energy cut eta*k_B*T");
    }
    if (!(c.solver.t_end > 0.0))
        bad("solver.t_end", "t_end must be positive");
    if (!(c.solver.rel_tol > 0.0) || c.solver.rel_tol >= 1e-1)
        bad("solver.rel_tol", "rel_tol must lie in (0, 0.1)");
    if (!(c.solver.abs_tol > 0.0))
        bad("solver.abs_tol", "abs_tol must be positive");
    if (c.solver.max_steps <= 0)
        bad("solver.max_steps", "max_steps must be positive");
    if (c.solver.n_initial < 0.0)
        bad("solver.n_initial", "initial occupation must be nonnegative");
    if (c.output.samples < 2)
        bad("output.samples", "need at least 2 output samples");
    if (c.n_total && !(*c.n_total > 0.0))
        bad("bath.ntotal", "reservoir atom count must be positive");
    if (c.bath.mode == BathMode::Depleting && !c.n_total)
        bad("bath.ntotal", "depleting bath requires the reservoir atom count");
    return issues;
}

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<ConfigIssue> issues)
        : std::runtime_error(format(issues)), issues_(std::move(issues)) {}
    const std::vector<ConfigIssue>& issues() const { return issues_; }

  private:
    static std::string format(const std::vector<ConfigIssue>& issues) {
        std::ostringstream os;
        os << "invalid configuration (" << issues.size() << " issue"
           << (issues.size() == 1 ? "" : "s") << "):";
        for (const auto& i : issues) os << "\n  " << i.field << ": " << i.message;
        return os.str();
    }
    std::vector<ConfigIssue> issues_;
};

inline const SimConfig& require_valid(const SimConfig& c) {
    auto issues = validate_config(c);
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return c;
}

// ---------------------------------------------------------------- parsing

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

inline bool parse_u64(const std::string& s, std::uint64_t& out) {
    try {
        std::size_t pos = 0;
        out = std::stoull(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

}  // namespace detail

// Raw section.key -> value map, before typing. Kept public so the CLI can
// apply flag overrides between parsing and typing.
using ConfigKeyValues = std::map<std::string, std::string>;

inline ConfigKeyValues parse_config_text(const std::string& text,
                                         std::vector<ConfigIssue>& issues) {
    static const std::map<std::string, std::vector<std::string>> known = {
        {"species", {"preset", "label", "mass_kg", "scattering_length_nm"}},
        {"trap", {"omega_x_hz", "omega_y_hz", "omega_z_hz"}},
        {"bath", {"temp_nK", "mu_frac_kT", "mu_nK", "eta", "mode", "ntotal",
                  "allow_negative_mu"}},
        {"solver", {"t_end_s", "n_initial", "rel_tol", "abs_tol", "max_steps", "seed"}},
        {"output", {"samples", "svg", "out"}},
    };

    ConfigKeyValues kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                issues.push_back({"line " + std::to_string(lineno), "malformed section header"});
                continue;
            }
            section = detail::trim(line.substr(1, line.size() - 2));
            if (!known.count(section)) {
                issues.push_back({"line " + std::to_string(lineno),
                                  "unknown section [" + section + "]"});
                section = "!skip";  // swallow its keys; the header issue suffices
            }
            continue;
        }
        if (section == "!skip") continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back({"line " + std::to_string(lineno), "expected key = value"});
            continue;
        }
        if (section.empty()) {
            issues.push_back({"line " + std::to_string(lineno), "key outside any section"});
            continue;
        }
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        const auto& keys = known.at(section);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            issues.push_back({section + "." + key, "unknown key"});
            continue;
        }
        std::string full = section + "." + key;
        if (kv.count(full))
            issues.push_back({full, "duplicate key"});
        kv[full] = value;
    }
    return kv;
}

// Types the raw key/value map into a SimConfig. Appends an issue for every
// malformed value and every inconsistent combination it can detect; the
// returned config is only meaningful when `issues` stays empty.
inline SimConfig config_from_keyvalues(const ConfigKeyValues& kv,
                                       std::vector<ConfigIssue>& issues) {
    SimConfig cfg;
    auto get = [&kv](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    auto get_double = [&](const char* key) -> std::optional<double> {
        auto raw = get(key);
        if (!raw) return std::nullopt;
        double v;
        if (!detail::parse_double(*raw, v)) {
            issues.push_back({key, "not a number: '" + *raw + "'"});
            return std::nullopt;
        }
        return v;
    };

    if (auto preset = get("species.preset")) {
        if (*preset == "rb87") cfg.species = rb87_species();
        else if (*preset == "na23") cfg.species = na23_species();
        else issues.push_back({"species.preset", "unknown preset '" + *preset +
                               "' (known: rb87, na23)"});
    }
    if (auto m = get_double("species.mass_kg")) cfg.species.mass = *m;
    if (auto a = get_double("species.scattering_length_nm"))
        cfg.species.scattering_length = *a * 1e-9;
    if (auto label = get("species.label")) cfg.species.label = *label;
    if (cfg.species.label.empty()) cfg.species.label = "custom";

    if (auto f = get_double("trap.omega_x_hz")) cfg.trap.omega_x = 2.0 * M_PI * *f;
    if (auto f = get_double("trap.omega_y_hz")) cfg.trap.omega_y = 2.0 * M_PI * *f;
    if (auto f = get_double("trap.omega_z_hz")) cfg.trap.omega_z = 2.0 * M_PI * *f;

    const PhysicalConstants consts;
    std::optional<double> temp_nK = get_double("bath.temp_nK");
    if (temp_nK) cfg.bath.temperature = *temp_nK * 1e-9;
    std::optional<double> mu_frac = get_double("bath.mu_frac_kT");
    std::optional<double> mu_nK = get_double("bath.mu_nK");
    if (mu_frac && mu_nK)
        issues.push_back({"bath.mu_frac_kT", "give exactly one of mu_frac_kT and mu_nK"});
    if (mu_frac) {
        if (cfg.bath.temperature > 0.0)
            cfg.bath.chemical_potential = *mu_frac * consts.k_B * cfg.bath.temperature;
        else
            issues.push_back({"bath.mu_frac_kT", "requires bath.temp_nK"});
    }
    if (mu_nK) cfg.bath.chemical_potential = *mu_nK * 1e-9 * consts.k_B;
    if (auto e = get_double("bath.eta")) cfg.bath.eta = *e;
    if (auto mode = get("bath.mode")) {
        if (*mode == "static") cfg.bath.mode = BathMode::Static;
        else if (*mode == "depleting") cfg.bath.mode = BathMode::Depleting;
        else issues.push_back({"bath.mode", "unknown mode '" + *mode +
                               "' (known: static, depleting)"});
    }
    if (auto n = get_double("bath.ntotal")) cfg.n_total = *n;
    if (auto flag = get("bath.allow_negative_mu")) {
        if (*flag == "true") cfg.allow_negative_mu = true;
        else if (*flag == "false") cfg.allow_negative_mu = false;
        else issues.push_back({"bath.allow_negative_mu", "expected true or false"});
    }

    if (auto t = get_double("solver.t_end_s")) cfg.solver.t_end = *t;
    if (auto n0 = get_double("solver.n_initial")) cfg.solver.n_initial = *n0;
    if (auto r = get_double("solver.rel_tol")) cfg.solver.rel_tol = *r;
    if (auto a = get_double("solver.abs_tol")) cfg.solver.abs_tol = *a;
    if (auto ms = get_double("solver.max_steps")) cfg.solver.max_steps = static_cast<long>(*ms);
    if (auto s = get("solver.seed")) {
        std::uint64_t v;
        if (detail::parse_u64(*s, v)) {
            cfg.seed = v;
            cfg.seed_given = true;
        } else {
            issues.push_back({"solver.seed", "not an unsigned integer: '" + *s + "'"});
        }
    }

    if (auto s = get_double("output.samples"))
        cfg.output.samples = static_cast<std::size_t>(*s);
    if (auto flag = get("output.svg")) {
        if (*flag == "true") cfg.output.svg = true;
        else if (*flag == "false") cfg.output.svg = false;
        else issues.push_back({"output.svg", "expected true or false"});
    }
    if (auto o = get("output.out")) cfg.output.out_prefix = *o;

    return cfg;
}

inline ConfigKeyValues load_config_keyvalues(const std::string& path,
                                             std::vector<ConfigIssue>& issues) {
    std::ifstream in(path);
    if (!in) {
        issues.push_back({path, "cannot open configuration file"});
        return {};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), issues);
}

inline SimConfig load_config_file(const std::string& path,
                                  std::vector<ConfigIssue>& issues) {
    auto kv = load_config_keyvalues(path, issues);
    return config_from_keyvalues(kv, issues);
}

}  // namespace becgrowth

#endif  // BECGROWTH_CONFIG_HPP
