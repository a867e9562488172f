#ifndef BECGROWTH_MANIFEST_HPP
#define BECGROWTH_MANIFEST_HPP

// =====================================================================
//  becgrowth/manifest.hpp
//
//  Run manifests: a structured plain-text record written next to every
//  output file, holding the fully resolved configuration (presets and
//  flag overrides applied), the seed, the output paths, and the library
//  version.  The manifest plus the binary is sufficient to reproduce
//  every CSV byte for byte; the timestamp line is informational and
//  excluded from reproducibility comparisons.
// =====================================================================

#include <cmath>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "becgrowth/config.hpp"
#include "becgrowth/csv.hpp"
#include "becgrowth/version.hpp"

namespace becgrowth {

// Resolved configuration as ordered key/value pairs, in the same
// section.key vocabulary the config parser accepts.  Feeding these back
// through config_from_keyvalues reproduces the run.
inline std::vector<std::pair<std::string, std::string>> canonical_keyvalues(
    const SimConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    const double two_pi = 2.0 * M_PI;
    kv.emplace_back("species.label", cfg.species.label);
    kv.emplace_back("species.mass_kg", format_g17(cfg.species.mass));
    kv.emplace_back("species.scattering_length_nm",
                    format_g17(cfg.species.scattering_length * 1e9));
    kv.emplace_back("trap.omega_x_hz", format_g17(cfg.trap.omega_x / two_pi));
    kv.emplace_back("trap.omega_y_hz", format_g17(cfg.trap.omega_y / two_pi));
    kv.emplace_back("trap.omega_z_hz", format_g17(cfg.trap.omega_z / two_pi));
    kv.emplace_back("bath.temp_nK", format_g17(cfg.bath.temperature * 1e9));
    kv.emplace_back("bath.mu_nK", format_g17(cfg.bath.chemical_potential /
                                             (PhysicalConstants{}.k_B * 1e-9)));
    kv.emplace_back("bath.eta", format_g17(cfg.bath.eta));
    kv.emplace_back("bath.mode", cfg.bath.mode == BathMode::Depleting ? "depleting" : "static");
    if (cfg.n_total) kv.emplace_back("bath.ntotal", format_g17(*cfg.n_total));
    if (cfg.allow_negative_mu) kv.emplace_back("bath.allow_negative_mu", "true");
    kv.emplace_back("solver.t_end_s", format_g17(cfg.solver.t_end));
    kv.emplace_back("solver.n_initial", format_g17(cfg.solver.n_initial));
    kv.emplace_back("solver.rel_tol", format_g17(cfg.solver.rel_tol));
    kv.emplace_back("solver.abs_tol", format_g17(cfg.solver.abs_tol));
    kv.emplace_back("solver.max_steps", std::to_string(cfg.solver.max_steps));
    if (cfg.seed_given) kv.emplace_back("solver.seed", std::to_string(cfg.seed));
    kv.emplace_back("output.samples", std::to_string(cfg.output.samples));
    kv.emplace_back("output.svg", cfg.output.svg ? "true" : "false");
    if (!cfg.output.out_prefix.empty()) kv.emplace_back("output.out", cfg.output.out_prefix);
    return kv;
}

struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> resolved_config;
    bool seeded = false;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, std::string>> extra;  // subcommand-specific notes
};

inline void write_manifest(const std::string& path, const RunManifest& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("manifest: cannot open " + path + " for writing");
    out << "becgrowth run manifest\n";
    out << "version: " << version_string << "\n";
    out << "subcommand: " << m.subcommand << "\n";
    {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        out << "timestamp: " << buf << " (informational, not part of reproducibility)\n";
    }
    if (m.seeded)
        out << "seed: " << m.seed << "\n";
    else
        out << "seed: none (deterministic run)\n";
    out << "outputs:\n";
    for (const auto& p : m.outputs) out << "  - " << p << "\n";
    if (!m.extra.empty()) {
        out << "notes:\n";
        for (const auto& [k, v] : m.extra) out << "  " << k << ": " << v << "\n";
    }
    out << "config:\n";
    for (const auto& [k, v] : m.resolved_config) out << "  " << k << " = " << v << "\n";
}

}  // namespace becgrowth

#endif  // BECGROWTH_MANIFEST_HPP
