#ifndef BECGROWTH_CLI_APP_HPP
#define BECGROWTH_CLI_APP_HPP

// =====================================================================
//  becgrowth/cli_app.hpp
//
//  The command-line front end, kept in the library so tests can drive
//  the exact command paths in-process.  Subcommands:
//
//    grow      mean-field growth trajectory -> CSV (+SVG) + milestones
//    ssa       stochastic ensemble          -> ensemble + latency CSVs
//    validate  self-check suites            -> pass/fail table
//    sweep     milestone grid over physics axes -> one CSV row per point
//
//  Flags and config files share one vocabulary: every flag maps onto a
//  section.key of the config format and the merged key/value set is
//  typed and validated in a single place, so a typo fails identically
//  whether it came from a file or the command line.  Flags win over
//  file values.
//
//  Exit codes: 0 ok, 1 validation failure, 2 usage/config error,
//  3 runtime or convergence error.
// =====================================================================

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <deque>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "becgrowth/bath.hpp"
#include "becgrowth/config.hpp"
#include "becgrowth/core.hpp"
#include "becgrowth/csv.hpp"
#include "becgrowth/manifest.hpp"
#include "becgrowth/ode.hpp"
#include "becgrowth/rates.hpp"
#include "becgrowth/ssa.hpp"
#include "becgrowth/svg.hpp"
#include "becgrowth/validate.hpp"
#include "becgrowth/version.hpp"

namespace becgrowth {

namespace cli_detail {

// One CLI flag bound to a config key; the raw string is typed later by
// config_from_keyvalues so file and flag inputs share validation.
struct FlagBinding {
    std::string key;
    std::string value;
    CLI::Option* opt = nullptr;
};

class FlagSet {
  public:
    void bind(CLI::App* sub, const std::string& flag, const std::string& key,
              const std::string& desc) {
        bindings_.push_back({key, "", nullptr});
        FlagBinding& b = bindings_.back();
        b.opt = sub->add_option(flag, b.value, desc);
    }
    void bind_flag(CLI::App* sub, const std::string& flag, const std::string& key,
                   const std::string& desc) {
        bindings_.push_back({key, "true", nullptr});
        FlagBinding& b = bindings_.back();
        b.opt = sub->add_flag(flag, desc);
    }
    // isotropic shorthand: one frequency fans out to all three axes
    void bind_isotropic(CLI::App* sub, const std::string& flag, const std::string& desc) {
        iso_ = {"", "", nullptr};
        iso_.opt = sub->add_option(flag, iso_.value, desc);
    }

    void overlay(ConfigKeyValues& kv) const {
        for (const auto& b : bindings_)
            if (b.opt && b.opt->count()) kv[b.key] = b.value;
        if (iso_.opt && iso_.opt->count())
            for (const char* k : {"trap.omega_x_hz", "trap.omega_y_hz", "trap.omega_z_hz"})
                kv[k] = iso_.value;
    }

  private:
    std::deque<FlagBinding> bindings_;
    FlagBinding iso_;
};

inline void attach_physics_flags(CLI::App* sub, FlagSet& fs, std::string& config_file) {
    sub->add_option("--config", config_file, "config file (key = value sections)");
    fs.bind(sub, "--preset", "species.preset", "species preset: rb87 or na23");
    fs.bind(sub, "--mass-kg", "species.mass_kg", "atomic mass [kg]");
    fs.bind(sub, "--a-nm", "species.scattering_length_nm", "s-wave scattering length [nm]");
    fs.bind_isotropic(sub, "--omega-hz", "isotropic trap frequency [Hz]");
    fs.bind(sub, "--omega-x-hz", "trap.omega_x_hz", "trap frequency, x [Hz]");
    fs.bind(sub, "--omega-y-hz", "trap.omega_y_hz", "trap frequency, y [Hz]");
    fs.bind(sub, "--omega-z-hz", "trap.omega_z_hz", "trap frequency, z [Hz]");
    fs.bind(sub, "--temp-nK", "bath.temp_nK", "bath temperature [nK]");
    fs.bind(sub, "--mu-frac-kT", "bath.mu_frac_kT", "bath chemical potential as mu/kT");
    fs.bind(sub, "--mu-nK", "bath.mu_nK", "bath chemical potential [nK units of k_B]");
    fs.bind(sub, "--eta", "bath.eta", "evaporation cut eta (E_cut = eta kT)");
    fs.bind(sub, "--bath", "bath.mode", "bath mode: static or depleting");
    fs.bind(sub, "--ntotal", "bath.ntotal", "reservoir atom count (depleting mode)");
    fs.bind_flag(sub, "--allow-negative-mu", "bath.allow_negative_mu",
                 "permit mu < 0 (latency-regime studies)");
    fs.bind(sub, "--t-end-s", "solver.t_end_s", "integration horizon [s]");
    fs.bind(sub, "--n0", "solver.n_initial", "initial condensate occupation");
    fs.bind(sub, "--rel-tol", "solver.rel_tol", "relative step tolerance");
    fs.bind(sub, "--abs-tol", "solver.abs_tol", "absolute step tolerance [atoms]");
    fs.bind(sub, "--max-steps", "solver.max_steps", "step budget");
    fs.bind(sub, "--samples", "output.samples", "output grid points");
    fs.bind_flag(sub, "--svg", "output.svg", "emit an SVG growth plot");
    fs.bind(sub, "--out", "output.out", "output path prefix");
    fs.bind(sub, "--seed", "solver.seed", "RNG master seed");
}

inline SimConfig build_config(const FlagSet& fs, const std::string& config_file) {
    std::vector<ConfigIssue> issues;
    ConfigKeyValues kv;
    if (!config_file.empty()) kv = load_config_keyvalues(config_file, issues);
    if (!issues.empty()) throw ConfigError(issues);
    fs.overlay(kv);
    SimConfig cfg = config_from_keyvalues(kv, issues);
    if (!issues.empty()) throw ConfigError(issues);
    return cfg;
}

inline std::uint64_t generate_seed() {
    std::random_device rd;
    const std::uint64_t t = static_cast<std::uint64_t>(std::time(nullptr));
    return splitmix64(t ^ (static_cast<std::uint64_t>(rd()) << 32 ^ rd()));
}

inline void finalize_and_validate(SimConfig& cfg, const PhysicalConstants& consts) {
    if (cfg.bath.mode == BathMode::Depleting && cfg.n_total) {
        // in depleting mode the initial bath mu is fixed by the
        // reservoir count, not by the mu flags
        cfg.bath.chemical_potential =
            resolve_depleting_bath(cfg, consts).chemical_potential;
    }
    const auto issues = validate_config(cfg);
    if (!issues.empty()) {
        std::vector<ConfigIssue> annotated = issues;
        if (cfg.bath.mode == BathMode::Depleting)
            for (auto& i : annotated)
                if (i.field == "bath.chemical_potential")
                    i.message += " (derived from bath.ntotal; a larger reservoir raises mu)";
        throw ConfigError(annotated);
    }
}

inline std::string trajectory_csv_path(const std::string& prefix) {
    return prefix + ".trajectory.csv";
}

inline void write_trajectory_csv(const std::string& path, const GrowthTrajectory& traj,
                                 bool depleting) {
    std::vector<std::string> cols = {"t_s", "n", "mu_n_J", "w_plus_per_s", "bath_T_K",
                                     "bath_mu_J"};
    if (depleting) {
        cols.push_back("reservoir_n");
        cols.push_back("reservoir_E_J");
        cols.push_back("energy_removed_J");
    }
    CsvWriter csv(path, depleting ? "trajectory-depleting" : "trajectory", 1, cols);
    for (const auto& s : traj.samples) {
        csv.field(s.t).field(s.n).field(s.mu_n).field(s.w_plus).field(s.bath_temperature)
            .field(s.bath_mu);
        if (depleting)
            csv.field(s.reservoir_n).field(s.reservoir_energy).field(s.energy_removed);
        csv.end_row();
    }
}

inline void write_milestones_csv(const std::string& path, const GrowthMilestones& m) {
    CsvWriter csv(path, "milestones", 1,
                  {"saturation_n", "saturated", "latency_s", "t10_s", "t90_s", "growth_time_s"});
    csv.field(m.saturation_n).field(m.saturated).field(m.latency_time).field(m.t10).field(m.t90)
        .field(m.growth_time);
    csv.end_row();
}

inline int do_grow(SimConfig cfg) {
    if (cfg.output.out_prefix.empty())
        throw std::invalid_argument("grow requires --out (output path prefix)");
    const PhysicalConstants consts;
    finalize_and_validate(cfg, consts);

    const GrowthTrajectory traj = integrate_growth(cfg, consts);
    const GrowthMilestones mile = extract_milestones(traj);
    const bool depleting = cfg.bath.mode == BathMode::Depleting;

    RunManifest man;
    man.subcommand = "grow";
    man.resolved_config = canonical_keyvalues(cfg);
    man.seeded = cfg.seed_given;
    man.seed = cfg.seed;

    const std::string traj_path = trajectory_csv_path(cfg.output.out_prefix);
    write_trajectory_csv(traj_path, traj, depleting);
    man.outputs.push_back(traj_path);

    const std::string mile_path = cfg.output.out_prefix + ".milestones.csv";
    write_milestones_csv(mile_path, mile);
    man.outputs.push_back(mile_path);

    if (cfg.output.svg) {
        std::vector<double> t, n;
        for (const auto& s : traj.samples) {
            t.push_back(s.t);
            n.push_back(s.n);
        }
        const std::string svg_path = cfg.output.out_prefix + ".svg";
        write_growth_svg(svg_path, t, n, "condensate growth (" + cfg.species.label + ")");
        man.outputs.push_back(svg_path);
    }

    man.extra.emplace_back("saturation_n", format_g17(mile.saturation_n));
    man.extra.emplace_back("saturated", mile.saturated ? "yes" : "no");
    man.extra.emplace_back("growth_time_s", format_g17(mile.growth_time));
    man.extra.emplace_back("steps_accepted", std::to_string(traj.stats.accepted));
    man.extra.emplace_back("steps_rejected", std::to_string(traj.stats.rejected));
    man.extra.emplace_back("rate_evaluations", std::to_string(traj.stats.rate_evaluations));
    write_manifest(cfg.output.out_prefix + ".manifest.txt", man);
    return 0;
}

inline int do_ssa(SimConfig cfg, std::size_t trajectories, unsigned threads, bool bands,
                  double threshold) {
    if (cfg.output.out_prefix.empty())
        throw std::invalid_argument("ssa requires --out (output path prefix)");
    if (cfg.bath.mode == BathMode::Depleting)
        throw std::invalid_argument(
            "ssa supports static baths only; the depleting reservoir is a mean-field "
            "construction");
    const PhysicalConstants consts;
    finalize_and_validate(cfg, consts);

    bool seed_generated = false;
    if (!cfg.seed_given) {
        cfg.seed = cli_detail::generate_seed();
        cfg.seed_given = true;
        seed_generated = true;
    }

    RateContext ctx(cfg.species, cfg.trap, cfg.bath.temperature, cfg.bath.chemical_potential,
                    consts);
    const auto n0 = static_cast<std::int64_t>(cfg.solver.n_initial);
    const EnsembleStats ens =
        ssa_ensemble(ctx, n0, cfg.solver.t_end, cfg.output.samples, trajectories, cfg.seed,
                     threads, bands, threshold);

    RunManifest man;
    man.subcommand = "ssa";
    man.resolved_config = canonical_keyvalues(cfg);
    man.seeded = true;
    man.seed = cfg.seed;

    const std::string ens_path = cfg.output.out_prefix + ".ensemble.csv";
    {
        CsvWriter csv(ens_path, "ssa-ensemble", 1,
                      {"t_s", "mean_n", "var_n", "band10_n", "band50_n", "band90_n"});
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = 0; j < ens.t.size(); ++j) {
            csv.field(ens.t[j]).field(ens.mean[j]).field(ens.variance[j]);
            if (bands)
                csv.field(ens.band_low[j]).field(ens.band_median[j]).field(ens.band_high[j]);
            else
                csv.field(nan).field(nan).field(nan);
            csv.end_row();
        }
    }
    man.outputs.push_back(ens_path);

    const std::string lat_path = cfg.output.out_prefix + ".latency.csv";
    {
        std::vector<double> reached;
        for (double fp : ens.first_passage)
            if (std::isfinite(fp)) reached.push_back(fp);
        std::sort(reached.begin(), reached.end());
        CsvWriter csv(lat_path, "ssa-latency-histogram", 1, {"t_lo_s", "t_hi_s", "count"});
        if (reached.size() >= 2 && reached.back() > reached.front()) {
            const std::size_t nbins = std::min<std::size_t>(30, reached.size());
            const double lo = reached.front(), hi = reached.back();
            const double width = (hi - lo) / static_cast<double>(nbins);
            std::vector<long long> count(nbins, 0);
            for (double fp : reached) {
                auto b = static_cast<std::size_t>((fp - lo) / width);
                if (b >= nbins) b = nbins - 1;
                ++count[b];
            }
            for (std::size_t b = 0; b < nbins; ++b) {
                csv.field(lo + width * static_cast<double>(b))
                    .field(lo + width * static_cast<double>(b + 1))
                    .field(count[b]);
                csv.end_row();
            }
        } else if (reached.size() == 1) {
            csv.field(reached.front()).field(reached.front()).field(1ll);
            csv.end_row();
        }
        man.extra.emplace_back("latency_threshold_n", format_g17(threshold));
        man.extra.emplace_back("latency_reached",
                               std::to_string(reached.size()) + " of " +
                                   std::to_string(ens.first_passage.size()));
    }
    man.outputs.push_back(lat_path);

    if (trajectories == 1) {
        // single-trajectory runs also get the raw event log; the stream
        // index matches the ensemble member, so the paths agree
        BirthDeathChain chain = make_condensate_chain(ctx);
        RandomStream rng(cfg.seed, 0);
        std::vector<SsaEvent> events;
        ssa_trajectory(chain, n0, cfg.solver.t_end, cfg.output.samples, rng, threshold,
                       2'000'000'000ull, &events);
        const std::string ev_path = cfg.output.out_prefix + ".events.csv";
        CsvWriter csv(ev_path, "ssa-events", 1, {"t_s", "n", "direction"});
        for (const auto& e : events) {
            csv.field(e.t).field(static_cast<long long>(e.n))
                .field(static_cast<long long>(e.direction));
            csv.end_row();
        }
        man.outputs.push_back(ev_path);
    }

    man.extra.emplace_back("trajectories", std::to_string(trajectories));
    man.extra.emplace_back("total_events", std::to_string(ens.total_events));
    man.extra.emplace_back("seed_generated", seed_generated ? "yes" : "no");
    man.extra.emplace_back("determinism", "results independent of --threads");
    write_manifest(cfg.output.out_prefix + ".manifest.txt", man);
    return 0;
}

inline int do_validate(const std::string& suite, std::size_t samples, std::uint64_t seed,
                       const std::string& out_prefix) {
    ValidationOptions opts;
    opts.mc_samples = samples;
    opts.seed = seed;
    const std::vector<ValidationRow> rows = run_validation_suite(suite, opts);

    std::size_t failed = 0;
    std::printf("%-18s %-36s %14s %14s %10s  %s\n", "suite", "check", "measured", "reference",
                "tolerance", "result");
    for (const auto& r : rows) {
        if (!r.pass) ++failed;
        std::printf("%-18s %-36s %14.6g %14.6g %10.3g  %s%s%s\n", r.suite.c_str(),
                    r.check.c_str(), r.measured, r.reference, r.tolerance,
                    r.pass ? "PASS" : "FAIL", r.note.empty() ? "" : "  # ",
                    r.note.c_str());
    }
    std::printf("%zu checks, %zu failed\n", rows.size(), failed);

    if (!out_prefix.empty()) {
        RunManifest man;
        man.subcommand = "validate";
        man.seeded = true;
        man.seed = seed;
        const std::string csv_path = out_prefix + ".validation.csv";
        {
            CsvWriter csv(csv_path, "validation", 1,
                          {"suite", "check", "measured", "reference", "tolerance", "pass"});
            for (const auto& r : rows) {
                csv.field(r.suite).field(r.check).field(r.measured).field(r.reference)
                    .field(r.tolerance).field(r.pass);
                csv.end_row();
            }
        }
        man.outputs.push_back(csv_path);
        if (suite == "gpe" || suite == "all") {
            // radial profile of the reference ground state, for inspection
            const GpeGroundState gs =
                solve_gpe_ground_state(rb87_species(), isotropic_trap(2.0 * M_PI * 100.0), 1e6);
            const std::string prof_path = out_prefix + ".gpe_profile.csv";
            CsvWriter csv(prof_path, "gpe-profile", 1, {"r_m", "xi"});
            for (std::size_t i = 0; i < gs.r.size(); ++i) {
                csv.field(gs.r[i]).field(gs.xi[i]);
                csv.end_row();
            }
            man.outputs.push_back(prof_path);
        }
        man.extra.emplace_back("suite", suite);
        man.extra.emplace_back("mc_samples", std::to_string(samples));
        man.extra.emplace_back("checks", std::to_string(rows.size()));
        man.extra.emplace_back("failed", std::to_string(failed));
        write_manifest(out_prefix + ".manifest.txt", man);
    }
    return failed == 0 ? 0 : 1;
}

struct SweepAxes {
    std::vector<double> temp_nK;
    std::vector<double> mu_frac;
    std::vector<double> eta;
    std::vector<double> a_nm;
    std::vector<double> omega_hz;
};

inline std::vector<double> parse_value_list(const std::string& text, const std::string& flag) {
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        double v;
        if (!detail::parse_double(item, v))
            throw std::invalid_argument(flag + ": not a number: '" + item + "'");
        vals.push_back(v);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    if (vals.empty()) throw std::invalid_argument(flag + ": empty list");
    return vals;
}

inline int do_sweep(SimConfig base, bool base_mu_is_frac, const SweepAxes& axes,
                    unsigned threads, std::size_t max_points, const std::string& out_prefix) {
    if (out_prefix.empty()) throw std::invalid_argument("sweep requires --out");
    const PhysicalConstants consts;

    const double base_kT = consts.k_B * base.bath.temperature;
    const double base_frac = base_kT > 0.0 ? base.bath.chemical_potential / base_kT : 0.0;

    if (!axes.temp_nK.empty() && axes.mu_frac.empty() && !base_mu_is_frac &&
        base.bath.mode == BathMode::Static)
        throw std::invalid_argument(
            "sweep over temperature fixes mu/kT, so give the base chemical potential as "
            "--mu-frac-kT");

    // a static reservoir never feels the cut, so every eta row would repeat
    if (!axes.eta.empty() && base.bath.mode == BathMode::Static)
        throw std::invalid_argument("sweep over eta needs --bath depleting");

    auto axis_or = [](const std::vector<double>& ax, double fallback) {
        return ax.empty() ? std::vector<double>{fallback} : ax;
    };
    const auto temps = axis_or(axes.temp_nK, base.bath.temperature * 1e9);
    const auto fracs = axis_or(axes.mu_frac, base_frac);
    const auto etas = axis_or(axes.eta, base.bath.eta);
    const auto lengths = axis_or(axes.a_nm, base.species.scattering_length * 1e9);
    const auto omegas = axis_or(axes.omega_hz, base.trap.omega_bar() / (2.0 * M_PI));

    const std::size_t total =
        temps.size() * fracs.size() * etas.size() * lengths.size() * omegas.size();
    if (total > max_points)
        throw std::invalid_argument("sweep grid holds " + std::to_string(total) +
                                    " points, above the cap of " + std::to_string(max_points) +
                                    " (--max-points)");

    struct Point {
        double temp_nK, frac, eta, a_nm, omega_hz;
        SimConfig cfg;
    };
    std::vector<Point> points;
    points.reserve(total);
    for (double T : temps)
        for (double f : fracs)
            for (double e : etas)
                for (double a : lengths)
                    for (double w : omegas) {
                        SimConfig cfg = base;
                        cfg.bath.temperature = T * 1e-9;
                        cfg.bath.chemical_potential = f * consts.k_B * cfg.bath.temperature;
                        cfg.bath.eta = e;
                        cfg.species.scattering_length = a * 1e-9;
                        // an explicit frequency axis means isotropic points;
                        // otherwise the base trap passes through untouched
                        if (!axes.omega_hz.empty()) cfg.trap = isotropic_trap(2.0 * M_PI * w);
                        points.push_back({T, f, e, a, w, std::move(cfg)});
                    }

    // all points must be valid before any thread starts
    for (auto& p : points) finalize_and_validate(p.cfg, consts);

    std::vector<GrowthMilestones> results(points.size());
    std::vector<std::string> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                const GrowthTrajectory traj = integrate_growth(points[i].cfg, consts);
                results[i] = extract_milestones(traj);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    unsigned hw = threads ? threads : std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    hw = std::min<unsigned>(hw, static_cast<unsigned>(points.size()));
    if (hw <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < hw; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!errors[i].empty())
            throw NumericsError("sweep point " + std::to_string(i) + " failed: " + errors[i]);

    const std::string csv_path = out_prefix + ".sweep.csv";
    {
        CsvWriter csv(csv_path, "sweep-milestones", 1,
                      {"temp_nK", "mu_over_kT", "eta", "a_nm", "omega_bar_hz", "saturation_n",
                       "saturated", "latency_s", "t10_s", "t90_s", "growth_time_s"});
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            const auto& m = results[i];
            csv.field(p.temp_nK).field(p.frac).field(p.eta).field(p.a_nm).field(p.omega_hz)
                .field(m.saturation_n).field(m.saturated).field(m.latency_time).field(m.t10)
                .field(m.t90).field(m.growth_time);
            csv.end_row();
        }
    }
    RunManifest man;
    man.subcommand = "sweep";
    man.resolved_config = canonical_keyvalues(base);
    man.outputs.push_back(csv_path);
    man.extra.emplace_back("points", std::to_string(points.size()));
    man.extra.emplace_back("row_order", "temp, mu_frac, eta, a, omega (nested, fixed)");
    man.extra.emplace_back("determinism", "row values independent of --threads");
    write_manifest(out_prefix + ".manifest.txt", man);
    return 0;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"condensate formation kinetics: growth curves, stochastic ensembles, "
                 "and self-validation oracles"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    auto* grow = app.add_subcommand("grow", "integrate a mean-field growth trajectory");
    cli_detail::FlagSet grow_flags;
    std::string grow_config;
    cli_detail::attach_physics_flags(grow, grow_flags, grow_config);

    auto* ssa = app.add_subcommand("ssa", "sample stochastic growth trajectories");
    cli_detail::FlagSet ssa_flags;
    std::string ssa_config;
    cli_detail::attach_physics_flags(ssa, ssa_flags, ssa_config);
    std::size_t trajectories = 100;
    unsigned ssa_threads = 0;
    double threshold = 100.0;
    bool no_bands = false;
    ssa->add_option("--trajectories", trajectories, "ensemble size M");
    ssa->add_option("--threads", ssa_threads, "worker threads (0 = hardware)");
    ssa->add_option("--latency-threshold", threshold, "first-passage occupation threshold");
    ssa->add_flag("--no-bands", no_bands, "skip quantile bands (saves memory on huge runs)");

    auto* validate = app.add_subcommand("validate", "run a self-check suite");
    std::string suite = "all";
    double validate_samples = 1e6;
    std::uint64_t validate_seed = 987'654'321ull;
    std::string validate_out;
    validate->add_option("--suite", suite,
                         "bessel | cut-fractions | detailed-balance | collision-mc | gpe | "
                         "retherm | all");
    validate->add_option("--samples", validate_samples, "MC samples per oracle point");
    validate->add_option("--seed", validate_seed, "oracle RNG seed");
    validate->add_option("--out", validate_out, "also write the report as CSV");

    auto* sweep = app.add_subcommand("sweep", "milestone grid over physics axes");
    cli_detail::FlagSet sweep_flags;
    std::string sweep_config;
    cli_detail::attach_physics_flags(sweep, sweep_flags, sweep_config);
    std::string ax_temp, ax_mu, ax_eta, ax_a, ax_omega;
    unsigned sweep_threads = 0;
    std::size_t max_points = 4096;
    sweep->add_option("--sweep-temp-nK", ax_temp, "comma list of temperatures [nK]");
    sweep->add_option("--sweep-mu-frac", ax_mu, "comma list of mu/kT values");
    sweep->add_option("--sweep-eta", ax_eta, "comma list of eta values");
    sweep->add_option("--sweep-a-nm", ax_a, "comma list of scattering lengths [nm]");
    sweep->add_option("--sweep-omega-hz", ax_omega, "comma list of isotropic frequencies [Hz]");
    sweep->add_option("--threads", sweep_threads, "worker threads (0 = hardware)");
    sweep->add_option("--max-points", max_points, "refuse grids larger than this");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("becgrow");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*grow) return cli_detail::do_grow(cli_detail::build_config(grow_flags, grow_config));
        if (*ssa) {
            SimConfig cfg = cli_detail::build_config(ssa_flags, ssa_config);
            return cli_detail::do_ssa(cfg, trajectories, ssa_threads, !no_bands, threshold);
        }
        if (*validate)
            return cli_detail::do_validate(suite, static_cast<std::size_t>(validate_samples),
                                           validate_seed, validate_out);
        if (*sweep) {
            // reproduce the merged key/value view so the mu form (fraction
            // vs absolute) is known no matter whether it came from the
            // config file or a flag
            std::vector<ConfigIssue> issues;
            ConfigKeyValues kv;
            if (!sweep_config.empty()) kv = load_config_keyvalues(sweep_config, issues);
            if (!issues.empty()) throw ConfigError(issues);
            sweep_flags.overlay(kv);
            SimConfig cfg = config_from_keyvalues(kv, issues);
            if (!issues.empty()) throw ConfigError(issues);
            const bool mu_is_frac = kv.count("bath.mu_frac_kT") > 0 || !kv.count("bath.mu_nK");

            cli_detail::SweepAxes axes;
            if (!ax_temp.empty())
                axes.temp_nK = cli_detail::parse_value_list(ax_temp, "--sweep-temp-nK");
            if (!ax_mu.empty()) axes.mu_frac = cli_detail::parse_value_list(ax_mu, "--sweep-mu-frac");
            if (!ax_eta.empty()) axes.eta = cli_detail::parse_value_list(ax_eta, "--sweep-eta");
            if (!ax_a.empty()) axes.a_nm = cli_detail::parse_value_list(ax_a, "--sweep-a-nm");
            if (!ax_omega.empty())
                axes.omega_hz = cli_detail::parse_value_list(ax_omega, "--sweep-omega-hz");
            return cli_detail::do_sweep(cfg, mu_is_frac, axes, sweep_threads, max_points,
                                        cfg.output.out_prefix);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error:\n" << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "numerics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace becgrowth

#endif  // BECGROWTH_CLI_APP_HPP
