// Growth-equation integrator: latency slope, saturation, step control,
// the exact output grid, depleting-reservoir bookkeeping, and the
// bitwise rate/time rescaling identity of the embedded RK stepper.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <becgrowth/ode.hpp>

#include "test_util.hpp"

using namespace becgrowth;
using testutil::rel_err;

namespace {
const PhysicalConstants consts;

SimConfig base_config(double mu_frac = 0.2) {
    SimConfig cfg;
    cfg.species = rb87_species();
    cfg.trap = isotropic_trap(2.0 * M_PI * 150.0);
    cfg.bath.temperature = 500e-9;
    cfg.bath.chemical_potential = mu_frac * consts.k_B * cfg.bath.temperature;
    cfg.solver.t_end = 1.0;
    cfg.output.samples = 400;
    return cfg;
}
}  // namespace

TEST_CASE("output grid times are exact multiples of the horizon") {
    SimConfig cfg = base_config();
    cfg.output.samples = 97;
    const GrowthTrajectory traj = integrate_growth(cfg, consts);
    REQUIRE(traj.samples.size() == 97);
    for (std::size_t i = 0; i < 97; ++i)
        CHECK(traj.samples[i].t == cfg.solver.t_end * (static_cast<double>(i) / 96.0));
}

TEST_CASE("spontaneous-seed latency: n(t) tracks 2 W+(0) t while n stays small") {
    SimConfig cfg = base_config();
    RateContext ctx(cfg.species, cfg.trap, cfg.bath.temperature, cfg.bath.chemical_potential,
                    consts);
    const double w0 = ctx.w_plus(0.0);
    cfg.solver.t_end = 0.1 / (2.0 * w0);  // horizon chosen so n stays below ~0.1
    cfg.output.samples = 50;
    const GrowthTrajectory traj = integrate_growth(cfg, consts);
    REQUIRE(traj.samples.back().n <= 0.15);
    for (const auto& s : traj.samples) {
        if (s.t == 0.0) continue;
        CHECK(rel_err(s.n, 2.0 * w0 * s.t) < 0.01);
    }
}

TEST_CASE("the curve saturates at the stationary occupation") {
    SimConfig cfg = base_config();
    const GrowthTrajectory traj = integrate_growth(cfg, consts);
    RateContext ctx(cfg.species, cfg.trap, cfg.bath.temperature, cfg.bath.chemical_potential,
                    consts);
    const double ns = ctx.stationary_n();
    CHECK(rel_err(traj.samples.back().n, ns) < 1e-3);

    // and the occupation is monotone nondecreasing from an empty seed
    double prev = -1.0;
    for (const auto& s : traj.samples) {
        CHECK(s.n >= prev - 1e-9 * std::abs(prev));
        prev = s.n;
    }
    CHECK(traj.samples.front().n == 0.0);

    const GrowthMilestones m = extract_milestones(traj);
    CHECK(m.saturated);
    CHECK(m.latency_time > 0.0);
    CHECK(m.t10 > m.latency_time * 0.1);
    CHECK(m.t90 > m.t10);
    CHECK(rel_err(m.growth_time, m.t90 - m.t10) < 1e-12);
    CHECK(m.saturation_n == traj.samples.back().n);
}

TEST_CASE("tightening the tolerance adds steps and converges the endpoint") {
    SimConfig cfg = base_config();
    cfg.solver.rel_tol = 1e-6;
    const GrowthTrajectory loose = integrate_growth(cfg, consts);
    cfg.solver.rel_tol = 1e-10;
    const GrowthTrajectory tight = integrate_growth(cfg, consts);
    CHECK(tight.stats.accepted > loose.stats.accepted);
    CHECK(rel_err(loose.samples.back().n, tight.samples.back().n) < 1e-5);
}

TEST_CASE("step budget violations surface as numerics errors") {
    SimConfig cfg = base_config();
    cfg.solver.max_steps = 10;
    CHECK_THROWS_AS(integrate_growth(cfg, consts), NumericsError);
}

TEST_CASE("scaling rates up by 4 and the horizon down by 4 is bitwise invisible") {
    // every quantity in the controller scales by an exact power of two,
    // so the accepted-step sequence and the sampled occupations must be
    // identical to the last bit
    SimConfig cfg = base_config();
    cfg.solver.t_end = 1.0;
    const GrowthTrajectory ref = integrate_growth(cfg, consts);

    SimConfig fast = cfg;
    fast.solver.t_end = 0.25;
    GrowthOptions opts;
    opts.rate_scale = 4.0;
    const GrowthTrajectory scaled = integrate_growth(fast, consts, opts);

    REQUIRE(scaled.samples.size() == ref.samples.size());
    CHECK(scaled.stats.accepted == ref.stats.accepted);
    CHECK(scaled.stats.rejected == ref.stats.rejected);
    for (std::size_t i = 0; i < ref.samples.size(); ++i) {
        CHECK(scaled.samples[i].n == ref.samples[i].n);
        CHECK(scaled.samples[i].t == 0.25 * ref.samples[i].t);
    }
}

TEST_CASE("static-bath columns report the fixed reservoir") {
    SimConfig cfg = base_config();
    const GrowthTrajectory traj = integrate_growth(cfg, consts);
    for (const auto& s : traj.samples) {
        CHECK(s.bath_temperature == cfg.bath.temperature);
        CHECK(s.bath_mu == cfg.bath.chemical_potential);
        CHECK(std::isnan(s.reservoir_n));
    }
}

TEST_CASE("depleting reservoir: atom and energy ledgers stay closed") {
    SimConfig cfg = base_config();
    cfg.bath.mode = BathMode::Depleting;
    cfg.bath.eta = 8.0;
    cfg.n_total = 2e6;
    cfg.solver.t_end = 2.0;

    const TruncatedBath bath0 = resolve_depleting_bath(cfg, consts);
    const BathMoments m0 = truncated_moments(bath0, consts);
    REQUIRE(rel_err(m0.atom_count, *cfg.n_total) < 1e-10);

    const GrowthTrajectory traj = integrate_growth(cfg, consts);
    for (const auto& s : traj.samples) {
        CHECK(rel_err(s.reservoir_n + s.n, *cfg.n_total) < 1e-9);
        CHECK(rel_err(s.reservoir_energy + s.energy_removed, m0.total_energy) < 1e-9);
    }

    // drained reservoir: mu_bath falls until it meets the condensate level
    const auto& last = traj.samples.back();
    CHECK(last.n > 0.1 * *cfg.n_total);
    CHECK(last.bath_mu < bath0.chemical_potential);
    const ChemPotentialModel model(cfg.species, cfg.trap, consts);
    CHECK(rel_err(model.mu_condensate(last.n), last.bath_mu) < 0.05);

    // the condensate share beats the static-bath run at the same initial mu:
    // the bath heats as it drains low-energy atoms, boosting the rates
    CHECK(last.bath_temperature > cfg.bath.temperature);
}

TEST_CASE("milestone latency shortens as the bath chemical potential rises") {
    double prev = 1e9;
    for (double frac : {0.05, 0.1, 0.2, 0.4}) {
        SimConfig cfg = base_config(frac);
        const GrowthTrajectory traj = integrate_growth(cfg, consts);
        const GrowthMilestones m = extract_milestones(traj);
        REQUIRE(m.saturated);
        CHECK(m.latency_time < prev);
        prev = m.latency_time;
    }
}
