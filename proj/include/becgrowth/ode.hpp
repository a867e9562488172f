#ifndef BECGROWTH_ODE_HPP
#define BECGROWTH_ODE_HPP

// =====================================================================
//  becgrowth/ode.hpp
//
//  Mean-field growth trajectories n(t) from the rate equation
//
//    dn/dt = 2 W+(n) { [1 - e^((mu_n - mu)/kT)] n + 1 }
//
//  integrated with an embedded Dormand-Prince 5(4) pair.  The spontaneous
//  "+1" seeds growth from n = 0; the stimulated term then dominates until
//  mu_n approaches mu and the trajectory saturates at the stationary
//  point of the bracket.
//
//  Numerics
//    - adaptive step, error norm |e| / (abs_tol + rel_tol * max|n|),
//      accept when <= 1, step factor 0.9 * norm^(-1/5) clamped to
//      [0.2, 5.0]; FSAL reuse of the last stage
//    - steps are clipped to land exactly on the requested output grid,
//      so samples are integrator states, not interpolants
//    - a step producing n < 0 is rejected and retried at half the step
//    - grid times are computed as t_end * (i / (samples-1)) and step
//      arithmetic commutes with exact powers of two, so rescaling all
//      rates by 2^k and t_end by 2^-k reproduces trajectories bitwise
//
//  Depleting bath
//    Operator splitting: the bath is frozen during each attempted step;
//    after acceptance the grown atoms dn, each carrying mu_n(n_mid),
//    are removed from the reservoir via couple_step and the rate
//    context is rebuilt at the refit (T, mu).  Per-sample reservoir
//    moments and the cumulative energy ledger are recorded so that
//    conservation of N_nc + n and of the energy budget can be checked
//    a posteriori.
// =====================================================================

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "becgrowth/bath.hpp"
#include "becgrowth/config.hpp"
#include "becgrowth/core.hpp"
#include "becgrowth/rates.hpp"

namespace becgrowth {

struct TrajectorySample {
    double t = 0.0;             // [s]
    double n = 0.0;             // condensate occupation
    double mu_n = 0.0;          // condensate chemical potential [J]
    double w_plus = 0.0;        // forward collision rate [1/s]
    double bath_temperature = 0.0;   // [K]
    double bath_mu = 0.0;            // [J]
    // depleting-bath bookkeeping (NaN in static mode)
    double reservoir_n = std::numeric_limits<double>::quiet_NaN();
    double reservoir_energy = std::numeric_limits<double>::quiet_NaN();
    double energy_removed = std::numeric_limits<double>::quiet_NaN();  // cumulative [J]
};

struct SolverStats {
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t rate_evaluations = 0;
};

struct GrowthTrajectory {
    std::vector<TrajectorySample> samples;
    SolverStats stats;
};

struct GrowthOptions {
    double rate_scale = 1.0;                    // test hook, multiplies W+-
    std::function<double(double)> eta_schedule;  // optional eta(t); only
                                                 // constant schedules are
                                                 // exercised by the tools
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // b - b_hat, the embedded error weights
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

}  // namespace detail

// Derive the depleting-bath initial state from the configured total
// reservoir atom count.  In depleting mode the bath chemical potential
// is not a free input; it is fixed by (n_total, T, eta, trap).
inline TruncatedBath resolve_depleting_bath(const SimConfig& cfg,
                                            const PhysicalConstants& consts = {}) {
    if (!cfg.n_total)
        throw ConfigError(std::vector<ConfigIssue>{
            {"bath.ntotal", "depleting mode requires the reservoir atom count"}});
    TruncatedBath bath;
    bath.temperature = cfg.bath.temperature;
    bath.eta = cfg.bath.eta;
    bath.hbar_omega_bar = consts.hbar * cfg.trap.omega_bar();
    bath.chemical_potential =
        bath_mu_for_count(*cfg.n_total, bath.temperature, bath.eta, bath.hbar_omega_bar, consts);
    return bath;
}

inline GrowthTrajectory integrate_growth(const SimConfig& cfg,
                                         const PhysicalConstants& consts = {},
                                         const GrowthOptions& opts = {}) {
    using D = detail::Dopri5;

    const bool depleting = cfg.bath.mode == BathMode::Depleting;
    TruncatedBath bath;
    double mu_bath = cfg.bath.chemical_potential;
    if (depleting) {
        bath = resolve_depleting_bath(cfg, consts);
        mu_bath = bath.chemical_potential;
    }

    RateContext ctx(cfg.species, cfg.trap, cfg.bath.temperature, mu_bath, consts,
                    opts.rate_scale);

    const double t_end = cfg.solver.t_end;
    const std::size_t samples = cfg.output.samples;
    const double rel = cfg.solver.rel_tol;
    const double abs = cfg.solver.abs_tol;

    GrowthTrajectory traj;
    traj.samples.reserve(samples);

    SolverStats& st = traj.stats;
    auto rhs = [&](double n) {
        ++st.rate_evaluations;
        return ctx.net_growth_rate(n);
    };

    double energy_removed = 0.0;
    auto record = [&](double t, double n) {
        TrajectorySample s;
        s.t = t;
        s.n = n;
        s.mu_n = ctx.mu_model().mu_condensate(n);
        s.w_plus = ctx.w_plus(n);
        s.bath_temperature = ctx.temperature();
        s.bath_mu = ctx.mu_bath();
        if (depleting) {
            const BathMoments m = truncated_moments(bath, consts);
            s.reservoir_n = m.atom_count;
            s.reservoir_energy = m.total_energy;
            s.energy_removed = energy_removed;
        }
        traj.samples.push_back(s);
    };

    double t = 0.0;
    double n = cfg.solver.n_initial;
    double k1 = rhs(n);

    // initial step: a small fraction of the state scale over the slope,
    // capped by the grid spacing
    const double grid_dt = t_end * (1.0 / static_cast<double>(samples - 1));
    double h = grid_dt;
    {
        const double scale = abs + rel * std::fabs(n);
        const double slope = std::fabs(k1);
        if (slope > 0.0) h = std::min(h, 0.1 * scale / slope);
    }

    record(0.0, n);
    std::size_t next_sample = 1;
    std::uint64_t steps = 0;

    while (next_sample < samples) {
        const double t_target =
            t_end * (static_cast<double>(next_sample) / static_cast<double>(samples - 1));
        bool hit_target = false;
        if (t + h >= t_target) {
            h = t_target - t;
            hit_target = true;
        }
        if (!(h > 0.0))
            throw NumericsError("integrate_growth: step size underflow at t=" + std::to_string(t));

        const double k2 = rhs(n + h * (D::a21 * k1));
        const double k3 = rhs(n + h * (D::a31 * k1 + D::a32 * k2));
        const double k4 = rhs(n + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3));
        const double k5 = rhs(n + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4));
        const double k6 =
            rhs(n + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5));
        const double n_new =
            n + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
        const double k7 = rhs(n_new);
        const double err = h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 +
                                D::e7 * k7);

        if (++steps > cfg.solver.max_steps)
            throw NumericsError("integrate_growth: exceeded max_steps=" +
                                std::to_string(cfg.solver.max_steps) + " at t=" +
                                std::to_string(t) + " s (n=" + std::to_string(n) + ")");

        if (n_new < 0.0) {
            // occupation must stay nonnegative; treat as a hard reject
            ++st.rejected;
            h *= 0.5;
            continue;
        }

        const double scale = abs + rel * std::max(std::fabs(n), std::fabs(n_new));
        const double norm = std::fabs(err) / scale;

        if (norm <= 1.0) {
            ++st.accepted;
            const double dn = n_new - n;
            if (depleting && dn != 0.0) {
                // atoms leave the reservoir carrying the condensate
                // chemical potential at the midpoint of the step
                const double mu_mid = ctx.mu_model().mu_condensate(0.5 * (n + n_new));
                if (opts.eta_schedule) bath.eta = opts.eta_schedule(t + h);
                bath = couple_step(bath, dn, mu_mid, consts);
                energy_removed += dn * mu_mid;
                ctx = ctx.with_bath(bath.temperature, bath.chemical_potential);
                k1 = rhs(n_new);  // context changed, FSAL stage is stale
            } else {
                k1 = k7;
            }
            n = n_new;
            if (hit_target) {
                t = t_target;
                record(t, n);
                ++next_sample;
            } else {
                t += h;
            }
        } else {
            ++st.rejected;
        }

        const double factor = std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        h = std::min(h * factor, t_end);
    }

    return traj;
}

// ---------------------------------------------------------------------
//  Milestones
//
//  saturation_n     last sampled occupation
//  saturated        relative change of n over the last 10% of the run
//                   is below 1e-3
//  latency_time     first crossing of seed_threshold
//  t10, t90         first crossings of 0.1 and 0.9 * saturation_n
//  growth_time      t90 - t10
//
//  Crossing times interpolate linearly between samples.  A trajectory
//  that never reaches a threshold leaves that milestone NaN; a flat
//  zero trajectory leaves every crossing NaN.
// ---------------------------------------------------------------------

struct GrowthMilestones {
    double saturation_n = 0.0;
    bool saturated = false;
    double latency_time = std::numeric_limits<double>::quiet_NaN();
    double t10 = std::numeric_limits<double>::quiet_NaN();
    double t90 = std::numeric_limits<double>::quiet_NaN();
    double growth_time = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline double first_crossing(const std::vector<TrajectorySample>& s, double threshold) {
    if (s.empty() || !(threshold > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    if (s.front().n >= threshold) return s.front().t;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].n >= threshold) {
            const double n0 = s[i - 1].n, n1 = s[i].n;
            const double t0 = s[i - 1].t, t1 = s[i].t;
            if (n1 == n0) return t1;
            return t0 + (t1 - t0) * (threshold - n0) / (n1 - n0);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline GrowthMilestones extract_milestones(const GrowthTrajectory& traj,
                                           double seed_threshold = 100.0) {
    GrowthMilestones m;
    const auto& s = traj.samples;
    if (s.empty()) return m;
    m.saturation_n = s.back().n;

    // saturation flag: compare n at 90% of the run against the end
    const double t_late = 0.9 * s.back().t;
    double n_late = s.back().n;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].t >= t_late) {
            const double t0 = s[i - 1].t, t1 = s[i].t;
            const double n0 = s[i - 1].n, n1 = s[i].n;
            n_late = (t1 == t0) ? n1 : n0 + (n1 - n0) * (t_late - t0) / (t1 - t0);
            break;
        }
    }
    if (m.saturation_n > 0.0)
        m.saturated = std::fabs(m.saturation_n - n_late) <= 1e-3 * m.saturation_n;

    m.latency_time = detail::first_crossing(s, seed_threshold);
    m.t10 = detail::first_crossing(s, 0.1 * m.saturation_n);
    m.t90 = detail::first_crossing(s, 0.9 * m.saturation_n);
    if (std::isfinite(m.t10) && std::isfinite(m.t90)) m.growth_time = m.t90 - m.t10;
    return m;
}

}  // namespace becgrowth

#endif  // BECGROWTH_ODE_HPP
