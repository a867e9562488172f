#ifndef BECGROWTH_GPE_HPP
#define BECGROWTH_GPE_HPP

// =====================================================================
//  becgrowth/gpe.hpp
//
//  Spherically symmetric condensate ground states from the stationary
//  Gross-Pitaevskii equation
//
//    [ -hbar^2/2m lap + V(r) + n u |xi|^2 ] xi = mu xi,   int |xi|^2 = 1
//
//  with V(r) = m wbar^2 r^2 / 2 (anisotropic traps are solved at their
//  geometric-mean frequency) and u = 4 pi hbar^2 a / m.  This provides
//  the independent check on the interpolated chemical potential model:
//  mu_gpe must exceed mu_TF (the kinetic term only adds energy) and
//  approach it from above as n grows, and must reach the noninteracting
//  ground-state energy as n -> 0.
//
//  Method: substitute u(r) = r xi(r), which turns the radial Laplacian
//  into a plain second derivative with u(0) = u(r_max) = 0, and relax
//  in imaginary time with explicit Euler steps
//
//    u <- normalize( u - (dtau/hbar) H u )
//    H u = -hbar^2/2m u'' + [ V + n g (u/r)^2 ] u
//
//  The step is held below the stability bound, dtau = safety * hbar /
//  lambda_max with lambda_max ~ 2 hbar^2/(m dr^2) + V(r_max) + n g
//  max|xi|^2, which makes the discrete energy functional
//
//    E[u] = 4 pi int [ hbar^2/2m u'^2 + V u^2 + (n g / 2) u^4/r^2 ] dr
//
//  nonincreasing every iteration; the recorded energy history is the
//  convergence certificate.  mu is the Rayleigh quotient of H (it
//  counts the interaction energy twice, so mu > E per atom for g > 0).
//  Convergence: |d mu| < rel_tol * |mu| for `consecutive` iterations.
//
//  The grid must resolve the healing length at the cloud centre,
//  xi_h = hbar / sqrt(2 m mu); construction fails loudly otherwise.
// =====================================================================

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "becgrowth/chem_potential.hpp"
#include "becgrowth/core.hpp"

namespace becgrowth {

struct GpeOptions {
    std::size_t num_points = 1200;   // interior radial grid points
    double r_max = 0.0;              // [m]; 0 = choose from TF radius / oscillator length
    double dtau_safety = 0.8;        // fraction of the stability bound
    double rel_tol = 1e-9;           // relative mu change per iteration
    std::size_t consecutive = 10;    // iterations the tolerance must hold
    std::size_t max_iterations = 2'000'000;
    std::size_t energy_stride = 1;   // record E every k-th iteration
};

struct GpeGroundState {
    double occupation = 0.0;       // n used for the nonlinearity
    double mu = 0.0;               // chemical potential [J]
    double energy_per_atom = 0.0;  // E/n per atom [J]
    double kinetic = 0.0;          // per-atom breakdown [J]
    double potential = 0.0;
    double interaction = 0.0;
    double virial_residual = 0.0;  // (2 E_kin - 2 E_pot + 3 E_int) / |E|
    double peak_density = 0.0;     // n |xi(0)|^2 [1/m^3]
    double healing_length = 0.0;   // hbar / sqrt(2 m mu) [m]
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> r;       // grid [m]
    std::vector<double> xi;      // normalized wavefunction on the grid [m^-3/2]
    std::vector<double> u;       // r * xi
    std::vector<double> energy_history;  // per-atom E at energy_stride intervals [J]
};

inline GpeGroundState solve_gpe_ground_state(const Species& species, const Trap& trap,
                                             double occupation, const GpeOptions& opts = {},
                                             const PhysicalConstants& consts = {}) {
    if (!(occupation >= 0.0))
        throw std::domain_error("solve_gpe_ground_state: occupation must be nonnegative");

    const double m = species.mass;
    const double hbar = consts.hbar;
    const double wbar = trap.omega_bar();
    const double a_ho = std::sqrt(hbar / (m * wbar));
    const double g = interaction_strength(species, consts);
    const ChemPotentialModel mu_model(species, trap, consts);

    // grid extent: cover the TF cloud with room for the boundary layer,
    // or several oscillator lengths for small clouds
    double r_max = opts.r_max;
    if (!(r_max > 0.0)) {
        double r_tf = 0.0;
        if (occupation > 0.0) {
            const double mu_tf = mu_model.mu_thomas_fermi(occupation);
            r_tf = std::sqrt(2.0 * mu_tf / (m * wbar * wbar));
        }
        r_max = std::max(1.6 * r_tf, 9.0 * a_ho);
    }

    const std::size_t np = opts.num_points;
    if (np < 64) throw std::domain_error("solve_gpe_ground_state: grid too coarse");
    const double dr = r_max / static_cast<double>(np + 1);

    std::vector<double> r(np), u(np), hu(np);
    for (std::size_t i = 0; i < np; ++i) r[i] = dr * static_cast<double>(i + 1);

    // seed: TF profile once the cloud is interaction-dominated,
    // oscillator Gaussian otherwise
    const bool tf_seed = occupation > mu_model.crossover_count();
    if (tf_seed) {
        const double mu_tf = mu_model.mu_thomas_fermi(occupation);
        for (std::size_t i = 0; i < np; ++i) {
            const double v = 0.5 * m * wbar * wbar * r[i] * r[i];
            const double dens = std::max(0.0, (mu_tf - v) / (occupation * g));
            u[i] = r[i] * std::sqrt(dens);
        }
    } else {
        for (std::size_t i = 0; i < np; ++i) {
            const double x = r[i] / a_ho;
            u[i] = r[i] * std::exp(-0.5 * x * x);
        }
    }

    const double four_pi = 4.0 * M_PI;
    auto normalize = [&](std::vector<double>& w) {
        double s = 0.0;
        for (double wi : w) s += wi * wi;
        s *= four_pi * dr;
        const double inv = 1.0 / std::sqrt(s);
        for (double& wi : w) wi *= inv;
        return s;
    };
    normalize(u);

    const double kin_coef = hbar * hbar / (2.0 * m);
    auto apply_h = [&](const std::vector<double>& w, std::vector<double>& out) {
        double lap;
        for (std::size_t i = 0; i < np; ++i) {
            const double wl = (i == 0) ? 0.0 : w[i - 1];
            const double wr = (i + 1 == np) ? 0.0 : w[i + 1];
            lap = (wl - 2.0 * w[i] + wr) / (dr * dr);
            const double v = 0.5 * m * wbar * wbar * r[i] * r[i];
            const double dens = w[i] * w[i] / (r[i] * r[i]);
            out[i] = -kin_coef * lap + (v + occupation * g * dens) * w[i];
        }
    };

    // per-atom energy of the discrete functional; gradient of this is H u
    auto energy = [&](const std::vector<double>& w) {
        double e_kin = 0.0, e_pot = 0.0, e_int = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            const double d = (w[i] - prev) / dr;
            e_kin += d * d;
            prev = w[i];
            const double v = 0.5 * m * wbar * wbar * r[i] * r[i];
            e_pot += v * w[i] * w[i];
            e_int += w[i] * w[i] * w[i] * w[i] / (r[i] * r[i]);
        }
        const double d_last = (0.0 - prev) / dr;
        e_kin += d_last * d_last;
        e_kin *= kin_coef * four_pi * dr;
        e_pot *= four_pi * dr;
        e_int *= 0.5 * occupation * g * four_pi * dr;
        struct {
            double kin, pot, inter;
        } out{e_kin, e_pot, e_int};
        return out;
    };

    // stability bound for the explicit step
    double max_dens = 0.0;
    for (std::size_t i = 0; i < np; ++i)
        max_dens = std::max(max_dens, u[i] * u[i] / (r[i] * r[i]));
    const double v_max = 0.5 * m * wbar * wbar * r_max * r_max;
    const double lambda_max = 2.0 * hbar * hbar / (m * dr * dr) + v_max + occupation * g * max_dens;
    const double dtau = opts.dtau_safety * hbar / lambda_max;

    GpeGroundState gs;
    gs.occupation = occupation;
    double mu_prev = 0.0;
    std::size_t quiet = 0;

    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        apply_h(u, hu);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            num += u[i] * hu[i];
            den += u[i] * u[i];
        }
        const double mu = num / den;  // normalization cancels in the quotient

        if (opts.energy_stride && it % opts.energy_stride == 0) {
            const auto e = energy(u);
            gs.energy_history.push_back(e.kin + e.pot + e.inter);
        }

        if (it > 0 && std::fabs(mu - mu_prev) < opts.rel_tol * std::fabs(mu)) {
            if (++quiet >= opts.consecutive) {
                gs.converged = true;
                gs.iterations = it + 1;
                mu_prev = mu;
                break;
            }
        } else {
            quiet = 0;
        }
        mu_prev = mu;

        const double step = dtau / hbar;
        for (std::size_t i = 0; i < np; ++i) u[i] -= step * hu[i];
        normalize(u);
    }
    if (!gs.converged)
        throw NumericsError("solve_gpe_ground_state: no convergence after " +
                            std::to_string(opts.max_iterations) + " iterations (n=" +
                            std::to_string(occupation) + ")");

    gs.mu = mu_prev;
    const auto e = energy(u);
    gs.kinetic = e.kin;
    gs.potential = e.pot;
    gs.interaction = e.inter;
    gs.energy_per_atom = e.kin + e.pot + e.inter;
    gs.virial_residual =
        (2.0 * e.kin - 2.0 * e.pot + 3.0 * e.inter) / std::fabs(gs.energy_per_atom);
    gs.healing_length = hbar / std::sqrt(2.0 * m * std::fabs(gs.mu));

    if (dr > gs.healing_length / 3.0 && occupation > mu_model.crossover_count())
        throw NumericsError(
            "solve_gpe_ground_state: grid spacing does not resolve the healing length (dr=" +
            std::to_string(dr) + " m, xi_h=" + std::to_string(gs.healing_length) +
            " m); increase num_points");

    gs.r = r;
    gs.u = u;
    gs.xi.resize(np);
    for (std::size_t i = 0; i < np; ++i) gs.xi[i] = u[i] / r[i];
    gs.peak_density = occupation * gs.xi[0] * gs.xi[0];
    return gs;
}

}  // namespace becgrowth

#endif  // BECGROWTH_GPE_HPP
