// Birth-death ensemble next to its mean-field curve: the stochastic mean
// should ride the deterministic trajectory once n clears the shot-noise
// region, while individual runs spread around it.

#include <cstdio>

#include <becgrowth/ode.hpp>
#include <becgrowth/ssa.hpp>

int main() {
    using namespace becgrowth;
    const PhysicalConstants consts;

    SimConfig cfg;
    cfg.species = rb87_species();
    cfg.trap = isotropic_trap(2.0 * M_PI * 400.0);
    cfg.bath.temperature = 400e-9;
    cfg.bath.chemical_potential = 0.1 * consts.k_B * cfg.bath.temperature;
    cfg.solver.t_end = 0.6;
    cfg.output.samples = 60;

    const GrowthTrajectory traj = integrate_growth(cfg, consts);

    RateContext ctx(cfg.species, cfg.trap, cfg.bath.temperature,
                    cfg.bath.chemical_potential, consts);
    const EnsembleStats ens = ssa_ensemble(ctx, 0, cfg.solver.t_end, cfg.output.samples,
                                           200, 20250819ull);

    std::printf("%10s %14s %14s %14s %14s\n", "t [s]", "mean n", "std n", "band10", "band90");
    for (std::size_t j = 0; j < ens.t.size(); j += 6)
        std::printf("%10.3f %14.5g %14.5g %14.5g %14.5g\n", ens.t[j], ens.mean[j],
                    std::sqrt(ens.variance[j]), ens.band_low[j], ens.band_high[j]);

    std::printf("\nmean-field endpoint:  n(%g s) = %.6g\n", cfg.solver.t_end,
                traj.samples.back().n);
    std::printf("ensemble endpoint:    n(%g s) = %.6g +- %.2g (s.e.m.)\n", cfg.solver.t_end,
                ens.mean.back(),
                std::sqrt(ens.variance.back() / static_cast<double>(ens.trajectories)));
    std::printf(
        "\nAt a few hundred atoms the ensemble mean sits below the rate equation:\n"
        "the seeding stage is a stochastic wait, so slow starters drag the mean\n"
        "while the deterministic curve runs ahead. The gap closes as n grows.\n");
    return 0;
}
