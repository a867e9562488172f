// Minimal library walk-through: integrate a growth curve for a rubidium
// cloud held in an isotropic 150 Hz trap at 500 nK, then print the
// milestones a sweep would tabulate.

#include <cstdio>

#include <becgrowth/ode.hpp>

int main() {
    using namespace becgrowth;
    const PhysicalConstants consts;

    SimConfig cfg;
    cfg.species = rb87_species();
    cfg.trap = isotropic_trap(2.0 * M_PI * 150.0);
    cfg.bath.temperature = 500e-9;
    cfg.bath.chemical_potential = 0.2 * consts.k_B * cfg.bath.temperature;
    cfg.solver.t_end = 2.0;
    cfg.output.samples = 200;

    const GrowthTrajectory traj = integrate_growth(cfg, consts);
    const GrowthMilestones m = extract_milestones(traj);

    std::printf("%12s %16s %16s\n", "t [s]", "n", "W+ [1/s]");
    for (std::size_t i = 0; i < traj.samples.size(); i += 20) {
        const auto& s = traj.samples[i];
        std::printf("%12.4f %16.6g %16.6g\n", s.t, s.n, s.w_plus);
    }
    std::printf("\nsaturation: n = %.6g (%s)\n", m.saturation_n,
                m.saturated ? "reached" : "not reached in window");
    std::printf("latency (n=100 crossing): %.4g s\n", m.latency_time);
    std::printf("10%%-90%% growth time:      %.4g s\n", m.growth_time);
    std::printf("solver: %llu accepted, %llu rejected steps\n",
                static_cast<unsigned long long>(traj.stats.accepted),
                static_cast<unsigned long long>(traj.stats.rejected));
    return 0;
}
