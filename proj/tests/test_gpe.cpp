// Radial mean-field ground state: Thomas-Fermi agreement at large
// occupation, the ideal-gas limit, energy descent, the virial identity,
// and the momentum-space narrowness audit behind the zero-k rate model.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <becgrowth/chem_potential.hpp>
#include <becgrowth/collision_mc.hpp>
#include <becgrowth/gpe.hpp>

#include "test_util.hpp"

using namespace becgrowth;
using testutil::rel_err;

namespace {
const PhysicalConstants consts;
const Trap kTrap = isotropic_trap(2.0 * M_PI * 100.0);
}  // namespace

TEST_CASE("large clouds: chemical potential approaches the Thomas-Fermi value") {
    const GpeGroundState gs = solve_gpe_ground_state(rb87_species(), kTrap, 1e6);
    REQUIRE(gs.converged);
    const ChemPotentialModel model(rb87_species(), kTrap, consts);
    const double mu_tf = model.mu_thomas_fermi(1e6);
    CHECK(rel_err(gs.mu, mu_tf) < 0.05);
    // the kinetic pressure the TF limit drops is strictly positive
    CHECK(gs.mu > mu_tf);
    CHECK(gs.kinetic > 0.0);
    CHECK(gs.virial_residual < 1e-3);
}

TEST_CASE("halving the grid spacing moves mu by less than half a percent") {
    GpeOptions coarse;
    coarse.num_points = 700;
    const GpeGroundState a = solve_gpe_ground_state(rb87_species(), kTrap, 1e6, coarse);
    GpeOptions fine;
    fine.num_points = 1400;
    const GpeGroundState b = solve_gpe_ground_state(rb87_species(), kTrap, 1e6, fine);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(rel_err(a.mu, b.mu) < 5e-3);
}

TEST_CASE("single atom: the ideal oscillator limit") {
    const GpeGroundState gs = solve_gpe_ground_state(rb87_species(), kTrap, 1.0);
    REQUIRE(gs.converged);
    const ChemPotentialModel model(rb87_species(), kTrap, consts);
    CHECK(rel_err(gs.mu, model.mu_noninteracting()) < 0.01);
    // Gaussian ground state: kinetic and potential each at hbar w 3/4
    CHECK(rel_err(gs.kinetic, gs.potential) < 0.02);
}

TEST_CASE("imaginary-time descent never raises the energy") {
    GpeOptions opts;
    opts.num_points = 600;
    const GpeGroundState gs = solve_gpe_ground_state(rb87_species(), kTrap, 1e5, opts);
    REQUIRE(gs.converged);
    REQUIRE(gs.energy_history.size() > 10);
    for (std::size_t i = 1; i < gs.energy_history.size(); ++i)
        CHECK(gs.energy_history[i] <= gs.energy_history[i - 1] +
                                          1e-12 * std::abs(gs.energy_history[i - 1]));
}

TEST_CASE("a grid too coarse to resolve the healing length is rejected") {
    GpeOptions opts;
    opts.num_points = 40;  // rejected outright, before any relaxation
    CHECK_THROWS_AS(solve_gpe_ground_state(rb87_species(), kTrap, 1e6, opts), std::domain_error);
    opts.num_points = 100;  // enough to run, too coarse for the healing length
    CHECK_THROWS_AS(solve_gpe_ground_state(rb87_species(), kTrap, 1e6, opts), NumericsError);
}

TEST_CASE("wavefunction is normalized and decays at the box edge") {
    const GpeGroundState gs = solve_gpe_ground_state(rb87_species(), kTrap, 1e6);
    double norm = 0.0;
    const double dr = gs.r[0];
    for (std::size_t i = 0; i < gs.r.size(); ++i)
        norm += 4.0 * M_PI * gs.r[i] * gs.r[i] * gs.xi[i] * gs.xi[i] * dr;
    CHECK(rel_err(norm, 1.0) < 1e-8);
    CHECK(std::abs(gs.xi.back()) < 1e-6 * std::abs(gs.xi.front()));
    CHECK(gs.peak_density > 0.0);
}

TEST_CASE("momentum width shrinks as the cloud grows") {
    const GpeGroundState small = solve_gpe_ground_state(rb87_species(), kTrap, 1e3);
    const GpeGroundState big = solve_gpe_ground_state(rb87_species(), kTrap, 1e6);
    const WignerReport ws = wigner_narrowness_check(small, rb87_species(), 500e-9, 0.35, consts);
    const WignerReport wb = wigner_narrowness_check(big, rb87_species(), 500e-9, 0.35, consts);
    CHECK(wb.k_rms < ws.k_rms);
    // Parseval closure between the transform moments and the kinetic energy;
    // both report fields are deviations, not raw moments
    CHECK(ws.parseval_norm < 1e-2);
    CHECK(wb.parseval_norm < 1e-2);
    CHECK(ws.parseval_k2 < 2e-2);
    CHECK(wb.parseval_k2 < 2e-2);
}

TEST_CASE("the condensate is narrow against the thermal momentum spread") {
    const GpeGroundState gs = solve_gpe_ground_state(rb87_species(), kTrap, 1e6);
    const WignerReport w = wigner_narrowness_check(gs, rb87_species(), 500e-9, 0.35, consts);
    CHECK(w.ratio < 0.35);
    CHECK(w.narrow);
    CHECK(rel_err(w.k_thermal, std::sqrt(3.0 * rb87_species().mass * consts.k_B * 500e-9) /
                                   consts.hbar) < 1e-13);
}
