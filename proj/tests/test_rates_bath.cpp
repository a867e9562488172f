// Transition rates, the condensate chemical potential model, and the
// truncated-reservoir thermodynamics. Frozen references come from an
// independent 30-digit evaluation of the closed forms.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <becgrowth/bath.hpp>
#include <becgrowth/chem_potential.hpp>
#include <becgrowth/rates.hpp>
#include <becgrowth/rng.hpp>
#include <becgrowth/validate.hpp>

#include "test_util.hpp"

using namespace becgrowth;
using testutil::rel_err;

namespace {
const PhysicalConstants consts;

RateContext rb_context(double temp_K, double mu_frac, double f_hz = 150.0) {
    const double kT = consts.k_B * temp_K;
    return RateContext(rb87_species(), isotropic_trap(2.0 * M_PI * f_hz), temp_K, mu_frac * kT,
                       consts);
}
}  // namespace

TEST_CASE("rate prefactor 4 m (a kT)^2 / (pi hbar^3) matches frozen values") {
    CHECK(rel_err(rb_context(500e-9, 0.1).prefactor(), 243.43060540352136) < 1e-12);
    CHECK(rel_err(rb_context(400e-9, 0.1).prefactor(), 155.79558745825367) < 1e-12);
}

TEST_CASE("forward rate assembles prefactor, fugacity and z K1(z)") {
    const auto ctx = rb_context(500e-9, 0.2);
    const double kT = ctx.kT();
    for (double z : {0.05, 0.3, 1.0, 2.5}) {
        const double expected =
            ctx.prefactor() * std::exp(2.0 * ctx.mu_bath() / kT) * z * bessel_k1(z);
        CHECK(rel_err(ctx.w_plus_at_energy(z * kT), expected) < 1e-13);
    }
    // eps beyond the underflow point gives a hard zero, not garbage
    CHECK(ctx.w_plus_at_energy(800.0 * kT) == 0.0);
}

TEST_CASE("detailed balance holds to near machine precision across the parameter box") {
    RandomStream rng(555);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Species sp = (i % 2 == 0) ? rb87_species() : na23_species();
        const double temp = 100e-9 * std::pow(10.0, rng.uniform());        // 100 nK .. 1 uK
        const double f = 50.0 + 450.0 * rng.uniform();                     // 50 .. 500 Hz
        const double kT = consts.k_B * temp;
        const double mu = (0.01 + 2.99 * rng.uniform()) * kT;
        const double n = std::pow(10.0, 7.0 * rng.uniform());              // 1 .. 1e7
        RateContext ctx(sp, isotropic_trap(2.0 * M_PI * f), temp, mu, consts);
        const double mu_n = ctx.mu_model().mu_condensate(n);
        const double expected = std::exp((mu_n - mu) / kT);
        const double ratio = ctx.w_minus(n) / ctx.w_plus(n);
        worst = std::max(worst, std::abs(ratio / expected - 1.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("stationary point solves (e^{(mu_n-mu)/kT} - 1) n = 1") {
    for (double frac : {0.05, 0.2, 1.0}) {
        const auto ctx = rb_context(500e-9, frac);
        const double ns = ctx.stationary_n();
        const double residual = (ctx.balance_factor(ns) - 1.0) * ns - 1.0;
        CHECK(std::abs(residual) < 1e-9);
        CHECK(rel_err(ctx.net_growth_rate(ns), 0.0) < 1e-6 * ctx.w_plus(ns));
        // the stationary point sits above the equal-mu occupation
        CHECK(ns > ctx.mu_model().n_equilibrium(ctx.mu_bath()));
    }
}

TEST_CASE("Thomas-Fermi chemical potential: frozen value, scaling, inverse") {
    const ChemPotentialModel model(rb87_species(), isotropic_trap(2.0 * M_PI * 100.0), consts);
    CHECK(rel_err(model.mu_thomas_fermi(1e6), 3.0213474578025363e-30) < 1e-12);
    CHECK(rel_err(model.mu_noninteracting(), 9.9391052189101195e-32) < 1e-12);

    // mu(lambda n) = lambda^{2/5} mu(n)
    for (double n : {1e4, 1e6}) {
        const double lhs = model.mu_thomas_fermi(32.0 * n);
        const double rhs = 4.0 * model.mu_thomas_fermi(n);  // 32^{2/5} = 4
        CHECK(rel_err(lhs, rhs) < 1e-12);
    }
    // n_equilibrium inverts mu_thomas_fermi above the crossover
    for (double n : {1e5, 1e6, 1e8})
        CHECK(rel_err(model.n_equilibrium(model.mu_thomas_fermi(n)), n) < 1e-10);
}

TEST_CASE("condensate chemical potential is continuous at the interpolation crossover") {
    const ChemPotentialModel model(rb87_species(), isotropic_trap(2.0 * M_PI * 100.0), consts);
    const double nx = model.crossover_count();
    CHECK(nx > 0.0);
    const double below = model.mu_condensate(nx * (1.0 - 1e-9));
    const double above = model.mu_condensate(nx * (1.0 + 1e-9));
    CHECK(rel_err(below, above) < 1e-7);
    // and it matches the advertised anchor mu(N_x) = 2 mu0
    CHECK(rel_err(model.mu_condensate(nx), 2.0 * model.mu_noninteracting()) < 1e-9);
    // monotone through the crossover region
    double prev = 0.0;
    for (double n = 1.0; n < 100.0 * nx; n *= 1.7) {
        const double mu = model.mu_condensate(n);
        CHECK(mu > prev);
        prev = mu;
    }
}

TEST_CASE("tail fractions above the cut match frozen multiprecision values") {
    CHECK(rel_err(fraction_above_cut(5.0, DosModel::Quadratic), 0.12465201948308114) < 1e-12);
    CHECK(rel_err(fraction_above_cut(7.0, DosModel::Quadratic), 0.029636163880521777) < 1e-12);
    CHECK(rel_err(fraction_above_cut(5.0, DosModel::Flat), 0.0067379469990854671) < 1e-12);
    CHECK(rel_err(fraction_above_cut(7.0, DosModel::Flat), 0.00091188196555451621) < 1e-12);
    // trap-weighted spectrum keeps more weight up high than the flat one
    for (double eta = 0.5; eta < 20.0; eta += 0.5)
        CHECK(fraction_above_cut(eta, DosModel::Quadratic) >
              fraction_above_cut(eta, DosModel::Flat));
}

TEST_CASE("rethermalization cools and matches frozen ratios") {
    TruncatedBath bath;
    bath.temperature = 500e-9;
    bath.chemical_potential = 0.0;
    bath.hbar_omega_bar = consts.hbar * 2.0 * M_PI * 150.0;

    bath.eta = 5.0;
    CHECK(rel_err(retherm(bath, consts).temperature / bath.temperature,
                  0.8396364657957106) < 1e-12);
    bath.eta = 7.0;
    CHECK(rel_err(retherm(bath, consts).temperature / bath.temperature,
                  0.94627865299198835) < 1e-12);
    // a cut far above the thermal scale changes nothing measurable
    bath.eta = 50.0;
    const TruncatedBath far = retherm(bath, consts);
    CHECK(rel_err(far.temperature, bath.temperature) < 1e-10);
    CHECK(std::abs(far.chemical_potential - bath.chemical_potential) <
          1e-10 * consts.k_B * bath.temperature);

    RandomStream rng(777);
    for (int i = 0; i < 200; ++i) {
        bath.eta = 0.5 + 19.5 * rng.uniform();
        CHECK(retherm(bath, consts).temperature < bath.temperature);
    }
}

TEST_CASE("rethermalized bath carries the same atom number and energy") {
    TruncatedBath bath;
    bath.temperature = 420e-9;
    bath.chemical_potential = 0.1 * consts.k_B * bath.temperature;
    bath.eta = 6.0;
    bath.hbar_omega_bar = consts.hbar * 2.0 * M_PI * 180.0;

    const BathMoments before = truncated_moments(bath, consts);
    TruncatedBath full = retherm(bath, consts);
    full.eta = 1e3;  // evaluate the refit over the (numerically) full spectrum
    const BathMoments after = truncated_moments(full, consts);
    CHECK(rel_err(after.atom_count, before.atom_count) < 1e-10);
    CHECK(rel_err(after.total_energy, before.total_energy) < 1e-10);
}

TEST_CASE("bath_mu_for_count inverts the truncated atom count") {
    const double hbar_wbar = consts.hbar * 2.0 * M_PI * 150.0;
    for (double n_target : {1e5, 1e6, 5e7}) {
        TruncatedBath bath;
        bath.temperature = 400e-9;
        bath.eta = 8.0;
        bath.hbar_omega_bar = hbar_wbar;
        bath.chemical_potential =
            bath_mu_for_count(n_target, bath.temperature, bath.eta, hbar_wbar, consts);
        CHECK(rel_err(truncated_moments(bath, consts).atom_count, n_target) < 1e-10);
    }
}

TEST_CASE("transferring atoms to the condensate conserves the pair ledger") {
    TruncatedBath bath;
    bath.temperature = 500e-9;
    bath.eta = 6.0;
    bath.hbar_omega_bar = consts.hbar * 2.0 * M_PI * 150.0;
    bath.chemical_potential = 0.1 * consts.k_B * bath.temperature;

    const BathMoments before = truncated_moments(bath, consts);
    const double mu_n = 0.15 * consts.k_B * bath.temperature;
    const double dn = 1e4;
    REQUIRE(before.atom_count > 10.0 * dn);

    const TruncatedBath stepped = couple_step(bath, dn, mu_n, consts);
    const BathMoments after = truncated_moments(stepped, consts);
    CHECK(rel_err(after.atom_count, before.atom_count - dn) < 1e-12);
    CHECK(rel_err(after.total_energy, before.total_energy - dn * mu_n) < 1e-12);

    // removing atoms below the mean energy must heat the remainder
    CHECK(mu_n < before.mean_energy());
    CHECK(stepped.temperature > bath.temperature);

    // a null transfer is the identity to rounding
    const TruncatedBath same = couple_step(bath, 0.0, mu_n, consts);
    CHECK(rel_err(same.temperature, bath.temperature) < 1e-13);
    CHECK(rel_err(same.chemical_potential, bath.chemical_potential) < 1e-13);

    // draining more than the reservoir holds is a hard error
    CHECK_THROWS_AS(couple_step(bath, 2.0 * before.atom_count, mu_n, consts), NumericsError);
}
