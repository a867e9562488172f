// Monte Carlo oracle for the collision kernel. The estimator samples
// the two incoming thermal momenta from the Maxwell proposal, reweights
// per statistics, and smears the energy shell with a three-width kernel
// ladder whose pairwise Richardson extrapolations expose the systematic.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <becgrowth/collision_mc.hpp>
#include <becgrowth/rates.hpp>

#include "test_util.hpp"

using namespace becgrowth;
using testutil::rel_err;

namespace {
const PhysicalConstants consts;

CollisionIntegralSpec base_spec(double z, double mu_frac = 0.1,
                                std::size_t samples = 200'000) {
    CollisionIntegralSpec spec;
    spec.species = rb87_species();
    spec.temperature = 500e-9;
    const double kT = consts.k_B * spec.temperature;
    spec.chemical_potential = mu_frac * kT;
    spec.transition_energy = z * kT;
    spec.samples = samples;
    return spec;
}

double analytic_w_plus(const CollisionIntegralSpec& spec) {
    RateContext ctx(spec.species, isotropic_trap(2.0 * M_PI * 150.0), spec.temperature,
                    spec.chemical_potential, consts);
    return ctx.w_plus_at_energy(spec.transition_energy);
}
}  // namespace

TEST_CASE("forward oracle agrees with the closed form within 3 sigma") {
    for (double z : {0.5, 1.0, 2.0}) {
        const CollisionIntegralSpec spec = base_spec(z);
        const OracleReport rep = mc_w_plus(spec, analytic_w_plus(spec), consts);
        INFO("z = " << z << ": mc " << rep.value << " +- " << rep.combined_error
                    << " vs analytic " << rep.analytic);
        REQUIRE(rep.pass.has_value());
        CHECK(*rep.pass);
        CHECK(rel_err(rep.value, rep.analytic) < 0.05);
        CHECK(rep.effective_sample_size > 100.0);
        CHECK(rep.ladder.size() == 3);
    }
}

TEST_CASE("backward oracle honors detailed balance against the closed form") {
    const CollisionIntegralSpec spec = base_spec(1.0);
    const double kT = consts.k_B * spec.temperature;
    const double balance =
        std::exp((spec.transition_energy - spec.chemical_potential) / kT);
    const OracleReport rep = mc_w_minus(spec, analytic_w_plus(spec) * balance, consts);
    REQUIRE(rep.pass.has_value());
    CHECK(*rep.pass);
}

TEST_CASE("at the balance point the two directions coincide") {
    // eps = mu: e^{(eps-mu)/kT} = 1, so W- = W+ exactly in distribution
    CollisionIntegralSpec spec = base_spec(0.25, 0.25);
    const OracleReport fwd = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    const OracleReport bwd = mc_w_minus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    const double err = std::sqrt(fwd.combined_error * fwd.combined_error +
                                 bwd.combined_error * bwd.combined_error);
    CHECK(std::abs(fwd.value - bwd.value) < 3.0 * err);
}

TEST_CASE("relabeling the two drawn atoms is bitwise invisible") {
    CollisionIntegralSpec spec = base_spec(1.0);
    const OracleReport a = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    spec.swap_k1_k2 = true;
    const OracleReport b = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    CHECK(a.value == b.value);
    CHECK(a.stat_error == b.stat_error);
    CHECK(a.coarse_value == b.coarse_value);
}

TEST_CASE("doubling the scattering length scales the rate by exactly four") {
    CollisionIntegralSpec spec = base_spec(1.0, 0.1, 50'000);
    const OracleReport a = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    spec.species.scattering_length *= 2.0;
    const OracleReport b = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    CHECK(b.value == 4.0 * a.value);
    for (int j = 0; j < 3; ++j) CHECK(b.ladder[j].value == 4.0 * a.ladder[j].value);
}

TEST_CASE("Bose weights dominate Boltzmann weights sample by sample") {
    // each per-particle factor 1/(e^{-mu/kT} - e^{-E/kT}) exceeds the
    // fugacity, and the stimulated factor exceeds one, so with shared
    // seeds every ladder point must come out strictly larger
    CollisionIntegralSpec boltz = base_spec(1.0, -0.5);
    CollisionIntegralSpec bose = boltz;
    bose.statistics = BathStatistics::Bose;
    const OracleReport a = mc_w_plus(boltz, std::numeric_limits<double>::quiet_NaN(), consts);
    const OracleReport b = mc_w_plus(bose, std::numeric_limits<double>::quiet_NaN(), consts);
    for (int j = 0; j < 3; ++j) CHECK(b.ladder[j].value > a.ladder[j].value);
}

TEST_CASE("Bose weights require a negative chemical potential") {
    CollisionIntegralSpec spec = base_spec(1.0, 0.1);
    spec.statistics = BathStatistics::Bose;
    CHECK_THROWS_AS(mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts),
                    std::domain_error);
}

TEST_CASE("Bose backward weight stays finite out to large outgoing energies") {
    CollisionIntegralSpec spec = base_spec(4.0, -0.2);
    spec.statistics = BathStatistics::Bose;
    const OracleReport rep = mc_w_minus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    CHECK(std::isfinite(rep.value));
    CHECK(rep.value > 0.0);
}

TEST_CASE("dropping the outgoing occupancy silences the backward channel") {
    CollisionIntegralSpec spec = base_spec(1.0);
    spec.drop_stimulated = true;
    const OracleReport rep = mc_w_minus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    CHECK(rep.value == 0.0);
}

TEST_CASE("spec validation rejects malformed ladders and sample counts") {
    CollisionIntegralSpec spec = base_spec(1.0);
    spec.sigma_ladder = {1e-30, 2e-30};
    CHECK_THROWS_AS(mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts),
                    std::domain_error);
    CollisionIntegralSpec few = base_spec(1.0);
    few.samples = 10;
    CHECK_THROWS_AS(mc_w_plus(few, std::numeric_limits<double>::quiet_NaN(), consts),
                    std::domain_error);
}

TEST_CASE("kernel ladder report carries decreasing widths and finite errors") {
    const CollisionIntegralSpec spec = base_spec(1.0);
    const OracleReport rep = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
    REQUIRE(rep.ladder.size() == 3);
    CHECK(rep.ladder[0].sigma > rep.ladder[1].sigma);
    CHECK(rep.ladder[1].sigma > rep.ladder[2].sigma);
    for (const auto& p : rep.ladder) {
        CHECK(std::isfinite(p.value));
        CHECK(p.stat_error > 0.0);
    }
    CHECK(rep.combined_error >= rep.stat_error);
    CHECK(std::abs(rep.spread) < 0.05 * rep.value);
}
