#ifndef BECGROWTH_VALIDATE_HPP
#define BECGROWTH_VALIDATE_HPP

// =====================================================================
//  becgrowth/validate.hpp
//
//  Self-validation suites.  Each suite compares an implementation route
//  against an independent one: closed forms against quadrature oracles,
//  Monte Carlo against analytic rates, algebraic identities against
//  direct evaluation.  The oracles here are deliberately primitive
//  (step-halving trapezoid and Simpson rules) so that they share no
//  code with the implementations they check.
//
//  Suites: bessel, cut-fractions, detailed-balance, collision-mc, gpe,
//  retherm, all.  A row fails loudly; nothing is auto-tuned to pass.
// =====================================================================

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "becgrowth/bath.hpp"
#include "becgrowth/collision_mc.hpp"
#include "becgrowth/core.hpp"
#include "becgrowth/gpe.hpp"
#include "becgrowth/rates.hpp"
#include "becgrowth/rng.hpp"
#include "becgrowth/special.hpp"

namespace becgrowth {

struct ValidationRow {
    std::string suite;
    std::string check;
    double measured = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct ValidationOptions {
    std::size_t mc_samples = 1'000'000;
    std::uint64_t seed = 987'654'321ull;
};

namespace oracle {

// K1(z) = int_0^inf e^{-z cosh t} cosh t dt.  The integrand is even in
// t with all odd derivatives vanishing at 0 and double-exponential
// decay at the far end, so the trapezoid rule converges faster than any
// power of the step; halve until two refinements agree to 1e-13.
inline double bessel_k1_quadrature(double z) {
    if (!(z > 0.0)) throw std::domain_error("bessel_k1_quadrature: z must be positive");
    const double t_max = std::acosh(760.0 / z > 1.0 ? 760.0 / z : 2.0);
    auto f = [z](double t) {
        const double e = z * std::cosh(t);
        return (e > 745.0) ? 0.0 : std::exp(-e) * std::cosh(t);
    };
    std::size_t n = 64;
    double h = t_max / static_cast<double>(n);
    double sum = 0.5 * (f(0.0) + f(t_max));
    for (std::size_t i = 1; i < n; ++i) sum += f(h * static_cast<double>(i));
    double prev = sum * h;
    for (int level = 0; level < 16; ++level) {
        double add = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            add += f(h * (static_cast<double>(i) + 0.5));
        n *= 2;
        h *= 0.5;
        const double cur = 0.5 * prev + add * h;
        if (std::fabs(cur - prev) <= 1e-13 * std::fabs(cur) + 1e-300) return cur;
        prev = cur;
    }
    throw NumericsError("bessel_k1_quadrature: no convergence at z=" + std::to_string(z));
}

// lower incomplete gamma by composite Simpson with step halving
inline double lower_gamma_quadrature(double s, double eta) {
    auto f = [s](double x) { return std::pow(x, s - 1.0) * std::exp(-x); };
    std::size_t n = 64;
    auto simpson = [&](std::size_t m) {
        const double h = eta / static_cast<double>(m);
        double acc = f(0.0) + f(eta);
        for (std::size_t i = 1; i < m; ++i)
            acc += f(h * static_cast<double>(i)) * ((i % 2) ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    double prev = simpson(n);
    for (int level = 0; level < 14; ++level) {
        n *= 2;
        const double cur = simpson(n);
        if (std::fabs(cur - prev) <= 1e-12 * std::fabs(cur)) return cur;
        prev = cur;
    }
    throw NumericsError("lower_gamma_quadrature: no convergence");
}

}  // namespace oracle

namespace detail {

inline ValidationRow row(const std::string& suite, const std::string& check, double measured,
                         double reference, double tolerance, std::string note = {}) {
    ValidationRow r{suite, check, measured, reference, tolerance, false, std::move(note)};
    r.pass = std::fabs(measured - reference) <= tolerance;
    return r;
}

}  // namespace detail

inline std::vector<ValidationRow> suite_bessel() {
    std::vector<ValidationRow> rows;
    const std::string su = "bessel";

    double worst = 0.0, worst_z = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double z =
            1e-3 * std::pow(1e5, static_cast<double>(i) / 99.0);  // log grid [1e-3, 100]
        const double ref = oracle::bessel_k1_quadrature(z);
        const double rel = std::fabs(bessel_k1(z) / ref - 1.0);
        if (rel > worst) {
            worst = rel;
            worst_z = z;
        }
    }
    rows.push_back(detail::row(su, "k1_vs_quadrature_100pt", worst, 0.0, 1e-10,
                               "worst relative error at z=" + std::to_string(worst_z)));

    rows.push_back(detail::row(su, "z_k1_small_z_limit", 1e-4 * bessel_k1(1e-4), 1.0, 1e-4,
                               "z K1(z) -> 1 as z -> 0"));

    const double z_big = 700.0;
    rows.push_back(detail::row(su, "k1_vs_quadrature_large_z",
                               bessel_k1(z_big) / oracle::bessel_k1_quadrature(z_big), 1.0,
                               1e-10, "z = 700"));

    rows.push_back(
        detail::row(su, "k1_underflow_is_exact_zero", bessel_k1(746.0), 0.0, 0.0));
    return rows;
}

inline std::vector<ValidationRow> suite_cut_fractions() {
    std::vector<ValidationRow> rows;
    const std::string su = "cut-fractions";
    struct Case {
        double eta;
        DosModel dos;
        double ref_percent;
        const char* name;
    };
    const Case cases[] = {
        {5.0, DosModel::Quadratic, 12.5, "quadratic_eta5_percent"},
        {7.0, DosModel::Quadratic, 2.9, "quadratic_eta7_percent"},
        {5.0, DosModel::Flat, 0.67, "flat_eta5_percent"},
        {7.0, DosModel::Flat, 0.091, "flat_eta7_percent"},
    };
    for (const auto& c : cases) {
        const double measured = 100.0 * fraction_above_cut(c.eta, c.dos);
        rows.push_back(detail::row(su, c.name, measured, c.ref_percent, 0.05,
                                   "historical reference value, +-0.05 percentage points"));
    }
    // model property: the quadratic DOS tail is heavier than the flat one
    double min_gap = 1.0;
    for (double eta = 0.5; eta < 20.0; eta += 0.25)
        min_gap = std::min(min_gap, fraction_above_cut(eta, DosModel::Quadratic) -
                                        fraction_above_cut(eta, DosModel::Flat));
    ValidationRow r{su, "quadratic_tail_heavier", min_gap, 0.0, 0.0, min_gap > 0.0,
                    "min over eta in (0.5,20)"};
    rows.push_back(r);
    return rows;
}

inline std::vector<ValidationRow> suite_detailed_balance(const ValidationOptions& opts = {}) {
    std::vector<ValidationRow> rows;
    RandomStream rng(opts.seed, 1);
    double worst = 0.0;
    const PhysicalConstants consts;
    for (int i = 0; i < 1000; ++i) {
        const Species sp = (i % 2) ? na23_species() : rb87_species();
        const double temp = 100e-9 * std::pow(10.0, rng.uniform());         // 100 nK .. 1 uK
        const double omega = 2.0 * M_PI * (50.0 + 450.0 * rng.uniform());   // 50 .. 500 Hz
        const double kT = consts.k_B * temp;
        const double mu = (0.01 + 2.99 * rng.uniform()) * kT;
        RateContext ctx(sp, isotropic_trap(omega), temp, mu, consts);
        const double n = std::pow(10.0, 7.0 * rng.uniform());               // 1 .. 1e7
        const double lhs = ctx.w_plus(n) / ctx.w_minus(n);
        const double rhs = std::exp((mu - ctx.mu_model().mu_condensate(n)) / kT);
        worst = std::max(worst, std::fabs(lhs / rhs - 1.0));
    }
    rows.push_back(detail::row("detailed-balance", "ratio_identity_1000_draws", worst, 0.0,
                               1e-12, "max |(w+/w-) / e^((mu-mu_n)/kT) - 1|"));
    return rows;
}

inline std::vector<ValidationRow> suite_collision_mc(const ValidationOptions& opts = {}) {
    std::vector<ValidationRow> rows;
    const std::string su = "collision-mc";
    const PhysicalConstants consts;
    const Species sp = rb87_species();
    const double temp = 500e-9;
    const double kT = consts.k_B * temp;
    const double mu = 0.1 * kT;
    RateContext ctx(sp, isotropic_trap(2.0 * M_PI * 100.0), temp, mu, consts);

    CollisionIntegralSpec base;
    base.species = sp;
    base.temperature = temp;
    base.chemical_potential = mu;
    base.samples = opts.mc_samples;
    base.seed = opts.seed;

    for (double z : {0.5, 1.0, 2.0}) {
        CollisionIntegralSpec spec = base;
        spec.transition_energy = z * kT;
        const double analytic = ctx.w_plus_at_energy(spec.transition_energy);
        const OracleReport rep = mc_w_plus(spec, analytic, consts);
        const double tol = std::max(0.05 * analytic, 3.0 * rep.combined_error);
        rows.push_back(detail::row(su, "w_plus_vs_analytic_z" + std::to_string(z).substr(0, 3),
                                   rep.value, analytic, tol,
                                   "ess=" + std::to_string(rep.effective_sample_size)));
    }

    {  // backward rate against the balance-factor-scaled analytic value
        CollisionIntegralSpec spec = base;
        spec.transition_energy = kT;
        const double analytic =
            ctx.w_plus_at_energy(kT) * std::exp((spec.transition_energy - mu) / kT);
        const OracleReport rep = mc_w_minus(spec, analytic, consts);
        const double tol = std::max(0.05 * analytic, 3.0 * rep.combined_error);
        rows.push_back(detail::row(su, "w_minus_vs_balance_z1", rep.value, analytic, tol));
    }

    {  // mu_n = mu: forward and backward rates must agree within errors
        CollisionIntegralSpec spec = base;
        spec.transition_energy = mu;
        const OracleReport p = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        CollisionIntegralSpec spec2 = spec;
        spec2.seed = opts.seed + 77;
        const OracleReport m = mc_w_minus(spec2, std::numeric_limits<double>::quiet_NaN(), consts);
        const double ratio = m.value / p.value;
        const double rel_err = 3.0 * std::sqrt(std::pow(p.combined_error / p.value, 2) +
                                               std::pow(m.combined_error / m.value, 2));
        rows.push_back(detail::row(su, "balance_point_ratio", ratio, 1.0, rel_err));
    }

    {  // relabeling the two thermal atoms must not change a single bit
        CollisionIntegralSpec spec = base;
        spec.transition_energy = kT;
        spec.samples = std::min<std::size_t>(base.samples, 200'000);
        const OracleReport a = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        spec.swap_k1_k2 = true;
        const OracleReport b = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        rows.push_back(detail::row(su, "k1_k2_swap_bitwise", b.value - a.value, 0.0, 0.0));
    }

    {  // quadratic dependence on the scattering length, exact under
       // matched seeds because only the constant scales
        CollisionIntegralSpec spec = base;
        spec.transition_energy = kT;
        spec.samples = std::min<std::size_t>(base.samples, 200'000);
        const OracleReport a = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        spec.species.scattering_length *= 2.0;
        const OracleReport b = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        rows.push_back(detail::row(su, "u_squared_scaling_exact", b.value / a.value, 4.0, 0.0));
    }

    {  // Bose weights dominate Boltzmann ones sample by sample (mu < 0)
        CollisionIntegralSpec spec = base;
        spec.chemical_potential = -0.5 * kT;
        spec.transition_energy = kT;
        spec.samples = std::min<std::size_t>(base.samples, 200'000);
        const OracleReport boltz =
            mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        spec.statistics = BathStatistics::Bose;
        const OracleReport bose =
            mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        ValidationRow r{su, "bose_dominates_boltzmann", bose.value - boltz.value, 0.0, 0.0,
                        bose.value > boltz.value,
                        "matched seeds, strict per-sample dominance"};
        rows.push_back(r);

        spec.drop_stimulated = true;
        const OracleReport dropped =
            mc_w_minus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        rows.push_back(detail::row(su, "dropped_stimulated_w_minus_zero", dropped.value, 0.0,
                                   0.0, "F(E3) -> 0 hook"));
    }

    {  // independent kernel ladders must agree within combined errors
        CollisionIntegralSpec spec = base;
        spec.transition_energy = kT;
        const OracleReport a = mc_w_plus(spec, std::numeric_limits<double>::quiet_NaN(), consts);
        CollisionIntegralSpec spec_b = spec;
        spec_b.sigma_ladder = {kT / 6.0, kT / 12.0, kT / 24.0};
        spec_b.seed = opts.seed + 1331;
        const OracleReport b =
            mc_w_plus(spec_b, std::numeric_limits<double>::quiet_NaN(), consts);
        const double tol = 3.0 * std::sqrt(a.combined_error * a.combined_error +
                                           b.combined_error * b.combined_error);
        rows.push_back(detail::row(su, "independent_ladders_compatible", a.value, b.value, tol));

        CollisionIntegralSpec spec_c = spec;  // halved widths, same seed
        spec_c.sigma_ladder = {kT / 16.0, kT / 32.0, kT / 64.0};
        const OracleReport c =
            mc_w_plus(spec_c, std::numeric_limits<double>::quiet_NaN(), consts);
        const double tol_c = 3.0 * std::sqrt(a.stat_error * a.stat_error +
                                             c.stat_error * c.stat_error) +
                             std::fabs(a.spread) + std::fabs(c.spread);
        rows.push_back(detail::row(su, "halved_kernel_within_quoted_error", c.value, a.value,
                                   tol_c));
    }

    return rows;
}

inline std::vector<ValidationRow> suite_gpe() {
    std::vector<ValidationRow> rows;
    const std::string su = "gpe";
    const PhysicalConstants consts;
    const Species sp = rb87_species();
    const Trap trap = isotropic_trap(2.0 * M_PI * 100.0);
    const ChemPotentialModel model(sp, trap, consts);

    const GpeGroundState big = solve_gpe_ground_state(sp, trap, 1e6, {}, consts);
    const double mu_tf = model.mu_thomas_fermi(1e6);
    rows.push_back(detail::row(su, "mu_gpe_vs_thomas_fermi_n1e6",
                               std::fabs(big.mu - mu_tf) / mu_tf, 0.0, 0.05,
                               "relative difference"));
    {
        ValidationRow r{su, "kinetic_term_raises_mu", big.mu - mu_tf, 0.0, 0.0,
                        big.mu > mu_tf, "mu_gpe must exceed mu_TF"};
        rows.push_back(r);
    }
    rows.push_back(detail::row(su, "virial_residual_n1e6", std::fabs(big.virial_residual), 0.0,
                               1e-3, "2Ekin - 2Epot + 3Eint over |E|"));
    {
        double worst = 0.0;
        for (std::size_t i = 1; i < big.energy_history.size(); ++i) {
            const double prev = big.energy_history[i - 1];
            worst = std::max(worst, (big.energy_history[i] - prev) / std::fabs(prev));
        }
        rows.push_back(detail::row(su, "energy_monotone_descent", std::max(worst, 0.0), 0.0,
                                   1e-12, "max relative uphill move per iteration"));
    }

    const GpeGroundState tiny = solve_gpe_ground_state(sp, trap, 1.0, {}, consts);
    rows.push_back(detail::row(su, "mu_gpe_small_n_noninteracting",
                               tiny.mu / model.mu_noninteracting(), 1.0, 1e-2,
                               "n = 1 against (3/2) hbar wbar"));

    {  // interactions push the momentum density narrower as n grows
        const GpeGroundState mid = solve_gpe_ground_state(sp, trap, 1e3, {}, consts);
        const WignerReport w_mid = wigner_narrowness_check(mid, sp, 500e-9, 0.35, consts);
        const WignerReport w_big = wigner_narrowness_check(big, sp, 500e-9, 0.35, consts);
        ValidationRow r{su, "momentum_width_shrinks_with_n", w_big.k_rms / w_mid.k_rms, 1.0,
                        0.0, w_big.k_rms < w_mid.k_rms, "k_rms(1e6) / k_rms(1e3) < 1"};
        rows.push_back(r);
        rows.push_back(detail::row(su, "parseval_consistency", w_big.parseval_k2, 0.0, 2e-2,
                                   "<k^2> against real-space kinetic energy"));
        ValidationRow nr{su, "momentum_narrow_vs_thermal", w_big.ratio, 0.0, 0.0,
                         w_big.narrow, "k_rms over sqrt(3 m kT)/hbar at 500 nK"};
        rows.push_back(nr);
    }
    return rows;
}

inline std::vector<ValidationRow> suite_retherm(const ValidationOptions& opts = {}) {
    std::vector<ValidationRow> rows;
    const std::string su = "retherm";
    const PhysicalConstants consts;
    const double hbar_wbar = consts.hbar * 2.0 * M_PI * 150.0;

    {  // strict cooling for 200 random cuts
        RandomStream rng(opts.seed, 2);
        double worst_ratio = 0.0;
        for (int i = 0; i < 200; ++i) {
            TruncatedBath b;
            b.temperature = 400e-9;
            b.chemical_potential = 0.1 * consts.k_B * b.temperature;
            b.eta = 0.5 + 19.5 * rng.uniform();
            b.hbar_omega_bar = hbar_wbar;
            worst_ratio = std::max(worst_ratio, retherm(b, consts).temperature / b.temperature);
        }
        ValidationRow r{su, "retherm_always_cools", worst_ratio, 1.0, 0.0,
                        worst_ratio < 1.0, "max T'/T over 200 random eta in (0.5, 20)"};
        rows.push_back(r);
    }
    {
        TruncatedBath b{400e-9, 0.0, 5.0, hbar_wbar};
        const double ratio = retherm(b, consts).temperature / b.temperature;
        rows.push_back(detail::row(su, "retherm_ratio_eta5", ratio, 0.840, 1e-3,
                                   "historical reference value"));
        rows.push_back(detail::row(su, "retherm_ratio_eta5_closed_form", ratio,
                                   0.8396364657957106, 1e-12,
                                   "gamma(4,5)/(3 gamma(3,5)) frozen from oracle"));
    }
    {
        TruncatedBath b{400e-9, 0.0, 50.0, hbar_wbar};
        const double ratio = retherm(b, consts).temperature / b.temperature;
        rows.push_back(detail::row(su, "retherm_identity_at_large_eta", ratio, 1.0, 1e-10,
                                   "eta = 50 recovers the untruncated bath"));
    }
    {  // closed-form incomplete gamma against Simpson quadrature
        double worst = 0.0;
        for (double s : {3.0, 4.0})
            for (double eta : {3.0, 5.0, 7.0}) {
                const double closed = lower_incomplete_gamma(s, eta);
                const double quad = oracle::lower_gamma_quadrature(s, eta);
                worst = std::max(worst, std::fabs(closed / quad - 1.0));
            }
        rows.push_back(detail::row(su, "moments_vs_quadrature", worst, 0.0, 1e-8,
                                   "gamma(s, eta) for s in {3,4}, eta in {3,5,7}"));
    }
    {  // bookkeeping reversibility and the anti-cooling direction
        TruncatedBath b{500e-9, 0.1 * consts.k_B * 500e-9, 6.0, hbar_wbar};
        const double mu_n = 0.15 * consts.k_B * 500e-9;
        const TruncatedBath fwd = couple_step(b, 1e4, mu_n, consts);
        const TruncatedBath back = couple_step(fwd, -1e4, mu_n, consts);
        const double dev = std::max(std::fabs(back.temperature / b.temperature - 1.0),
                                    std::fabs(back.chemical_potential / b.chemical_potential - 1.0));
        rows.push_back(detail::row(su, "couple_step_roundtrip", dev, 0.0, 1e-12));

        const BathMoments m0 = truncated_moments(b, consts);
        ValidationRow r{su, "removing_cold_atoms_heats_bath",
                        fwd.temperature / b.temperature, 1.0, 0.0,
                        (mu_n < m0.mean_energy()) && (fwd.temperature > b.temperature),
                        "mu_n below the mean bath energy per atom"};
        rows.push_back(r);

        const TruncatedBath same = couple_step(b, 0.0, mu_n, consts);
        const double dev0 = std::max(std::fabs(same.temperature / b.temperature - 1.0),
                                     std::fabs(same.chemical_potential / b.chemical_potential - 1.0));
        rows.push_back(detail::row(su, "couple_step_zero_is_identity", dev0, 0.0, 1e-13));
    }
    return rows;
}

inline std::vector<std::string> validation_suite_names() {
    return {"bessel", "cut-fractions", "detailed-balance", "collision-mc", "gpe", "retherm"};
}

inline std::vector<ValidationRow> run_validation_suite(const std::string& name,
                                                       const ValidationOptions& opts = {}) {
    if (name == "bessel") return suite_bessel();
    if (name == "cut-fractions") return suite_cut_fractions();
    if (name == "detailed-balance") return suite_detailed_balance(opts);
    if (name == "collision-mc") return suite_collision_mc(opts);
    if (name == "gpe") return suite_gpe();
    if (name == "retherm") return suite_retherm(opts);
    if (name == "all") {
        std::vector<ValidationRow> rows;
        for (const auto& n : validation_suite_names()) {
            auto part = run_validation_suite(n, opts);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        return rows;
    }
    throw std::invalid_argument("unknown validation suite '" + name +
                                "'; expected bessel, cut-fractions, detailed-balance, "
                                "collision-mc, gpe, retherm or all");
}

}  // namespace becgrowth

#endif  // BECGROWTH_VALIDATE_HPP
