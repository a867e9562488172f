#ifndef BECGROWTH_COLLISION_MC_HPP
#define BECGROWTH_COLLISION_MC_HPP

// =====================================================================
//  becgrowth/collision_mc.hpp
//
//  Direct Monte Carlo evaluation of the 6-D collision integral behind
//  the growth rates.  This module never calls the closed-form rate; it
//  exists so the two routes can disagree.
//
//  Forward rate into a condensate level at energy eps:
//
//    W+ = u^2/((2 pi)^5 hbar) int d3K1 d3K2 F(E1) F(E2) [1 + F(E3)]
//                                  delta(E1 + E2 - E3 - eps)
//
//  with K3 = K1 + K2 - k (k = 0 for a zero-width condensate mode) and
//  E = hbar^2 K^2 / 2m.  The backward rate swaps occupation factors:
//  (1+F)(1+F) F(E3).  Boltzmann statistics replace every (1+F) by 1,
//  which is also what makes the closed form and exact detailed balance
//  hold; Bose statistics keep the stimulated factors.
//
//  Estimator: K1, K2 are drawn from the normalized Maxwell-Boltzmann
//  density p(K) (componentwise normal, variance m kT / hbar^2), the
//  energy delta is smeared by a normalized Gaussian kernel g_sigma, and
//  occupation factors enter as importance weights exp((E1+E2)/kT) F1 F2
//  (...)  divided by nothing further since p1 p2 cancels the
//  exponentials.  All weights are bounded on shell:
//
//    Boltzmann W+ : z^2                        (z = e^(mu/kT))
//    Boltzmann W- : z e^((eps + delta)/kT)     (|delta| <~ 5 sigma)
//    Bose         : per-particle factor 1/(e^(-mu/kT) - e^(-E/kT)),
//                   finite only for mu < 0, and strictly above the
//                   Boltzmann factor z, so a matched-seed Bose estimate
//                   dominates its Boltzmann counterpart sample by sample
//
//  The smearing bias is O(sigma^2), so the kernel ladder {kT/8, kT/16,
//  kT/32} is Richardson-extrapolated pairwise: the fine pair gives the
//  value, the coarse pair a consistency point, and their difference an
//  explicit systematic-error handle.  Statistical errors propagate
//  through the extrapolation with the full covariance of the shared
//  samples.  The effective sample size (sum w)^2 / sum w^2 of the
//  finest kernel guards against silent importance-weight collapse.
//
//  wigner_narrowness_check quantifies the k -> 0 simplification: the
//  condensate momentum density from the radial sine transform of the
//  ground state must be narrow against thermal momenta sqrt(m kT)/hbar,
//  and its moments must reproduce the real-space kinetic energy
//  (Parseval) to confirm the transform grid is adequate.
// =====================================================================

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "becgrowth/core.hpp"
#include "becgrowth/gpe.hpp"
#include "becgrowth/rng.hpp"

namespace becgrowth {

enum class BathStatistics { Boltzmann, Bose };

struct CollisionIntegralSpec {
    Species species;
    double temperature = 0.0;         // [K]
    double chemical_potential = 0.0;  // bath mu [J]; must be < 0 for Bose
    double transition_energy = 0.0;   // eps = mu_n of the receiving level [J]
    BathStatistics statistics = BathStatistics::Boltzmann;
    double sigma_k = 0.0;             // condensate momentum width [1/m]; 0 = point mode
    std::vector<double> sigma_ladder; // kernel widths [J]; empty = {kT/8, kT/16, kT/32}
    std::size_t samples = 2'000'000;
    std::uint64_t seed = 20'250'101ull;
    bool swap_k1_k2 = false;          // relabel the two thermal atoms after drawing
    bool drop_stimulated = false;     // force F(E3) -> 0
};

struct OracleReport {
    double value = 0.0;        // fine-pair Richardson extrapolation [1/s]
    double stat_error = 0.0;   // 1-sigma statistical error of `value`
    double coarse_value = 0.0; // coarse-pair extrapolation
    double spread = 0.0;       // value - coarse_value (systematic handle)
    double spread_error = 0.0; // 1-sigma statistical error of `spread`
    double combined_error = 0.0;  // sqrt(stat^2 + spread^2)
    double effective_sample_size = 0.0;
    double analytic = std::numeric_limits<double>::quiet_NaN();  // reference, if supplied
    std::optional<bool> pass;  // |value - analytic| <= 3 * combined_error
    struct LadderPoint {
        double sigma = 0.0;       // [J]
        double value = 0.0;       // [1/s]
        double stat_error = 0.0;  // 1-sigma
    };
    std::vector<LadderPoint> ladder;
};

namespace detail {

enum class CollisionDirection { Forward, Backward };

inline OracleReport run_collision_mc(const CollisionIntegralSpec& spec,
                                     CollisionDirection dir, double analytic,
                                     const PhysicalConstants& consts) {
    if (!(spec.temperature > 0.0))
        throw std::domain_error("collision mc: temperature must be positive");
    if (!(spec.transition_energy > 0.0))
        throw std::domain_error("collision mc: transition energy must be positive");
    if (spec.statistics == BathStatistics::Bose && !(spec.chemical_potential < 0.0))
        throw std::domain_error(
            "collision mc: Bose weights need mu < 0 (nondegenerate bath); the Boltzmann "
            "route covers mu >= 0 through the fugacity factor");
    if (spec.samples < 1000) throw std::domain_error("collision mc: too few samples");

    const double kT = consts.k_B * spec.temperature;
    const double m = spec.species.mass;
    const double hbar = consts.hbar;
    const double fug = std::exp(spec.chemical_potential / kT);
    const double u_int = interaction_strength(spec.species, consts);

    std::vector<double> sigmas = spec.sigma_ladder;
    if (sigmas.empty()) sigmas = {kT / 8.0, kT / 16.0, kT / 32.0};
    if (sigmas.size() != 3)
        throw std::domain_error("collision mc: kernel ladder must hold exactly 3 widths");
    const std::size_t L = 3;

    // overall constant: u^2/((2 pi)^5 hbar) * (2 pi m kT / hbar^2)^3
    // (the MB proposal normalization restored for both drawn atoms)
    const double mb_norm = 2.0 * M_PI * m * kT / (hbar * hbar);
    const double two_pi5 = std::pow(2.0 * M_PI, 5);
    const double constant = u_int * u_int * mb_norm * mb_norm * mb_norm / (two_pi5 * hbar);

    const double sigma_comp = std::sqrt(m * kT) / hbar;  // per-component K spread

    // per-particle importance weight e^(E/kT) F(E)
    const bool bose = spec.statistics == BathStatistics::Bose;
    const double inv_fug = std::exp(-spec.chemical_potential / kT);
    auto occupancy_weight = [&](double e_over_kT) {
        if (!bose) return fug;
        return 1.0 / (inv_fug - std::exp(-e_over_kT));
    };

    double s[3] = {0.0, 0.0, 0.0};
    double q[3][3] = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};

    RandomStream rng(spec.seed);
    double ka[3], kb[3], kc[3];
    for (std::size_t it = 0; it < spec.samples; ++it) {
        for (int c = 0; c < 3; ++c) ka[c] = sigma_comp * rng.normal();
        for (int c = 0; c < 3; ++c) kb[c] = sigma_comp * rng.normal();
        if (spec.swap_k1_k2)
            for (int c = 0; c < 3; ++c) std::swap(ka[c], kb[c]);
        double k1sq = 0.0, k2sq = 0.0, k3sq = 0.0;
        for (int c = 0; c < 3; ++c) {
            double k3c = ka[c] + kb[c];
            if (spec.sigma_k > 0.0) k3c -= spec.sigma_k * rng.normal();
            kc[c] = k3c;
            k1sq += ka[c] * ka[c];
            k2sq += kb[c] * kb[c];
            k3sq += kc[c] * kc[c];
        }
        const double e1 = hbar * hbar * k1sq / (2.0 * m);
        const double e2 = hbar * hbar * k2sq / (2.0 * m);
        const double e3 = hbar * hbar * k3sq / (2.0 * m);
        const double delta = e1 + e2 - e3 - spec.transition_energy;

        double w_occ;
        if (dir == CollisionDirection::Forward) {
            double in_pair = occupancy_weight(e1 / kT) * occupancy_weight(e2 / kT);
            double stim = 1.0;
            if (bose && !spec.drop_stimulated) {
                const double f3 = 1.0 / std::expm1((e3 - spec.chemical_potential) / kT);
                stim = 1.0 + f3;
            }
            w_occ = in_pair * stim;
        } else {
            if (spec.drop_stimulated) {
                w_occ = 0.0;
            } else if (bose) {
                const double f1 = 1.0 / std::expm1((e1 - spec.chemical_potential) / kT);
                const double f2 = 1.0 / std::expm1((e2 - spec.chemical_potential) / kT);
                // e^((E1+E2)/kT) F(E3), folded together so no intermediate
                // exponential of E1+E2 appears; the denominator stays
                // positive because E3 > mu always
                const double f3_scaled =
                    1.0 / (std::exp((e3 - spec.chemical_potential - e1 - e2) / kT) -
                           std::exp(-(e1 + e2) / kT));
                w_occ = (1.0 + f1) * (1.0 + f2) * f3_scaled;
            } else {
                // (1+F) -> 1; F(E3) = z e^(-E3/kT); weight z e^((E1+E2-E3)/kT),
                // bounded wherever the kernel is not negligible
                w_occ = fug * std::exp((e1 + e2 - e3) / kT);
            }
        }

        double w[3];
        for (std::size_t j = 0; j < L; ++j) {
            const double sg = sigmas[j];
            const double x = delta / sg;
            w[j] = w_occ * std::exp(-0.5 * x * x) / (sg * std::sqrt(2.0 * M_PI));
        }
        for (std::size_t j = 0; j < L; ++j) {
            s[j] += w[j];
            for (std::size_t k = j; k < L; ++k) q[j][k] += w[j] * w[k];
        }
    }

    const double invm = 1.0 / static_cast<double>(spec.samples);
    double v[3], cov[3][3];
    for (std::size_t j = 0; j < L; ++j) v[j] = constant * s[j] * invm;
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t k = j; k < L; ++k) {
            const double c =
                (q[j][k] * invm - (s[j] * invm) * (s[k] * invm)) * invm * constant * constant;
            cov[j][k] = c;
            cov[k][j] = c;
        }

    auto combo = [&](const double (&coef)[3]) {
        double val = 0.0, var = 0.0;
        for (std::size_t j = 0; j < L; ++j) {
            val += coef[j] * v[j];
            for (std::size_t k = 0; k < L; ++k) var += coef[j] * coef[k] * cov[j][k];
        }
        struct {
            double value, err;
        } out{val, std::sqrt(std::max(0.0, var))};
        return out;
    };

    // bias is O(sigma^2): the (sigma, sigma/2) pair extrapolates as (4 v_half - v)/3
    const double cf[3] = {0.0, -1.0 / 3.0, 4.0 / 3.0};
    const double cc[3] = {-1.0 / 3.0, 4.0 / 3.0, 0.0};
    const double cd[3] = {1.0 / 3.0, -5.0 / 3.0, 4.0 / 3.0};
    const auto fine = combo(cf);
    const auto coarse = combo(cc);
    const auto diff = combo(cd);

    OracleReport rep;
    rep.value = fine.value;
    rep.stat_error = fine.err;
    rep.coarse_value = coarse.value;
    rep.spread = fine.value - coarse.value;
    rep.spread_error = diff.err;
    rep.combined_error = std::sqrt(rep.stat_error * rep.stat_error + rep.spread * rep.spread);
    rep.effective_sample_size = (q[2][2] > 0.0) ? s[2] * s[2] / q[2][2] : 0.0;
    for (std::size_t j = 0; j < L; ++j)
        rep.ladder.push_back({sigmas[j], v[j], std::sqrt(std::max(0.0, cov[j][j]))});

    if (rep.effective_sample_size < 100.0 && !(dir == CollisionDirection::Backward &&
                                               spec.drop_stimulated))
        throw NumericsError("collision mc: effective sample size " +
                            std::to_string(rep.effective_sample_size) +
                            " too small; increase samples or widen the kernel ladder");

    rep.analytic = analytic;
    if (std::isfinite(analytic))
        rep.pass = std::fabs(rep.value - analytic) <= 3.0 * rep.combined_error;
    return rep;
}

}  // namespace detail

// Forward rate oracle.  `analytic` is an optional external reference
// (for example the closed-form rate); the oracle itself never computes
// it, so the comparison stays two-sided.
inline OracleReport mc_w_plus(const CollisionIntegralSpec& spec,
                              double analytic = std::numeric_limits<double>::quiet_NaN(),
                              const PhysicalConstants& consts = {}) {
    return detail::run_collision_mc(spec, detail::CollisionDirection::Forward, analytic, consts);
}

inline OracleReport mc_w_minus(const CollisionIntegralSpec& spec,
                               double analytic = std::numeric_limits<double>::quiet_NaN(),
                               const PhysicalConstants& consts = {}) {
    return detail::run_collision_mc(spec, detail::CollisionDirection::Backward, analytic, consts);
}

// ---------------------------------------------------------------------
//  Momentum-width audit of the zero-k simplification.
// ---------------------------------------------------------------------

struct WignerReport {
    double k_rms = 0.0;           // condensate momentum spread [1/m]
    double k_thermal = 0.0;       // sqrt(3 m kT)/hbar, thermal rms [1/m]
    double ratio = 0.0;           // k_rms / k_thermal
    double parseval_norm = 0.0;   // |int |xi~|^2 - 1|
    double parseval_k2 = 0.0;     // relative mismatch of <k^2> vs 2 m E_kin / hbar^2
    bool narrow = false;          // ratio below the regime bound
};

// The k -> 0 treatment of the condensate mode is justified when the
// momentum density |xi~(k)|^2 is much narrower than thermal momenta.
// ratio_bound pins "much narrower" for reporting purposes.
inline WignerReport wigner_narrowness_check(const GpeGroundState& gs, const Species& species,
                                            double temperature, double ratio_bound = 0.35,
                                            const PhysicalConstants& consts = {}) {
    if (gs.r.empty()) throw std::domain_error("wigner_narrowness_check: empty ground state");
    const double kT = consts.k_B * temperature;
    const double m = species.mass;
    const double hbar = consts.hbar;
    const double dr = gs.r[0];

    // reference <k^2> from the real-space kinetic energy
    const double k2_ref = 2.0 * m * gs.kinetic / (hbar * hbar);

    // k^4 |xi~|^2 carries weight out to the boundary-layer scale 1/xi_h,
    // well past the rms width, so the grid must reach it or <k^2> is biased
    double k_max = 8.0 * std::sqrt(k2_ref);
    if (gs.healing_length > 0.0) k_max = std::max(k_max, 6.0 / gs.healing_length);
    const std::size_t nk = 4096;
    const double dk = k_max / static_cast<double>(nk);
    double norm = 0.0, k2_moment = 0.0;
    for (std::size_t j = 1; j <= nk; ++j) {
        const double k = dk * static_cast<double>(j);
        // xi~(k) = (4 pi / k) int u(r) sin(kr) dr, real by symmetry
        double st = 0.0;
        for (std::size_t i = 0; i < gs.u.size(); ++i) st += gs.u[i] * std::sin(k * gs.r[i]);
        st *= dr;
        const double xt = 4.0 * M_PI * st / k;
        const double w = (j == nk) ? 0.5 : 1.0;  // trapezoid, integrand -> 0 at both ends
        norm += w * k * k * xt * xt;
        k2_moment += w * k * k * k * k * xt * xt;
    }
    const double inv_2pi2 = 1.0 / (2.0 * M_PI * M_PI);
    norm *= inv_2pi2 * dk;
    k2_moment *= inv_2pi2 * dk;

    WignerReport rep;
    rep.k_rms = std::sqrt(k2_moment / norm);
    rep.k_thermal = std::sqrt(3.0 * m * kT) / hbar;
    rep.ratio = rep.k_rms / rep.k_thermal;
    rep.parseval_norm = std::fabs(norm - 1.0);
    rep.parseval_k2 = std::fabs(k2_moment / norm - k2_ref) / k2_ref;
    rep.narrow = rep.ratio < ratio_bound && rep.parseval_norm < 1e-2 && rep.parseval_k2 < 2e-2;
    return rep;
}

}  // namespace becgrowth

#endif  // BECGROWTH_COLLISION_MC_HPP
