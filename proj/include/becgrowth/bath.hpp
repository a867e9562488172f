#ifndef BECGROWTH_BATH_HPP
#define BECGROWTH_BATH_HPP

// =====================================================================
//  becgrowth/bath.hpp
//
//  Truncated thermal reservoir above the evaporation cut.
//
//  The non-condensate is modelled as a Boltzmann gas in the harmonic
//  trap, truncated so that only single-particle energies above the cut
//  eta * k_B T participate in collisions that feed the condensate.
//  With the density of trap states rho(E):
//
//    quadratic DOS  rho(E) = E^2 / (2 (hbar wbar)^3)   (3-D harmonic)
//    flat DOS       rho(E) = const                     (reference model)
//
//  the fraction of the thermal population above the cut is the upper
//  regularized gamma integral
//
//    quadratic:  Q(3, eta) = (1 + eta + eta^2/2) e^-eta
//    flat:       e^-eta
//
//  Moments of the *truncated* gas (energies restricted to [0, eta kT],
//  the part that remains after the cut is enforced) are lower
//  incomplete gamma functions:
//
//    N = e^(mu/kT) (kT)^3 gamma(3, eta) / (2 (hbar wbar)^3)
//    E = e^(mu/kT) (kT)^4 gamma(4, eta) / (2 (hbar wbar)^3)
//
//  Rethermalization redistributes (N, E) over an untruncated Boltzmann
//  distribution; matching the mean energy gives the full-space
//  temperature
//
//    T' = T * gamma(4, eta) / (3 gamma(3, eta))  <  T
//
//  and mu' follows from matching N.  couple_step removes dn atoms each
//  carrying energy mu_n from the reservoir and refits (T, mu) at fixed
//  eta; the refit is closed-form because both moments share the factor
//  e^(mu/kT)/(hbar wbar)^3:
//
//    kT' = (E'/N') gamma(3, eta) / gamma(4, eta)
//    mu' = kT' ln[ 2 N' (hbar wbar)^3 / ((kT')^3 gamma(3, eta)) ]
//
//  The refit reproduces (N', E') exactly (to rounding), which is what
//  makes particle and energy bookkeeping along a coupled growth run
//  conservative at the 1e-12 level per step.
// =====================================================================

#include <cmath>
#include <sstream>
#include <string>

#include "becgrowth/core.hpp"
#include "becgrowth/special.hpp"

namespace becgrowth {

enum class DosModel { Quadratic, Flat };

// Fraction of a Boltzmann population with energy above eta * kT.
inline double fraction_above_cut(double eta, DosModel dos) {
    if (!(eta > 0.0)) throw std::domain_error("fraction_above_cut: eta must be positive");
    switch (dos) {
        case DosModel::Quadratic:
            return gamma_q(3.0, eta);
        case DosModel::Flat:
            // Q(1, eta) in closed form
            return std::exp(-eta);
    }
    throw std::domain_error("fraction_above_cut: unknown DOS model");
}

// State of the truncated reservoir.  hbar_omega_bar is the trap level
// spacing hbar * (wx wy wz)^(1/3) in joules; temperature in kelvin,
// chemical_potential in joules, eta dimensionless.
struct TruncatedBath {
    double temperature = 0.0;
    double chemical_potential = 0.0;
    double eta = 10.0;
    double hbar_omega_bar = 0.0;
};

struct BathMoments {
    double atom_count = 0.0;    // N of the truncated gas
    double total_energy = 0.0;  // E of the truncated gas [J]
    double mean_energy() const { return total_energy / atom_count; }
};

namespace detail {

// gamma(3, eta) = Gamma(3) P(3, eta), Gamma(3) = 2
inline double lower_gamma3(double eta) { return 2.0 * gamma_p(3.0, eta); }
// gamma(4, eta) = Gamma(4) P(4, eta), Gamma(4) = 6
inline double lower_gamma4(double eta) { return 6.0 * gamma_p(4.0, eta); }

inline std::string bath_dump(const TruncatedBath& b) {
    std::ostringstream os;
    os << "T=" << b.temperature << " K, mu=" << b.chemical_potential
       << " J, eta=" << b.eta << ", hbar_omega_bar=" << b.hbar_omega_bar << " J";
    return os.str();
}

}  // namespace detail

inline BathMoments truncated_moments(const TruncatedBath& bath,
                                     const PhysicalConstants& consts = {}) {
    if (!(bath.temperature > 0.0)) throw std::domain_error("truncated_moments: T must be positive");
    if (!(bath.eta > 0.0)) throw std::domain_error("truncated_moments: eta must be positive");
    if (!(bath.hbar_omega_bar > 0.0))
        throw std::domain_error("truncated_moments: hbar_omega_bar must be positive");
    const double kT = consts.k_B * bath.temperature;
    const double fug = std::exp(bath.chemical_potential / kT);
    const double level3 = bath.hbar_omega_bar * bath.hbar_omega_bar * bath.hbar_omega_bar;
    const double base = fug / (2.0 * level3);
    BathMoments m;
    m.atom_count = base * kT * kT * kT * detail::lower_gamma3(bath.eta);
    m.total_energy = base * kT * kT * kT * kT * detail::lower_gamma4(bath.eta);
    return m;
}

// Chemical potential of a truncated bath holding atom_count atoms at
// the given temperature.  Inverse of truncated_moments in N.
inline double bath_mu_for_count(double atom_count, double temperature, double eta,
                                double hbar_omega_bar, const PhysicalConstants& consts = {}) {
    if (!(atom_count > 0.0)) throw std::domain_error("bath_mu_for_count: atom count must be positive");
    const double kT = consts.k_B * temperature;
    const double level3 = hbar_omega_bar * hbar_omega_bar * hbar_omega_bar;
    return kT * std::log(2.0 * atom_count * level3 /
                         (kT * kT * kT * detail::lower_gamma3(eta)));
}

// Full-space (T, mu) that an untruncated Boltzmann gas would need to
// carry the same N and mean energy as the truncated bath.  T' < T
// always: the cut removes the hottest atoms, so redistributing the
// remaining energy over an unbounded spectrum cools the fit.
inline TruncatedBath retherm(const TruncatedBath& bath, const PhysicalConstants& consts = {}) {
    const BathMoments m = truncated_moments(bath, consts);
    const double g3 = detail::lower_gamma3(bath.eta);
    const double g4 = detail::lower_gamma4(bath.eta);
    const double t_prime = bath.temperature * g4 / (3.0 * g3);
    // match N: e^(mu'/kT') (kT')^3 = e^(mu/kT) (kT)^3 gamma(3,eta) / Gamma(3)
    const double kT = consts.k_B * bath.temperature;
    const double kTp = consts.k_B * t_prime;
    const double mu_prime =
        kTp * (bath.chemical_potential / kT + 3.0 * std::log(kT / kTp) + std::log(g3 / 2.0));
    TruncatedBath out = bath;
    out.temperature = t_prime;
    out.chemical_potential = mu_prime;
    (void)m;
    return out;
}

// Remove delta_n atoms, each carrying energy mu_n, from the reservoir
// and refit (T, mu) at fixed eta.  Errors if the reservoir would be
// left with nonpositive atom count or energy.
inline TruncatedBath couple_step(const TruncatedBath& bath, double delta_n, double mu_n,
                                 const PhysicalConstants& consts = {}) {
    const BathMoments m = truncated_moments(bath, consts);
    const double n_new = m.atom_count - delta_n;
    const double e_new = m.total_energy - delta_n * mu_n;
    if (!(n_new > 0.0) || !(e_new > 0.0)) {
        throw NumericsError("couple_step: reservoir exhausted (N'=" + std::to_string(n_new) +
                            ", E'=" + std::to_string(e_new) + " J) from bath " +
                            detail::bath_dump(bath));
    }
    const double g3 = detail::lower_gamma3(bath.eta);
    const double g4 = detail::lower_gamma4(bath.eta);
    const double kT_new = (e_new / n_new) * g3 / g4;
    TruncatedBath out = bath;
    out.temperature = kT_new / consts.k_B;
    out.chemical_potential =
        bath_mu_for_count(n_new, out.temperature, bath.eta, bath.hbar_omega_bar, consts);
    if (out.chemical_potential >= bath.eta * kT_new) {
        throw NumericsError("couple_step: refit mu crossed the cut (mu'=" +
                            std::to_string(out.chemical_potential) + " J >= eta kT') from bath " +
                            detail::bath_dump(bath));
    }
    return out;
}

}  // namespace becgrowth

#endif  // BECGROWTH_BATH_HPP
