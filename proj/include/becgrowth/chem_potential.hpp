#ifndef BECGROWTH_CHEM_POTENTIAL_HPP
#define BECGROWTH_CHEM_POTENTIAL_HPP

// =====================================================================
//  becgrowth/chem_potential.hpp
//
//  Condensate chemical potential mu_n as a function of occupation n,
//  and its inverse (the equilibrium occupation for a given bath mu).
//
//  PHYSICS
//    Large n: Thomas-Fermi limit of the interacting ground state,
//        mu_TF(n) = (15 n u wx wy wz m^{3/2} / (16 pi sqrt(2)))^{2/5},
//    with u = 4 pi a hbar^2 / m.  Equivalently, in oscillator form,
//        mu_TF = (hbar wbar / 2) (15 n a / abar)^{2/5},
//        abar = sqrt(hbar / m wbar);
//    the two closed forms are algebraically identical and the test
//    suite checks them against each other to 12 digits.
//
//    n -> 0: the interacting formula loses validity (it vanishes);
//    physically mu must approach the noninteracting ground state
//    energy mu(0) = hbar (wx + wy + wz) / 2.  Between the two limits
//    we interpolate linearly from (0, mu(0)) to (N_x, mu_TF(N_x)),
//    where the crossover count N_x is chosen so that mu_TF(N_x) =
//    2 mu(0): beyond twice the ground-state energy the Thomas-Fermi
//    branch is trusted.  mu_condensate is therefore continuous and
//    strictly increasing, with mu_condensate(0) = mu(0) exactly.
//
//    The inverse n_equilibrium(mu) = 16 pi sqrt(2) mu^{5/2} /
//    (15 u wx wy wz m^{3/2}) answers "how many atoms until the
//    condensate's mu reaches the bath's": growth stalls there.  It
//    requires mu > mu(0); below that no macroscopic condensate exists
//    in equilibrium.
// =====================================================================

#include <cmath>
#include <stdexcept>

#include "becgrowth/core.hpp"

namespace becgrowth {

class ChemPotentialModel {
  public:
    ChemPotentialModel(const Species& species, const Trap& trap,
                       const PhysicalConstants& consts = {})
        : species_(species), trap_(trap), consts_(consts) {
        if (species.mass <= 0.0)
            throw std::domain_error("ChemPotentialModel: mass must be positive");
        if (trap.omega_x <= 0.0 || trap.omega_y <= 0.0 || trap.omega_z <= 0.0)
            throw std::domain_error("ChemPotentialModel: trap frequencies must be positive");
        const double u = interaction_strength(species, consts);
        tf_coeff_ = 15.0 * u * trap.omega_product() * std::pow(species.mass, 1.5) /
                    (16.0 * M_PI * std::sqrt(2.0));
        mu0_ = 0.5 * consts.hbar * trap.omega_sum();
        // crossover: the occupation whose Thomas-Fermi mu equals 2*mu(0)
        crossover_n_ = std::pow(2.0 * mu0_, 2.5) / tf_coeff_;
    }

    // noninteracting ground state energy, mu at n = 0
    double mu_noninteracting() const { return mu0_; }

    // Thomas-Fermi chemical potential; valid for large n, used above N_x
    double mu_thomas_fermi(double n) const {
        if (n < 0.0) throw std::domain_error("mu_thomas_fermi: n must be nonnegative");
        return std::pow(tf_coeff_ * n, 0.4);
    }

    // crossover occupation N_x with mu_TF(N_x) = 2 mu(0)
    double crossover_count() const { return crossover_n_; }

    // mu_n over the full range: linear interpolation below N_x, TF above
    double mu_condensate(double n) const {
        if (n < 0.0) throw std::domain_error("mu_condensate: n must be nonnegative");
        if (n < crossover_n_) return mu0_ * (1.0 + n / crossover_n_);
        return mu_thomas_fermi(n);
    }

    // occupation at which mu_TF(n) = mu; growth saturates near here
    double n_equilibrium(double mu) const {
        if (!(mu > mu0_))
            throw std::domain_error(
                "n_equilibrium: bath mu at or below the ground state energy, "
                "no macroscopic condensate in equilibrium");
        return std::pow(mu, 2.5) / tf_coeff_;
    }

    const Species& species() const { return species_; }
    const Trap& trap() const { return trap_; }
    const PhysicalConstants& constants() const { return consts_; }

  private:
    Species species_;
    Trap trap_;
    PhysicalConstants consts_;
    double tf_coeff_;     // J^{5/2} per atom: mu_TF = (tf_coeff * n)^{2/5}
    double mu0_;
    double crossover_n_;
};

}  // namespace becgrowth

#endif  // BECGROWTH_CHEM_POTENTIAL_HPP
