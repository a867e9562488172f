#ifndef BECGROWTH_RATES_HPP
#define BECGROWTH_RATES_HPP

// =====================================================================
//  becgrowth/rates.hpp
//
//  Collision rates feeding (and draining) the condensate, in the
//  analytic thermal-bath form.
//
//  PHYSICS
//    Two bath atoms collide at the trap centre; one drops into the
//    condensate, carrying energy mu_n.  For a Boltzmann bath at
//    (T, mu) the full 6-D collision integral reduces to
//
//        W+(n) = [4 m (a k_B T)^2 / (pi hbar^3)]
//                * e^{2 mu / k_B T} * z K_1(z),      z = mu_n / k_B T,
//
//    with K_1 the modified Bessel function.  The bracketed prefactor
//    is of the order of the elastic collision rate at the critical
//    point (~2.4e2 1/s for Rb-87 at 500 nK).  The reverse process is
//    fixed by detailed balance,
//
//        W-(n) = W+(n) * e^{(mu_n - mu) / k_B T},
//
//    and the mean-field growth rate is
//
//        dn/dt = 2 W+(n) { [1 - e^{(mu_n - mu)/k_B T}] n + 1 },
//
//    the "+1" being spontaneous feeding: growth starts from n = 0.
//    Growth stalls at the stationary occupation n_s solving
//    (e^{(mu_n - mu)/kT} - 1) n = 1, a hair above n_equilibrium(mu).
//
//  NUMERICS
//    The exponent (mu_n - mu)/kT is clamped to +-700 (warning logged
//    once per context) so extreme test inputs degrade gracefully
//    instead of producing inf*0 = nan.  rate_scale is a test hook
//    that multiplies both W+ and W- (trajectory time-rescaling
//    property); it defaults to 1 and is not reachable from configs.
// =====================================================================

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "becgrowth/chem_potential.hpp"
#include "becgrowth/core.hpp"
#include "becgrowth/special.hpp"

namespace becgrowth {

namespace detail {

// Exponent guard shared by every rate evaluation; warns once per process.
inline double clamp_exponent(double x) {
    if (x > 700.0 || x < -700.0) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::fprintf(stderr,
                         "becgrowth: warning: exponent %.3g clamped to +-700\n", x);
        return x > 0.0 ? 700.0 : -700.0;
    }
    return x;
}

}  // namespace detail

class RateContext {
  public:
    RateContext(const Species& species, const Trap& trap, double temperature,
                double mu_bath, const PhysicalConstants& consts = {},
                double rate_scale = 1.0)
        : mu_model_(species, trap, consts),
          consts_(consts),
          temperature_(temperature),
          mu_bath_(mu_bath),
          rate_scale_(rate_scale) {
        if (!(temperature > 0.0))
            throw std::domain_error("RateContext: temperature must be positive");
        kT_ = consts.k_B * temperature;
        const double akT = species.scattering_length * kT_;
        prefactor_ = 4.0 * species.mass * akT * akT /
                     (M_PI * consts.hbar * consts.hbar * consts.hbar);
        fugacity_factor_ = std::exp(2.0 * detail::clamp_exponent(mu_bath / kT_));
    }

    // rate of atoms entering the condensate per scattering channel, 1/s
    double w_plus(double n) const { return w_plus_at_energy(mu_model_.mu_condensate(n)); }

    // the same rate for a transition at energy eps directly (the n
    // dependence enters only through eps = mu_n)
    double w_plus_at_energy(double eps) const {
        const double z = eps / kT_;
        const double zk1 = (z > 745.0) ? 0.0 : z * bessel_k1(z);
        return rate_scale_ * prefactor_ * fugacity_factor_ * zk1;
    }

    // reverse rate, fixed by detailed balance at the same n
    double w_minus(double n) const {
        return w_plus(n) * balance_factor(n);
    }

    // mean-field growth rate dn/dt
    double net_growth_rate(double n) const {
        return 2.0 * w_plus(n) * ((1.0 - balance_factor(n)) * n + 1.0);
    }

    // e^{(mu_n - mu)/kT}; > 1 once the condensate overshoots the bath
    double balance_factor(double n) const {
        const double x = (mu_model_.mu_condensate(n) - mu_bath_) / kT_;
        return std::exp(detail::clamp_exponent(x));
    }

    // Stationary occupation: bisection on g(n) = (e^{(mu_n-mu)/kT} - 1) n - 1,
    // initially bracketed by [n_equilibrium(mu), 2 n_equilibrium(mu)] and
    // widened geometrically if mu sits so close to mu(0) that the low-n
    // interpolation branch shifts the root outside.  g is strictly
    // increasing wherever it is positive, so the root is unique.
    // Independent of the ODE integration path; requires mu_bath > mu(0).
    double stationary_n(double rel_tol = 1e-13) const {
        const double n_eq = mu_model_.n_equilibrium(mu_bath_);
        double lo = n_eq, hi = 2.0 * n_eq;
        auto g = [this](double n) { return (balance_factor(n) - 1.0) * n - 1.0; };
        for (int i = 0; g(lo) > 0.0; ++i) {
            if (i >= 60) throw NumericsError("stationary_n: no lower bracket");
            lo *= 0.5;
        }
        for (int i = 0; g(hi) < 0.0; ++i) {
            if (i >= 60) throw NumericsError("stationary_n: no upper bracket");
            hi *= 2.0;
        }
        for (int i = 0; i < 200 && (hi - lo) > rel_tol * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // context with the same species/trap but a moved bath (depleting mode)
    RateContext with_bath(double temperature, double mu_bath) const {
        return RateContext(mu_model_.species(), mu_model_.trap(), temperature,
                           mu_bath, consts_, rate_scale_);
    }

    const ChemPotentialModel& mu_model() const { return mu_model_; }
    double temperature() const { return temperature_; }
    double mu_bath() const { return mu_bath_; }
    double kT() const { return kT_; }
    double prefactor() const { return prefactor_; }
    double rate_scale() const { return rate_scale_; }

  private:
    ChemPotentialModel mu_model_;
    PhysicalConstants consts_;
    double temperature_;
    double mu_bath_;
    double kT_;
    double prefactor_;        // 4 m (a kT)^2 / (pi hbar^3)
    double fugacity_factor_;  // e^{2 mu / kT}
    double rate_scale_;
};

}  // namespace becgrowth

#endif  // BECGROWTH_RATES_HPP
