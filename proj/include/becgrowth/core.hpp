#ifndef BECGROWTH_CORE_HPP
#define BECGROWTH_CORE_HPP

// =====================================================================
//  becgrowth/core.hpp
//
//  Shared value types for the condensate growth library: physical
//  constants, atomic species, trap geometry, and the thermal reservoir
//  ("bath") state that drives condensate growth.
//
//  UNITS
//    Strict SI throughout the library: kg, m, s, J, K, rad/s.
//    Convenience units (nK, Hz, nm) are converted at the CLI boundary
//    and never appear in library code.
//
//  CONVENTIONS
//    * The trap minimum defines the energy zero, V(0) = 0.  A bath mode
//      of wave vector K at the trap centre has energy hbar^2 K^2 / 2m.
//    * Trap frequencies are angular frequencies (rad/s).
//    * The bath is parameterised by temperature T, chemical potential
//      mu (relative to V(0) = 0), and the energy cut eta = E_cut / kT
//      above which atoms are removed by evaporative cooling.
// =====================================================================

#include <cmath>
#include <stdexcept>
#include <string>

namespace becgrowth {

struct PhysicalConstants {
    double hbar = 1.054571817e-34;  // J s
    double k_B  = 1.380649e-23;     // J/K, exact in SI
};

// Atomic species. Masses are standard tabulated values (external
// constants, not derived here); both fields can be overridden through
// the configuration file.
struct Species {
    double mass = 0.0;               // kg
    double scattering_length = 0.0;  // m, s-wave
    std::string label;
};

inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline Species rb87_species() {
    return Species{86.909180531 * atomic_mass_unit, 5.71e-9, "rb87"};
}

inline Species na23_species() {
    return Species{22.98976928 * atomic_mass_unit, 2.75e-9, "na23"};
}

// Two-body contact interaction strength u = 4 pi a hbar^2 / m  [J m^3].
inline double interaction_strength(const Species& s, const PhysicalConstants& c) {
    if (s.mass <= 0.0)
        throw std::domain_error("interaction_strength: species mass must be positive");
    return 4.0 * M_PI * s.scattering_length * c.hbar * c.hbar / s.mass;
}

// Harmonic trap, angular frequencies in rad/s.
struct Trap {
    double omega_x = 0.0;
    double omega_y = 0.0;
    double omega_z = 0.0;

    // geometric mean, the single frequency of the equivalent isotropic trap
    double omega_bar() const { return std::cbrt(omega_x * omega_y * omega_z); }
    double omega_sum() const { return omega_x + omega_y + omega_z; }
    double omega_product() const { return omega_x * omega_y * omega_z; }
};

inline Trap isotropic_trap(double omega) { return Trap{omega, omega, omega}; }

enum class BathMode {
    Static,     // fixed (T, mu) reservoir
    Depleting   // reservoir loses the atoms and energy the condensate gains
};

// Thermal reservoir state. Invariants (enforced by validate_config, and
// by TruncatedBath for the cooling model):
//   temperature > 0,  eta > 0,  0 <= chemical_potential < eta*k_B*T.
// A negative chemical potential models the pre-condensation (latency)
// regime and is allowed only when the config sets allow_negative_mu.
struct BathState {
    double temperature = 0.0;         // K
    double chemical_potential = 0.0;  // J
    double eta = 10.0;                // dimensionless energy cut E_cut/kT
    BathMode mode = BathMode::Static;
};

// Thrown when an iterative numerical scheme fails to converge; message
// carries the diagnostic state.
class NumericsError : public std::runtime_error {
  public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace becgrowth

#endif  // BECGROWTH_CORE_HPP
