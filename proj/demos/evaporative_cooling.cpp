// Truncated-bath bookkeeping: removing the tail above the cut and letting
// the remainder rethermalize lands below the pre-cut temperature, and the
// cooling step gets weaker as the cut moves out.

#include <cstdio>

#include <becgrowth/bath.hpp>

int main() {
    using namespace becgrowth;
    const PhysicalConstants consts;

    const double hbar_wbar = consts.hbar * 2.0 * M_PI * 150.0;
    std::printf("%8s %14s %14s %14s\n", "eta", "tail fraction", "flat-dos tail", "T'/T");
    for (double eta : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
        TruncatedBath bath;
        bath.temperature = 500e-9;
        bath.chemical_potential = 0.0;
        bath.eta = eta;
        bath.hbar_omega_bar = hbar_wbar;

        const TruncatedBath cooled = retherm(bath, consts);
        std::printf("%8.1f %14.6g %14.6g %14.6f\n", eta,
                    fraction_above_cut(eta, DosModel::Quadratic),
                    fraction_above_cut(eta, DosModel::Flat),
                    cooled.temperature / bath.temperature);
    }
    return 0;
}
