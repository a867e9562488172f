#ifndef BECGROWTH_SPECIAL_HPP
#define BECGROWTH_SPECIAL_HPP

// =====================================================================
//  becgrowth/special.hpp
//
//  The two special functions the physics needs:
//
//    bessel_k1(z)   modified Bessel function K_1, the shape factor of
//                   the analytic condensate feeding rate.  Backed by
//                   the C++ standard library's cyl_bessel_k behind this
//                   contract; its accuracy is not taken on faith but
//                   gated wholesale against an independent quadrature
//                   of the integral representation (see validate.hpp
//                   and the test suite), required <= 1e-10 relative on
//                   z in [1e-6, 700].
//
//    gamma_p / gamma_q   regularized incomplete gamma functions
//                   P(s,x), Q(s,x); P feeds the truncated-bath moments
//                   (s = 3, 4) and Q the chi-square p-values in the
//                   stochastic tests.  Series for x < s+1, Lentz
//                   continued fraction otherwise; both converge to
//                   ~1e-15 relative for the s ranges used here.
//
//  Edge policy: bessel_k1 throws std::domain_error for z <= 0 and
//  underflows to exactly 0 once exp(-z) leaves the representable
//  range (z > ~745), matching the physical reading "rate too small
//  to matter at double precision".
// =====================================================================

#include <cmath>
#include <limits>
#include <stdexcept>

#include "becgrowth/core.hpp"

namespace becgrowth {

inline double bessel_k1(double z) {
    if (!(z > 0.0))
        throw std::domain_error("bessel_k1: argument must be positive");
    // K1(z) ~ sqrt(pi/2z) e^{-z}: below double's exp range the value is 0.
    if (z > 745.0) return 0.0;
    return std::cyl_bessel_k(1.0, z);
}

namespace detail {

// P(s,x) by its power series; reliable for x < s+1.
inline double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw NumericsError("gamma_p: series failed to converge");
}

// Q(s,x) by modified Lentz continued fraction; reliable for x >= s+1.
inline double gamma_q_cf(double s, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw NumericsError("gamma_q: continued fraction failed to converge");
}

}  // namespace detail

// Regularized lower incomplete gamma P(s, x) = gamma(s,x) / Gamma(s).
inline double gamma_p(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gamma_p: s must be positive");
    if (x < 0.0) throw std::domain_error("gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return detail::gamma_p_series(s, x);
    return 1.0 - detail::gamma_q_cf(s, x);
}

// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x).
inline double gamma_q(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gamma_q: s must be positive");
    if (x < 0.0) throw std::domain_error("gamma_q: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - detail::gamma_p_series(s, x);
    return detail::gamma_q_cf(s, x);
}

// Unnormalized lower incomplete gamma  gamma(s, x) = int_0^x t^{s-1} e^{-t} dt.
inline double lower_incomplete_gamma(double s, double x) {
    return gamma_p(s, x) * std::tgamma(s);
}

}  // namespace becgrowth

#endif  // BECGROWTH_SPECIAL_HPP
