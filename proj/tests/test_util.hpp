#ifndef BECGROWTH_TEST_UTIL_HPP
#define BECGROWTH_TEST_UTIL_HPP

#include <cmath>
#include <limits>

namespace testutil {

inline double rel_err(double measured, double reference) {
    if (reference == 0.0) return std::abs(measured);
    return std::abs(measured - reference) / std::abs(reference);
}

}  // namespace testutil

#endif
