#pragma once

// Derivative-free 1-D minimization. golden_min assumes a unimodal objective
// on [lo, hi] (monotone objectives converge to the better endpoint) and
// returns the abscissa of the minimum to the requested relative tolerance.

#include <cmath>
#include <stdexcept>

namespace qusense {

template <typename F>
double golden_min(F&& f, double lo, double hi, double rel_tol = 1e-10,
                  int max_iter = 400) {
    if (!(hi > lo)) throw std::invalid_argument("golden_min: empty interval");
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter; ++it) {
        if (b - a <= rel_tol * (std::abs(a) + std::abs(b)) + 1e-300) break;
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace qusense
