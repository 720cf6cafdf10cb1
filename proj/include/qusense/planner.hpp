#pragma once

// Required data-acquisition-time formulas for unit SNR, their optimization
// over the measurement strength gamma_M in (0, gamma_M_max], the scaling-law
// approximations, and grid maps of the optimum. The second-order selection
// follows the dimensionless reduced objective
//     (g0 + g) / (g^2 (1 - g0 - g)),   g = 2 gamma_M S_C / a^2,
// whose interior minimum sits at (1 - g0) * opt_fraction(g0) with the
// fraction rising from 1/2 to 2/3; the reported time is always the full
// formula at the selected point. The fourth-order selection minimizes the
// full expression directly.

#include <vector>

#include "qusense/dynamics.hpp"

namespace qusense {

enum class Order { Second, Fourth };

struct PlanPoint {
    double S_C = 0.0;
    double gamma0 = 0.0;
    double a = 1.0;
    Order order = Order::Second;
    double gamma_m_opt = 0.0;  // NaN when infeasible
    double t_opt = 0.0;        // +inf when infeasible
    bool feasible = true;
    double snr_bound = 0.0;    // a^2 / (2 gamma0 S_C)

    double gamma0_bar() const { return 2.0 * gamma0 * S_C / (a * a); }
    double gamma_m_bar() const { return 2.0 * gamma_m_opt * S_C / (a * a); }
};

// acquisition time reaching SNR 1; +inf when (gamma0 + gamma_m) S_C >= a^2/2
double required_T_2nd(double gamma_m, double gamma0, double S_C, double a);

// acquisition time reaching SNR 1; always finite for gamma_m > 0
double required_T_4th(double gamma_m, double gamma0, double S_C, double a);

// interior-optimum fraction of the reduced second-order objective:
// g_opt = (1 - g0) * opt_fraction(g0), in (1/2, 2/3)
double opt_fraction(double gamma0_bar);

// stationary point of the full fourth-order time in gamma_M (unconstrained)
double gamma_m_star_4th(double gamma0, double S_C, double a);

PlanPoint optimize_T(Order order, double gamma0, double S_C, double a,
                     double gamma_m_max);

// piecewise scaling approximations of the optimal time; the branch switches
// where the unconstrained optimum would cross gamma_m_max
double scaling_T_2nd(double gamma0, double S_C, double a, double gamma_m_max);
double scaling_T_4th(double gamma0, double S_C, double a, double gamma_m_max);

std::vector<PlanPoint> plan_map(Order order, const std::vector<double>& S_C_grid,
                                const std::vector<double>& gamma0_grid, double a,
                                double gamma_m_max, int threads = 1);

}  // namespace qusense
