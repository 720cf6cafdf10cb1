#include "qusense/planner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qusense/optimize.hpp"
#include "qusense/spectra.hpp"
#include "qusense/threadpool.hpp"

namespace qusense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

double required_T_2nd(double gamma_m, double gamma0, double S_C, double a) {
    if (!(gamma_m > 0.0))
        throw std::invalid_argument("required_T_2nd: gamma_m must be > 0");
    const double a2 = a * a;
    const double s = (gamma0 + gamma_m) * S_C / (a2 / 2.0);
    if (s >= 1.0) return kInf;
    return (gamma0 + gamma_m) / (4.0 * gamma_m * gamma_m) *
           std::exp(8.0 * gamma_m * S_C / a2) / (1.0 - s * s);
}

double required_T_4th(double gamma_m, double gamma0, double S_C, double a) {
    if (!(gamma_m > 0.0))
        throw std::invalid_argument("required_T_4th: gamma_m must be > 0");
    const double sum = gamma_m + gamma0;
    return 2.0 * sum * sum / (gamma_m * gamma_m * gamma_m) *
           std::exp(8.0 * gamma_m * S_C / (a * a));
}

double opt_fraction(double g0) {
    if (!(g0 >= 0.0) || !(g0 <= 1.0))
        throw std::invalid_argument("opt_fraction: gamma0_bar must be in [0, 1]");
    if (g0 >= 1.0) return 2.0 / 3.0;
    // root of 2 g^2 + (4 g0 - 1) g - 2 g0 (1 - g0) = 0 divided by (1 - g0)
    const double g = 0.25 * ((1.0 - 4.0 * g0) + std::sqrt(1.0 + 8.0 * g0));
    return g / (1.0 - g0);
}

double gamma_m_star_4th(double gamma0, double S_C, double a) {
    const double beta = 8.0 * S_C / (a * a);
    if (!(beta > 0.0)) return kInf;  // no noise: time only falls with gamma_m
    const double q = 1.0 - beta * gamma0;
    return (q + std::sqrt(q * q + 12.0 * beta * gamma0)) / (2.0 * beta);
}

namespace {

PlanPoint make_point(Order order, double gamma0, double S_C, double a) {
    PlanPoint pt;
    pt.S_C = S_C;
    pt.gamma0 = gamma0;
    pt.a = a;
    pt.order = order;
    pt.snr_bound = snr_2nd_bound(a, gamma0, S_C);
    return pt;
}

}  // namespace

PlanPoint optimize_T(Order order, double gamma0, double S_C, double a,
                     double gamma_m_max) {
    if (!(a > 0.0)) throw std::invalid_argument("optimize_T: a must be > 0");
    if (!(gamma_m_max > 0.0) || gamma_m_max > gamma_M_max(a) + 1e-12 * a)
        throw std::invalid_argument(
            "optimize_T: gamma_m_max must be in (0, 0.18 a]");
    if (!(S_C >= 0.0) || !(gamma0 >= 0.0))
        throw std::invalid_argument("optimize_T: S_C and gamma0 must be >= 0");

    PlanPoint pt = make_point(order, gamma0, S_C, a);
    const double a2 = a * a;

    if (order == Order::Second) {
        const double g0 = 2.0 * gamma0 * S_C / a2;
        if (g0 >= 1.0) {
            pt.feasible = false;
            pt.gamma_m_opt = kNaN;
            pt.t_opt = kInf;
            return pt;
        }
        double gsel;
        if (S_C == 0.0) {
            // reduced objective is monotonically decreasing: boundary optimum
            gsel = gamma_m_max;
        } else {
            const double edge = (1.0 - g0) * a2 / (2.0 * S_C);  // gamma units
            const double hi = std::min(gamma_m_max, edge * (1.0 - 1e-12));
            const double lo = hi * 1e-15;
            auto reduced = [&](double lg) {
                const double gm = std::exp(lg);
                const double g = 2.0 * gm * S_C / a2;
                return (g0 + g) / (g * g * (1.0 - g0 - g));
            };
            gsel = std::exp(golden_min(reduced, std::log(lo), std::log(hi), 1e-12));
            if (reduced(std::log(hi)) <= reduced(std::log(gsel))) gsel = hi;
        }
        pt.gamma_m_opt = gsel;
        pt.t_opt = required_T_2nd(gsel, gamma0, S_C, a);
        pt.feasible = std::isfinite(pt.t_opt);
        return pt;
    }

    auto full = [&](double lg) {
        return std::log(required_T_4th(std::exp(lg), gamma0, S_C, a));
    };
    const double hi = gamma_m_max;
    const double lo = hi * 1e-15;
    double gsel = std::exp(golden_min(full, std::log(lo), std::log(hi), 1e-12));
    if (full(std::log(hi)) <= full(std::log(gsel))) gsel = hi;
    pt.gamma_m_opt = gsel;
    pt.t_opt = required_T_4th(gsel, gamma0, S_C, a);
    pt.feasible = true;
    return pt;
}

double scaling_T_2nd(double gamma0, double S_C, double a, double gamma_m_max) {
    const double a2 = a * a;
    const double g0 = 2.0 * gamma0 * S_C / a2;
    if (g0 >= 1.0) return kInf;
    if ((gamma0 + gamma_m_max) * S_C > a2 / 2.0) {
        // strong noise: interior optimum, time set by the noise floor
        const double d = 1.0 - g0;
        return (S_C / a2) / (d * d * d);
    }
    // weak noise: optimum pinned at the strength cap
    return (1.0 / gamma_m_max) * (1.0 + gamma0 / gamma_m_max) / (1.0 - g0);
}

double scaling_T_4th(double gamma0, double S_C, double a, double gamma_m_max) {
    const double a2 = a * a;
    if (gamma_m_max * S_C > a2 / 8.0) {
        const double b = 1.0 + 8.0 * gamma0 * S_C / a2;
        return (8.0 * S_C / a2) * b * b;
    }
    const double b = 1.0 + gamma0 / gamma_m_max;
    return (1.0 / gamma_m_max) * b * b;
}

std::vector<PlanPoint> plan_map(Order order, const std::vector<double>& S_C_grid,
                                const std::vector<double>& gamma0_grid, double a,
                                double gamma_m_max, int threads) {
    if (S_C_grid.empty() || gamma0_grid.empty())
        throw std::invalid_argument("plan_map: grids must be non-empty");
    std::vector<PlanPoint> out(S_C_grid.size() * gamma0_grid.size());
    parallel_for(out.size(), threads, [&](std::size_t k) {
        const double S_C = S_C_grid[k / gamma0_grid.size()];
        const double g0 = gamma0_grid[k % gamma0_grid.size()];
        out[k] = optimize_T(order, g0, S_C, a, gamma_m_max);
    });
    return out;
}

}  // namespace qusense
