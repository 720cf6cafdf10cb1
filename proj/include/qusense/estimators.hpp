#pragma once

// Sliding-window correlation estimators over shot records. Windows never
// cross chunk boundaries (chunks are statistically independent runs), the
// point value is the window-weighted mean and the standard error comes from
// the scatter of per-chunk means. Chunk sums are accumulated in a fixed
// index order, so estimates are bit-identical for any worker or shard count.

#include <array>
#include <vector>

#include "qusense/montecarlo.hpp"

namespace qusense {

struct LagSeries {
    std::vector<int> lag;       // lag in cycles; may start at 0 for analytic input
    std::vector<double> value;
    std::vector<double> se;     // standard errors; NaN when not estimable
    double dt = 0.0;            // time per unit lag

    double time_of(std::size_t i) const { return lag[i] * dt; }
};

struct Corr4Grid {
    int n_f2 = 0, n_f1 = 0;     // grid is u in 1..n_f2, v in 1..n_f1, w in 1..n_f2
    std::vector<std::array<int, 3>> lags;
    std::vector<double> value;
    std::vector<double> se;
    double dt = 0.0;            // time per unit lag (one cycle = 2 tau_I)

    std::size_t index(int u, int v, int w) const {
        return (static_cast<std::size_t>(u - 1) * n_f1 + (v - 1)) * n_f2 + (w - 1);
    }
};

// second-order estimator on the single-readout pattern, lags 1..max_lag
LagSeries estimate_G2(const ShotRecords& rec, int max_lag);

// fourth-order estimator on the alternating pattern over the full
// (n_f2, n_f1, n_f2) lag grid
Corr4Grid estimate_G4(const ShotRecords& rec, int n_f2, int n_f1);

}  // namespace qusense
