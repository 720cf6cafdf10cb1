#include "qusense/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qusense {

namespace {

// weighted chunk-scatter mean and standard error: value = sum_c S_c / sum_c w_c,
// se^2 = C/(C-1) * sum_c (w_c/W)^2 (S_c/w_c - value)^2 over chunks with w_c > 0
struct ChunkStats {
    double value = 0.0;
    double se = std::numeric_limits<double>::quiet_NaN();
};

ChunkStats reduce_chunks(const std::vector<double>& sums,
                         const std::vector<double>& weights) {
    double S = 0.0, W = 0.0;
    std::size_t n_used = 0;
    for (std::size_t c = 0; c < sums.size(); ++c) {
        if (weights[c] <= 0.0) continue;
        S += sums[c];
        W += weights[c];
        ++n_used;
    }
    ChunkStats st;
    if (W <= 0.0) throw std::invalid_argument("estimator: no valid windows");
    st.value = S / W;
    if (n_used >= 2) {
        double acc = 0.0;
        for (std::size_t c = 0; c < sums.size(); ++c) {
            if (weights[c] <= 0.0) continue;
            const double d = sums[c] / weights[c] - st.value;
            const double f = weights[c] / W;
            acc += f * f * d * d;
        }
        st.se = std::sqrt(acc * static_cast<double>(n_used) /
                          static_cast<double>(n_used - 1));
    }
    return st;
}

}  // namespace

LagSeries estimate_G2(const ShotRecords& rec, int max_lag) {
    if (rec.seq.pattern != Pattern::XY)
        throw std::invalid_argument("estimate_G2: records must be the single-readout pattern");
    if (max_lag < 1) throw std::invalid_argument("estimate_G2: max_lag must be >= 1");
    const std::size_t n_chunks = rec.n_chunks();
    bool any = false;
    for (std::size_t c = 0; c < n_chunks; ++c)
        if (rec.chunk_end(c) - rec.chunk_begin(c) >
            static_cast<std::size_t>(max_lag))
            any = true;
    if (!any)
        throw std::invalid_argument("estimate_G2: not enough records for requested lag");

    LagSeries out;
    out.dt = rec.seq.cycle_time(rec.tau_I);
    out.lag.resize(max_lag);
    out.value.resize(max_lag);
    out.se.resize(max_lag);

    std::vector<double> sums(n_chunks), weights(n_chunks);
    for (int n = 1; n <= max_lag; ++n) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t b = rec.chunk_begin(c), e = rec.chunk_end(c);
            long long acc = 0;
            std::size_t wins = 0;
            if (e - b > static_cast<std::size_t>(n)) {
                wins = e - b - n;
                for (std::size_t i = b; i + n < e; ++i)
                    acc += static_cast<int>(rec.y[i + n]) * static_cast<int>(rec.y[i]);
            }
            sums[c] = static_cast<double>(acc);
            weights[c] = static_cast<double>(wins);
        }
        const ChunkStats st = reduce_chunks(sums, weights);
        out.lag[n - 1] = n;
        out.value[n - 1] = st.value;
        out.se[n - 1] = st.se;
    }
    return out;
}

Corr4Grid estimate_G4(const ShotRecords& rec, int n_f2, int n_f1) {
    if (rec.seq.pattern != Pattern::XYXZ)
        throw std::invalid_argument("estimate_G4: records must be the alternating pattern");
    if (n_f2 < 1 || n_f1 < 1)
        throw std::invalid_argument("estimate_G4: grid dimensions must be >= 1");
    const int max_span = 2 * n_f2 + n_f1;
    const std::size_t n_chunks = rec.n_chunks();
    bool any = false;
    for (std::size_t c = 0; c < n_chunks; ++c)
        if (rec.chunk_end(c) - rec.chunk_begin(c) >
            static_cast<std::size_t>(max_span))
            any = true;
    if (!any)
        throw std::invalid_argument("estimate_G4: not enough records for requested grid");

    Corr4Grid out;
    out.n_f2 = n_f2;
    out.n_f1 = n_f1;
    out.dt = rec.seq.cycle_time(rec.tau_I);
    const std::size_t cells =
        static_cast<std::size_t>(n_f2) * n_f1 * n_f2;
    out.lags.resize(cells);
    out.value.resize(cells);
    out.se.resize(cells);

    std::vector<double> sums(n_chunks), weights(n_chunks);
    for (int u = 1; u <= n_f2; ++u)
        for (int v = 1; v <= n_f1; ++v)
            for (int w = 1; w <= n_f2; ++w) {
                const int span = u + v + w;
                for (std::size_t c = 0; c < n_chunks; ++c) {
                    const std::size_t b = rec.chunk_begin(c), e = rec.chunk_end(c);
                    long long acc = 0;
                    std::size_t wins = 0;
                    if (e - b > static_cast<std::size_t>(span)) {
                        wins = e - b - span;
                        for (std::size_t i = b; i + span < e; ++i)
                            acc += static_cast<int>(rec.y[i + span]) *
                                   static_cast<int>(rec.z[i + v + w]) *
                                   static_cast<int>(rec.z[i + w]) *
                                   static_cast<int>(rec.y[i]);
                    }
                    sums[c] = static_cast<double>(acc);
                    weights[c] = static_cast<double>(wins);
                }
                const ChunkStats st = reduce_chunks(sums, weights);
                const std::size_t k = out.index(u, v, w);
                out.lags[k] = {u, v, w};
                out.value[k] = st.value;
                out.se[k] = st.se;
            }
    return out;
}

}  // namespace qusense
