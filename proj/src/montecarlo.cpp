#include "qusense/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qusense/threadpool.hpp"

namespace qusense {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t x = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    for (int round = 0; round < 2; ++round) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        x = x ^ (x >> 31);
    }
    return x;
}

namespace {

constexpr double kProbGuard = 1e-12;
constexpr double kBlochSlack = 1e-9;

struct ShotKernel {
    const MeasOps* ops;

    // One measurement shot on the real coefficient vector v (v[0] kept at 0.5):
    // draws the output from the outcome-resolved trace, collapses to the
    // normalized conditional state and applies the intrinsic dephasing.
    int readout_y(std::array<double, 4>& v, double phi_m, Rng& rng) const {
        const std::array<double, 4> w0 = ops->m0.apply(v);
        const std::array<double, 4> wx = ops->mx.apply(v);
        const std::array<double, 4> wy = ops->my.apply(v);
        const double c = std::cos(phi_m), s = std::sin(phi_m);
        double p_plus = 0.5 + s * wx[0] + c * wy[0];
        p_plus = std::clamp(p_plus, kProbGuard, 1.0 - kProbGuard);
        const int out = (rng.uniform() < p_plus) ? +1 : -1;
        std::array<double, 4> t;
        for (int i = 0; i < 4; ++i)
            t[i] = 0.5 * (w0[i] + out * (s * wx[i] + c * wy[i]));
        renorm(v, t);
        return out;
    }

    int readout_z(std::array<double, 4>& v, Rng& rng) const {
        // the noise phase is a global phase on each z Kraus operator and
        // cancels from both the probabilities and the conditional states
        const std::array<double, 4> w0 = ops->m0.apply(v);
        const std::array<double, 4> wz = ops->mz.apply(v);
        double p_plus = 0.5 + wz[0];
        p_plus = std::clamp(p_plus, kProbGuard, 1.0 - kProbGuard);
        const int out = (rng.uniform() < p_plus) ? +1 : -1;
        std::array<double, 4> t;
        for (int i = 0; i < 4; ++i) t[i] = 0.5 * (w0[i] + out * wz[i]);
        renorm(v, t);
        return out;
    }

    void renorm(std::array<double, 4>& v, std::array<double, 4>& t) const {
        if (t[0] < 0.5 * kProbGuard) t[0] = 0.5 * kProbGuard;
        const double scale = 0.5 / t[0];
        for (int i = 0; i < 4; ++i) v[i] = t[i] * scale;
        v = ops->lz.apply(v);
        const double r =
            2.0 * std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
        if (r > 1.0 + kBlochSlack)
            throw std::runtime_error(
                "mc_run: conditional state left the Bloch ball (radius " +
                std::to_string(r) + ")");
    }
};

}  // namespace

ShotRecords mc_run(const McConfig& cfg) {
    cfg.params.check();
    if (cfg.seq.cycles < 1)
        throw std::invalid_argument("mc_run: cycles must be >= 1");
    if (cfg.chunk_cycles < 1)
        throw std::invalid_argument("mc_run: chunk_cycles must be >= 1");
    if (cfg.shards < 1) throw std::invalid_argument("mc_run: shards must be >= 1");

    const int spc = cfg.seq.shots_per_cycle();
    const bool has_z = cfg.seq.pattern == Pattern::XYXZ;

    ShotRecords rec;
    rec.seq = cfg.seq;
    rec.tau_I = cfg.params.tau_I;
    rec.seed = cfg.seed;
    rec.shards = cfg.shards;
    rec.chunk_cycles = cfg.chunk_cycles;
    rec.y.assign(cfg.seq.cycles, 0);
    if (has_z) rec.z.assign(cfg.seq.cycles, 0);
    if (cfg.store_phases)
        rec.phi.assign(cfg.seq.cycles * static_cast<std::size_t>(spc), 0.0);

    const MeasOps ops = MeasOps::build(cfg.params, cfg.mode);
    const ShotKernel kernel{&ops};
    const std::size_t n_chunks = rec.n_chunks();

    parallel_for(n_chunks, cfg.threads, [&](std::size_t ci) {
        const std::size_t c_begin = rec.chunk_begin(ci);
        const std::size_t c_end = rec.chunk_end(ci);
        const std::size_t n_cycles = c_end - c_begin;
        const std::size_t n_shots = n_cycles * static_cast<std::size_t>(spc);

        const std::uint64_t chunk_seed = mix_seed(cfg.seed, ci);
        const double t_start =
            static_cast<double>(c_begin) * static_cast<double>(spc) *
            cfg.params.tau_I;
        const NoisePath path =
            sample_phases(cfg.noise, n_shots, cfg.params.tau_I,
                          mix_seed(chunk_seed, 1), cfg.substeps_per_tau, t_start);
        Rng rng(mix_seed(chunk_seed, 2));

        std::array<double, 4> v{0.5, 0.0, 0.0, 0.0};
        std::size_t shot = 0;
        for (std::size_t cyc = c_begin; cyc < c_end; ++cyc) {
            rec.y[cyc] = static_cast<std::int8_t>(
                kernel.readout_y(v, path.phi[shot], rng));
            if (cfg.store_phases)
                rec.phi[cyc * static_cast<std::size_t>(spc)] = path.phi[shot];
            ++shot;
            if (has_z) {
                rec.z[cyc] = static_cast<std::int8_t>(kernel.readout_z(v, rng));
                if (cfg.store_phases)
                    rec.phi[cyc * static_cast<std::size_t>(spc) + 1] =
                        path.phi[shot];
                ++shot;
            }
        }
    });
    return rec;
}

}  // namespace qusense
