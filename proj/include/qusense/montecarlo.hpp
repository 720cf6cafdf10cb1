#pragma once

// Trajectory Monte Carlo for the measurement sequences. A run is split into
// fixed-size chunks of cycles; each chunk is an independent unit with its own
// derived seed, its own noise path and a fresh maximally mixed target state.
// Chunks write disjoint slices of the output arrays, so neither the worker
// count nor the shard grouping can change a single bit of the record stream;
// shards exist only as a labeling / scheduling concept on top of chunks.

#include <cstdint>
#include <vector>

#include "qusense/correlators.hpp"
#include "qusense/dynamics.hpp"
#include "qusense/noise.hpp"

namespace qusense {

// deterministic stream splitter for (master seed, stream index)
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

struct McConfig {
    SimParams params;
    NoiseModel noise;
    SequenceSpec seq;
    Mode mode = Mode::Exact;
    std::uint64_t seed = 1;
    int shards = 1;   // labeling of chunks; estimates do not depend on it
    int threads = 1;  // worker count; never affects the stream
    std::size_t chunk_cycles = 4096;
    int substeps_per_tau = 16;
    bool store_phases = false;
};

struct ShotRecords {
    SequenceSpec seq;
    double tau_I = 0.0;
    std::uint64_t seed = 0;
    int shards = 1;
    std::size_t chunk_cycles = 4096;
    std::vector<std::int8_t> y;  // y-readout output per cycle
    std::vector<std::int8_t> z;  // z-readout output per cycle (alternating pattern)
    std::vector<double> phi;     // per-shot noise phases when stored

    std::size_t cycles() const { return y.size(); }
    std::size_t n_chunks() const {
        return (cycles() + chunk_cycles - 1) / chunk_cycles;
    }
    std::size_t chunk_begin(std::size_t c) const { return c * chunk_cycles; }
    std::size_t chunk_end(std::size_t c) const {
        const std::size_t e = (c + 1) * chunk_cycles;
        return e < cycles() ? e : cycles();
    }
    int shard_of_chunk(std::size_t c) const {
        return static_cast<int>(c % static_cast<std::size_t>(shards));
    }
};

// Runs the sequence for seq.cycles cycles. Throws std::runtime_error if a
// conditional state leaves the Bloch ball by more than 1e-9.
ShotRecords mc_run(const McConfig& cfg);

}  // namespace qusense
