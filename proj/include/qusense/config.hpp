#pragma once

// Strict JSON run configuration. Every object is checked against its allowed
// key set, so typos surface as errors with full field paths instead of being
// silently ignored. The emitted summary uses the same schema and re-parses
// to an equivalent configuration.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qusense/correlators.hpp"
#include "qusense/dynamics.hpp"
#include "qusense/noise.hpp"
#include "qusense/planner.hpp"

namespace qusense {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    bool log_scale = true;

    std::vector<double> build() const;
};

struct RunConfig {
    SimParams params;
    NoiseModel noise = NoNoise{};
    SequenceSpec seq;
    Mode mode = Mode::Exact;
    std::uint64_t seed = 1;
    int shards = 1;
    int threads = 0;  // 0 = automatic
    std::string out_dir = ".";

    int max_lag = 50;
    int n_f2 = 5, n_f1 = 5;
    bool store_phases = false;
    std::size_t chunk_cycles = 4096;
    int substeps_per_tau = 16;

    std::string spectrum_source = "closedform";  // or "exact"
    int n_f = 0;                                 // 0 = automatic
    double omega_min = 0.0, omega_max = 0.0;     // equal = automatic window

    Order plan_order = Order::Second;
    GridSpec plan_S_C{0.1, 10.0, 25, true};
    GridSpec plan_gamma0{1e-3, 0.3, 25, true};
    double plan_a = 1.0;
    double gamma_m_max = 0.0;  // 0 = default cap 0.18 a

    int resolved_threads() const;
};

RunConfig parse_config_text(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);
std::string config_to_json(const RunConfig& cfg);

}  // namespace qusense
