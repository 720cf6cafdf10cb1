#pragma once

// Classical noise models for the sensor phase. A model generates per-shot
// phase integrals phi_m = integral of B_C(t) over one interaction window and
// knows its analytic PSD, per-shot phase variance and phase autocovariance.
// White and Ornstein-Uhlenbeck are Gaussian, so the cos/sin pair factors
// have closed forms; random telegraph noise is non-Gaussian and its closed
// forms are flagged as Gaussian-matched estimates. Non-stationarity is
// modeled as a piecewise-constant amplitude schedule on a stationary base
// process.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qusense {

struct NoNoise {};

struct WhiteNoise {
    double S_C = 0.0;  // flat spectral density
};

struct OUNoise {
    double sigma2 = 0.0;  // stationary variance of B_C
    double tau_c = 1.0;   // correlation time
};

struct TelegraphNoise {
    double b = 0.0;        // amplitude (+-b)
    double gamma_f = 0.0;  // flip rate
};

using BaseNoise = std::variant<NoNoise, WhiteNoise, OUNoise, TelegraphNoise>;

struct ScheduleSegment {
    double duration = 0.0;
    double factor = 1.0;
};

struct ScaledNoise {
    BaseNoise inner;
    std::vector<ScheduleSegment> schedule;  // amplitude factor vs run time
};

using NoiseModel = std::variant<NoNoise, WhiteNoise, OUNoise, TelegraphNoise, ScaledNoise>;

struct NoisePath {
    std::vector<double> phi;  // one phase per shot
    double tau_I = 0.0;
    std::uint64_t seed = 0;
    std::string model;
};

// xoshiro256++ with splitmix64 seeding; uniform / normal / exponential draws
// are hand-rolled so streams do not depend on the standard library's
// distribution implementations
struct Rng {
    std::uint64_t s[4];
    explicit Rng(std::uint64_t seed);
    std::uint64_t next_u64();
    double uniform();      // (0, 1)
    double normal();       // standard normal, Box-Muller without caching
    double exponential(double rate);
};

// t_start places the first shot at absolute run time t_start; only the
// amplitude schedule of a scaled model reads it, the base process statistics
// are stationary
NoisePath sample_phases(const NoiseModel& model, std::size_t n_shots, double tau_I,
                        std::uint64_t seed, int substeps_per_tau = 16,
                        double t_start = 0.0);

double spectral_density(const NoiseModel& model, double omega);

// per-shot phase variance <phi^2> and the shot-lag autocovariance
// <phi_m phi_{m+lag}> implied by the model's covariance
double phase_variance(const NoiseModel& model, double tau_I);
double phase_pair_cov(const NoiseModel& model, int lag, double tau_I);

// L_C = e^{-<phi^2>/2}
double coherence_factor(const NoiseModel& model, double tau_I);

struct PairFactors {
    double coscos = 1.0;  // <cos phi_m cos phi_n>
    double sinsin = 0.0;  // <sin phi_m sin phi_n>
    double sincos = 0.0;
    double cossin = 0.0;
    bool estimate_only = false;  // true when the Gaussian closed form is an
                                 // approximation for this model
};

PairFactors phase_pair_factors(const NoiseModel& model, double tau_I, std::size_t m,
                               std::size_t n);

// empirical pair factors from sampled paths (any model); used to validate
// the closed forms and to quantify the telegraph Gaussian approximation
PairFactors phase_pair_factors_sampled(const NoiseModel& model, double tau_I, int lag,
                                       std::size_t n_shots, std::uint64_t seed);

bool noise_is_gaussian(const NoiseModel& model);
std::string noise_describe(const NoiseModel& model);

}  // namespace qusense
