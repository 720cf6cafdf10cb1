#include "qusense/noise.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qusense {

// splitmix64-seeded xoshiro256++; hand-rolled so streams are reproducible
// independent of the standard library implementation
static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s) w = splitmix64(x);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
}

double Rng::uniform() {
    // 53-bit mantissa, shifted into (0, 1)
    return ((next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    const double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::exponential(double rate) { return -std::log(uniform()) / rate; }

namespace {

struct SegmentCursor {
    const std::vector<ScheduleSegment>* sched = nullptr;
    std::size_t idx = 0;
    double seg_end = 0.0;

    explicit SegmentCursor(const std::vector<ScheduleSegment>& s) : sched(&s) {
        if (s.empty()) throw std::invalid_argument("scaled noise: empty schedule");
        seg_end = s[0].duration;
    }
    double factor_at(double t) {
        while (t >= seg_end && idx + 1 < sched->size()) {
            ++idx;
            seg_end += (*sched)[idx].duration;
        }
        if (t >= seg_end + 1e-9 * seg_end)
            throw std::invalid_argument("scaled noise: schedule shorter than run");
        return (*sched)[idx].factor;
    }
};

void fill_white(const WhiteNoise& w, std::vector<double>& phi, double tau, Rng& rng) {
    const double sd = std::sqrt(w.S_C * tau);
    for (auto& p : phi) p = sd * rng.normal();
}

void fill_ou(const OUNoise& ou, std::vector<double>& phi, double tau, Rng& rng,
             int substeps) {
    if (!(ou.tau_c > 0.0)) throw std::invalid_argument("OU noise: tau_c must be > 0");
    const double dt = tau / substeps;
    const double decay = std::exp(-dt / ou.tau_c);
    const double kick = std::sqrt(ou.sigma2 * (1.0 - decay * decay));
    double B = std::sqrt(ou.sigma2) * rng.normal();  // stationary start
    for (auto& p : phi) {
        double acc = 0.5 * B;
        for (int k = 1; k < substeps; ++k) {
            B = B * decay + kick * rng.normal();
            acc += B;
        }
        B = B * decay + kick * rng.normal();
        acc += 0.5 * B;
        p = acc * dt;  // trapezoid over the shot window
    }
}

void fill_telegraph(const TelegraphNoise& tn, std::vector<double>& phi, double tau,
                    Rng& rng) {
    if (!(tn.gamma_f > 0.0))
        throw std::invalid_argument("telegraph noise: gamma_f must be > 0");
    double state = (rng.uniform() < 0.5) ? tn.b : -tn.b;
    double t_flip = rng.exponential(tn.gamma_f);
    double t0 = 0.0;
    for (auto& p : phi) {
        const double t1 = t0 + tau;
        double acc = 0.0, cur = t0;
        while (t_flip < t1) {
            acc += state * (t_flip - cur);
            cur = t_flip;
            state = -state;
            t_flip += rng.exponential(tn.gamma_f);
        }
        acc += state * (t1 - cur);
        p = acc;
        t0 = t1;
    }
}

}  // namespace

NoisePath sample_phases(const NoiseModel& model, std::size_t n_shots, double tau_I,
                        std::uint64_t seed, int substeps_per_tau, double t_start) {
    if (n_shots < 1) throw std::invalid_argument("sample_phases: n_shots must be >= 1");
    if (substeps_per_tau < 1)
        throw std::invalid_argument("sample_phases: substep resolution must be >= 1");
    NoisePath path;
    path.phi.assign(n_shots, 0.0);
    path.tau_I = tau_I;
    path.seed = seed;
    path.model = noise_describe(model);
    Rng rng(seed);

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoNoise>) {
                // all zero
            } else if constexpr (std::is_same_v<T, WhiteNoise>) {
                fill_white(m, path.phi, tau_I, rng);
            } else if constexpr (std::is_same_v<T, OUNoise>) {
                fill_ou(m, path.phi, tau_I, rng, substeps_per_tau);
            } else if constexpr (std::is_same_v<T, TelegraphNoise>) {
                fill_telegraph(m, path.phi, tau_I, rng);
            } else if constexpr (std::is_same_v<T, ScaledNoise>) {
                NoiseModel inner = std::visit(
                    [](const auto& b) { return NoiseModel(b); }, m.inner);
                NoisePath base =
                    sample_phases(inner, n_shots, tau_I, seed, substeps_per_tau);
                SegmentCursor cur(m.schedule);
                for (std::size_t i = 0; i < n_shots; ++i)
                    path.phi[i] = cur.factor_at(t_start + i * tau_I) * base.phi[i];
            }
        },
        model);
    return path;
}

static double schedule_msq(const std::vector<ScheduleSegment>& sched) {
    double num = 0.0, den = 0.0;
    for (const auto& s : sched) {
        num += s.factor * s.factor * s.duration;
        den += s.duration;
    }
    if (!(den > 0.0)) throw std::invalid_argument("scaled noise: empty schedule");
    return num / den;
}

double spectral_density(const NoiseModel& model, double omega) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoNoise>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, WhiteNoise>) {
                return m.S_C;
            } else if constexpr (std::is_same_v<T, OUNoise>) {
                return 2.0 * m.sigma2 * m.tau_c / (1.0 + omega * omega * m.tau_c * m.tau_c);
            } else if constexpr (std::is_same_v<T, TelegraphNoise>) {
                return 4.0 * m.b * m.b * m.gamma_f /
                       (omega * omega + 4.0 * m.gamma_f * m.gamma_f);
            } else {
                NoiseModel inner =
                    std::visit([](const auto& b) { return NoiseModel(b); }, m.inner);
                return schedule_msq(m.schedule) * spectral_density(inner, omega);
            }
        },
        model);
}

// <phi^2> for one window of an exponentially correlated process:
// 2 var tau_c^2 (tau/tau_c - 1 + e^{-tau/tau_c})
static double expcorr_phase_var(double var, double tau_c, double tau) {
    const double x = tau / tau_c;
    return 2.0 * var * tau_c * tau_c * (x - 1.0 + std::exp(-x));
}

// lag >= 1 window autocovariance: 4 var tau_c^2 sinh^2(tau/(2 tau_c)) e^{-lag tau/tau_c}
static double expcorr_phase_cov(double var, double tau_c, double tau, int lag) {
    const double sh = std::sinh(0.5 * tau / tau_c);
    return 4.0 * var * tau_c * tau_c * sh * sh * std::exp(-lag * tau / tau_c);
}

double phase_variance(const NoiseModel& model, double tau_I) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoNoise>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, WhiteNoise>) {
                return m.S_C * tau_I;
            } else if constexpr (std::is_same_v<T, OUNoise>) {
                return expcorr_phase_var(m.sigma2, m.tau_c, tau_I);
            } else if constexpr (std::is_same_v<T, TelegraphNoise>) {
                return expcorr_phase_var(m.b * m.b, 0.5 / m.gamma_f, tau_I);
            } else {
                NoiseModel inner =
                    std::visit([](const auto& b) { return NoiseModel(b); }, m.inner);
                return schedule_msq(m.schedule) * phase_variance(inner, tau_I);
            }
        },
        model);
}

double phase_pair_cov(const NoiseModel& model, int lag, double tau_I) {
    if (lag == 0) return phase_variance(model, tau_I);
    lag = std::abs(lag);
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoNoise>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, WhiteNoise>) {
                return 0.0;  // delta-correlated, disjoint windows
            } else if constexpr (std::is_same_v<T, OUNoise>) {
                return expcorr_phase_cov(m.sigma2, m.tau_c, tau_I, lag);
            } else if constexpr (std::is_same_v<T, TelegraphNoise>) {
                return expcorr_phase_cov(m.b * m.b, 0.5 / m.gamma_f, tau_I, lag);
            } else {
                NoiseModel inner =
                    std::visit([](const auto& b) { return NoiseModel(b); }, m.inner);
                return schedule_msq(m.schedule) * phase_pair_cov(inner, lag, tau_I);
            }
        },
        model);
}

double coherence_factor(const NoiseModel& model, double tau_I) {
    return std::exp(-0.5 * phase_variance(model, tau_I));
}

bool noise_is_gaussian(const NoiseModel& model) {
    return std::visit(
        [](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, TelegraphNoise>) {
                return false;
            } else if constexpr (std::is_same_v<T, ScaledNoise>) {
                return !std::holds_alternative<TelegraphNoise>(m.inner);
            } else {
                return true;
            }
        },
        model);
}

PairFactors phase_pair_factors(const NoiseModel& model, double tau_I, std::size_t m,
                               std::size_t n) {
    const int lag = (m > n) ? static_cast<int>(m - n) : static_cast<int>(n - m);
    const double var = phase_variance(model, tau_I);
    const double cov = (lag == 0) ? var : phase_pair_cov(model, lag, tau_I);
    PairFactors f;
    // zero-mean Gaussian: <cos cos> = e^{-var} cosh(cov), <sin sin> = e^{-var} sinh(cov),
    // mixed terms vanish; at m == n this reduces to (1 +- e^{-2 var})/2
    f.coscos = std::exp(-var) * std::cosh(cov);
    f.sinsin = std::exp(-var) * std::sinh(cov);
    f.sincos = 0.0;
    f.cossin = 0.0;
    f.estimate_only = !noise_is_gaussian(model);
    return f;
}

PairFactors phase_pair_factors_sampled(const NoiseModel& model, double tau_I, int lag,
                                       std::size_t n_shots, std::uint64_t seed) {
    if (lag < 0) lag = -lag;
    const NoisePath path =
        sample_phases(model, n_shots + static_cast<std::size_t>(lag), tau_I, seed);
    PairFactors f{0.0, 0.0, 0.0, 0.0, false};
    for (std::size_t i = 0; i < n_shots; ++i) {
        const double pm = path.phi[i + lag], pn = path.phi[i];
        f.coscos += std::cos(pm) * std::cos(pn);
        f.sinsin += std::sin(pm) * std::sin(pn);
        f.sincos += std::sin(pm) * std::cos(pn);
        f.cossin += std::cos(pm) * std::sin(pn);
    }
    const double inv = 1.0 / static_cast<double>(n_shots);
    f.coscos *= inv;
    f.sinsin *= inv;
    f.sincos *= inv;
    f.cossin *= inv;
    return f;
}

std::string noise_describe(const NoiseModel& model) {
    std::ostringstream os;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoNoise>) {
                os << "none";
            } else if constexpr (std::is_same_v<T, WhiteNoise>) {
                os << "white(S_C=" << m.S_C << ")";
            } else if constexpr (std::is_same_v<T, OUNoise>) {
                os << "ou(sigma2=" << m.sigma2 << ",tau_c=" << m.tau_c << ")";
            } else if constexpr (std::is_same_v<T, TelegraphNoise>) {
                os << "telegraph(b=" << m.b << ",gamma_f=" << m.gamma_f << ")";
            } else {
                NoiseModel inner =
                    std::visit([](const auto& b) { return NoiseModel(b); }, m.inner);
                os << "scaled(" << noise_describe(inner) << "," << m.schedule.size()
                   << " segments)";
            }
        },
        model);
    return os.str();
}

}  // namespace qusense
