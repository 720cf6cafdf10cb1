#pragma once

// Output-correlation engines. The exact engine propagates the target state
// through one superoperator per physical shot in strict temporal order and
// averages over the classical noise either with the Gaussian closed-form
// pair factors or over explicitly sampled paths. The closed forms are the
// standard decaying cos/sin expressions evaluated at the physical shot
// separations.
//
// Sequences: pattern XY measures the y readout every shot (lag step tau_I);
// pattern XYXZ alternates y and z readouts, y on even slots, z on odd slots
// (cycle length 2 tau_I).

#include <cstdint>
#include <vector>

#include "qusense/dynamics.hpp"
#include "qusense/noise.hpp"

namespace qusense {

enum class Pattern { XY, XYXZ };

struct SequenceSpec {
    Pattern pattern = Pattern::XY;
    std::size_t cycles = 0;

    int shots_per_cycle() const { return pattern == Pattern::XY ? 1 : 2; }
    double cycle_time(double tau_I) const { return shots_per_cycle() * tau_I; }
};

// The four second-order kernels Tr[M_p M^{n-1} M_q rho] for p, q in {y, x},
// with M = M0 * Lz the idle step; index 0 = y, 1 = x.
struct G2Kernels {
    std::vector<double> yy, yx, xy, xx;  // [n-1] for lag n = 1..max_lag
};

// Explicit measurement superoperators for one parameter set, bundled so the
// validation suite can substitute perturbed operators.
struct MeasOps {
    SuperOp m0, mx, my, mz;
    SuperOp idle;  // m0 composed with intrinsic dephasing
    SuperOp lz;    // intrinsic dephasing alone

    static MeasOps build(const SimParams& p, Mode mode);
};

G2Kernels g2_kernels(const MeasOps& ops, int max_lag, const PauliOp& rho);

// noise-averaged G2 at lag n (Gaussian closed-form factors; telegraph models
// use the Gaussian-matched approximation, flagged by phase_pair_factors)
double exact_G2(int n, const SimParams& p, const NoiseModel& noise,
                Mode mode = Mode::Exact);
std::vector<double> exact_G2_series(int max_lag, const SimParams& p,
                                    const NoiseModel& noise, Mode mode = Mode::Exact);

// G2 averaged over one explicitly sampled noise path (all start offsets)
double exact_G2_path(int n, const SimParams& p, const NoisePath& path,
                     Mode mode = Mode::Exact);

// noise-averaged G4 on the XYXZ sequence at cycle lags (u, v, w) >= 1;
// the chain is My (idle)^{2u-2} Mz (idle)^{2v-1} Mz (idle)^{2w} My with the
// y endpoints carrying the noise mixing
double exact_G4(int u, int v, int w, const SimParams& p, const NoiseModel& noise,
                Mode mode = Mode::Exact);
double exact_G4_path(int u, int v, int w, const SimParams& p, const NoisePath& path,
                     Mode mode = Mode::Exact);

// kernel value Tr[M_p (idle)^{2u-2} Mz (idle)^{2v-1} Mz (idle)^{2w} M_q rho]
// for p, q in {y, x} (0 = y, 1 = x)
double g4_kernel(const MeasOps& ops, int u, int v, int w, int p_axis, int q_axis,
                 const PauliOp& rho);

// decaying closed forms at the physical shot separations
double closedform_G2(int n, const SimParams& p, const NoiseModel& noise);
double closedform_G4(int u, int v, int w, const SimParams& p, const NoiseModel& noise);

}  // namespace qusense
