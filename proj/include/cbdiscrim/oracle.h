#ifndef CBDISCRIM_ORACLE_H
#define CBDISCRIM_ORACLE_H

// Brute-force verification path. Nothing here uses the vectorized Delta
// operator except the comparison arm of crosscheck_delta_path.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cbdiscrim/channel.h"
#include "cbdiscrim/problem.h"

namespace cbd {

/// SplitMix64 finalizer: z ^= z >> 30; z *= 0xbf58476d1ce4e5b9; z ^= z >> 27;
/// z *= 0x94d049bb133111eb; z ^= z >> 31.
std::uint64_t mix64(std::uint64_t z);

/// Seed of sample stream `index` derived from a base seed:
/// mix64(seed + index * 0x9e3779b97f4a7c15).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// SplitMix64 generator. state += 0x9e3779b97f4a7c15, output mix64(state).
/// Doubles take the top 53 bits; Gaussians use Box-Muller and consume two
/// uniforms per pair, caching the second value.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double gaussian();
    Complex complex_gaussian() {
        double re = gaussian();
        return {re, gaussian()};
    }

   private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0;
};

/// Normalized vector of `dim` complex Gaussians (Haar-distributed pure state).
std::vector<Complex> random_pure_vector(Rng &rng, std::size_t dim);
DensityMatrix random_pure_qubit(Rng &rng);
DensityMatrix random_pure_bipartite(Rng &rng);

/// Haar unitary via Gram-Schmidt on Gaussian columns.
Matrix random_unitary(Rng &rng, std::size_t n);

/// Random qubit channel with `num_ops` Kraus operators, cut from a random
/// 2*num_ops x 2 isometry.
KrausChannel random_kraus_channel(Rng &rng, std::size_t num_ops);

/// Random point of the probability simplex (uniform).
std::array<double, 4> random_simplex4(Rng &rng);

/// ||p1 (Phi1 (x) I)(rho) - p2 (Phi2 (x) I)(rho)||_1 evaluated directly.
double direct_assisted_value(const DiscriminationProblem &prob, const DensityMatrix &state);

/// ||p1 Phi1(rho) - p2 Phi2(rho)||_1 on a single qubit.
double direct_unassisted_value(const DiscriminationProblem &prob, const DensityMatrix &rho);

/// How a bipartite state vector is reshaped into the 2x2 operator zeta.
enum class ProbeConvention {
    /// zeta[n][m] = psi[2n + m] with the channel on the first factor;
    /// the probe is conj(sqrt(zeta zeta^dagger)).
    Standard,
    /// zeta[n][m] = psi[2m + n]. Wrong on purpose, for sensitivity tests.
    Transposed,
};

/// Probe operator P whose sandwich reproduces the state's direct value.
Matrix probe_for_state(std::span<const Complex> psi, ProbeConvention convention = ProbeConvention::Standard);

struct CrosscheckResult {
    bool pass;
    double max_deviation;
    int samples;
};

/// Compares the direct (Phi (x) I) value with the Delta-sandwich value on n
/// Haar-random pure bipartite states.
CrosscheckResult crosscheck_delta_path(
    const DiscriminationProblem &prob,
    int n,
    Rng &rng,
    double tol,
    ProbeConvention convention = ProbeConvention::Standard);

using Objective = std::function<double(std::span<const double>)>;

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct RefineResult {
    std::vector<double> point;
    double value;
    int iterations;
};

/// Derivative-free Nelder-Mead ascent inside a box (trial points are clamped).
///
/// The starting point is a vertex of the initial simplex and the best vertex
/// is never discarded, so the returned value is never below objective(start).
/// Each start runs until cfg.refine_iters iterations or the simplex diameter
/// drops under cfg.tolerance; the simplex is then rebuilt around the best
/// point (at most three times) as long as that keeps improving.
/// `step` is the initial edge length per coordinate; empty means 5% of the box.
/// Throws NumericalError if the objective returns a non-finite value.
RefineResult refine_max(
    const Objective &objective,
    std::span<const double> start,
    const Box &box,
    const OptimizerConfig &cfg,
    std::span<const double> step = {});

}  // namespace cbd

#endif
