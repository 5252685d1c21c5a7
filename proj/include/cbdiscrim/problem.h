#ifndef CBDISCRIM_PROBLEM_H
#define CBDISCRIM_PROBLEM_H

#include <cstdint>

#include "cbdiscrim/channel.h"

namespace cbd {

inline constexpr std::uint64_t kDefaultSeed = 20180101;

struct OptimizerConfig {
    /// Points along the polar axis of the product-probe grid; the azimuth axis
    /// gets 2 * grid_points - 1. The entangled-probe grid is derived from it.
    int grid_points = 91;
    /// Simplex iteration budget per refinement start.
    int refine_iters = 2000;
    /// Refinement stops once the simplex diameter falls below this.
    double tolerance = 1e-7;
    std::uint64_t seed = kDefaultSeed;

    void validate() const;
};

/// Two qubit channels Phi1, Phi2 occurring with priors p1 and p2 = 1 - p1.
class DiscriminationProblem {
   public:
    DiscriminationProblem(KrausChannel ch1, KrausChannel ch2, double p1);

    const KrausChannel &ch1() const { return ch1_; }
    const KrausChannel &ch2() const { return ch2_; }
    double p1() const { return p1_; }
    double p2() const { return 1 - p1_; }
    /// p1 is 0 or 1: the answer is known without probing.
    bool is_degenerate() const { return p1_ == 0 || p1_ == 1; }

    /// (ch2, ch1, 1 - p1).
    DiscriminationProblem swapped() const;

   private:
    KrausChannel ch1_;
    KrausChannel ch2_;
    double p1_;
};

}  // namespace cbd

#endif
