#include "cbdiscrim/problem.h"

#include <cmath>

#include "cbdiscrim/choi.h"

namespace cbd {

void OptimizerConfig::validate() const {
    if (grid_points < 2) {
        throw ValidationError("grid_points must be >= 2");
    }
    if (refine_iters < 0) {
        throw ValidationError("refine_iters must be >= 0");
    }
    if (!(tolerance > 0) || !std::isfinite(tolerance)) {
        throw ValidationError("tolerance must be positive");
    }
}

DiscriminationProblem::DiscriminationProblem(KrausChannel ch1, KrausChannel ch2, double p1)
    : ch1_(std::move(ch1)), ch2_(std::move(ch2)), p1_(p1) {
    check_prior(p1);
    for (const KrausChannel *ch : {&ch1_, &ch2_}) {
        if (ch->dim() != 2) {
            throw ValidationError("channel '" + ch->label() + "' is not a qubit channel");
        }
        CptpCheck check = validate_cptp(*ch);
        if (!check.pass) {
            throw ValidationError(
                "channel '" + ch->label() + "' is not trace preserving (residual " + std::to_string(check.residual) +
                ")");
        }
    }
}

DiscriminationProblem DiscriminationProblem::swapped() const {
    return DiscriminationProblem(ch2_, ch1_, 1 - p1_);
}

}  // namespace cbd
