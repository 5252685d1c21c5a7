#include "cbdiscrim/oracle.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cbdiscrim/choi.h"

namespace cbd {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + index * kGolden);
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

std::vector<Complex> random_pure_vector(Rng &rng, std::size_t dim) {
    std::vector<Complex> v(dim);
    double norm2 = 0;
    do {
        norm2 = 0;
        for (Complex &x : v) {
            x = rng.complex_gaussian();
            norm2 += std::norm(x);
        }
    } while (norm2 == 0);
    double inv = 1 / std::sqrt(norm2);
    for (Complex &x : v) {
        x *= inv;
    }
    return v;
}

DensityMatrix random_pure_qubit(Rng &rng) {
    return DensityMatrix::pure(random_pure_vector(rng, 2));
}

DensityMatrix random_pure_bipartite(Rng &rng) {
    return DensityMatrix::pure(random_pure_vector(rng, 4));
}

namespace {

// Orthonormalizes the columns of g in place (modified Gram-Schmidt).
void orthonormalize_columns(Matrix &g) {
    for (std::size_t c = 0; c < g.cols(); c++) {
        for (std::size_t prev = 0; prev < c; prev++) {
            Complex overlap = 0;
            for (std::size_t r = 0; r < g.rows(); r++) {
                overlap += std::conj(g(r, prev)) * g(r, c);
            }
            for (std::size_t r = 0; r < g.rows(); r++) {
                g(r, c) -= overlap * g(r, prev);
            }
        }
        double norm2 = 0;
        for (std::size_t r = 0; r < g.rows(); r++) {
            norm2 += std::norm(g(r, c));
        }
        if (!(norm2 > 1e-24)) {
            throw NumericalError("degenerate Gaussian sample in Gram-Schmidt");
        }
        double inv = 1 / std::sqrt(norm2);
        for (std::size_t r = 0; r < g.rows(); r++) {
            g(r, c) *= inv;
        }
    }
}

Matrix gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
    Matrix g(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            g(r, c) = rng.complex_gaussian();
        }
    }
    return g;
}

}  // namespace

Matrix random_unitary(Rng &rng, std::size_t n) {
    Matrix g = gaussian_matrix(rng, n, n);
    orthonormalize_columns(g);
    return g;
}

KrausChannel random_kraus_channel(Rng &rng, std::size_t num_ops) {
    if (num_ops < 1 || 2 * num_ops > kMaxDim) {
        throw ValidationError("random_kraus_channel supports 1..4 Kraus operators");
    }
    Matrix v = gaussian_matrix(rng, 2 * num_ops, 2);
    orthonormalize_columns(v);
    std::vector<Matrix> ops;
    for (std::size_t k = 0; k < num_ops; k++) {
        Matrix op(2, 2);
        for (std::size_t r = 0; r < 2; r++) {
            for (std::size_t c = 0; c < 2; c++) {
                op(r, c) = v(2 * k + r, c);
            }
        }
        ops.push_back(op);
    }
    return KrausChannel(std::move(ops), "random");
}

std::array<double, 4> random_simplex4(Rng &rng) {
    std::array<double, 4> q{};
    double total = 0;
    for (double &x : q) {
        x = -std::log(1.0 - rng.uniform());
        total += x;
    }
    for (double &x : q) {
        x /= total;
    }
    // Absorb the rounding residue so the weights sum to 1 within one ulp.
    q[3] = std::max(0.0, 1.0 - q[0] - q[1] - q[2]);
    return q;
}

double direct_assisted_value(const DiscriminationProblem &prob, const DensityMatrix &state) {
    if (state.dim() != 4) {
        throw ValidationError("direct_assisted_value expects a 4x4 bipartite state");
    }
    KrausChannel e1 = extend_with_identity(prob.ch1());
    KrausChannel e2 = extend_with_identity(prob.ch2());
    Matrix diff = e1.apply_raw(state.mat()) * prob.p1() - e2.apply_raw(state.mat()) * prob.p2();
    return trace_norm(HermitianMatrix::from_trusted(diff));
}

double direct_unassisted_value(const DiscriminationProblem &prob, const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw ValidationError("direct_unassisted_value expects a qubit state");
    }
    Matrix diff = prob.ch1().apply_raw(rho.mat()) * prob.p1() - prob.ch2().apply_raw(rho.mat()) * prob.p2();
    return trace_norm(HermitianMatrix::from_trusted(diff));
}

Matrix probe_for_state(std::span<const Complex> psi, ProbeConvention convention) {
    if (psi.size() != 4) {
        throw ValidationError("probe_for_state expects a two-qubit state vector");
    }
    Matrix zeta(2, 2);
    for (std::size_t n = 0; n < 2; n++) {
        for (std::size_t m = 0; m < 2; m++) {
            zeta(n, m) = convention == ProbeConvention::Standard ? psi[2 * n + m] : psi[2 * m + n];
        }
    }
    return psd_sqrt(HermitianMatrix::from_trusted(zeta * zeta.adjoint())).conj();
}

CrosscheckResult crosscheck_delta_path(
    const DiscriminationProblem &prob, int n, Rng &rng, double tol, ProbeConvention convention) {
    if (n < 1) {
        throw ValidationError("crosscheck needs at least one sample");
    }
    DeltaOperator delta = build_delta(prob.ch1(), prob.ch2(), prob.p1());
    double worst = 0;
    for (int k = 0; k < n; k++) {
        std::vector<Complex> psi = random_pure_vector(rng, 4);
        double direct = direct_assisted_value(prob, DensityMatrix::pure(psi));
        double via_delta = trace_norm(sandwich(delta.mat, probe_for_state(psi, convention)));
        worst = std::max(worst, std::abs(direct - via_delta));
    }
    return {worst <= tol, worst, n};
}

namespace {

double checked_eval(const Objective &f, std::span<const double> x) {
    double v = f(x);
    if (!std::isfinite(v)) {
        throw NumericalError("refine_max: objective returned a non-finite value");
    }
    return v;
}

struct Vertex {
    std::vector<double> x;
    double f;
};

void clamp_into(std::vector<double> &x, const Box &box) {
    for (std::size_t i = 0; i < x.size(); i++) {
        x[i] = std::clamp(x[i], box.lo[i], box.hi[i]);
    }
}

double diameter(const std::vector<Vertex> &simplex) {
    double d = 0;
    for (std::size_t v = 1; v < simplex.size(); v++) {
        for (std::size_t i = 0; i < simplex[0].x.size(); i++) {
            d = std::max(d, std::abs(simplex[v].x[i] - simplex[0].x[i]));
        }
    }
    return d;
}

// One Nelder-Mead run (maximizing). Returns iterations used.
int nelder_mead_run(
    const Objective &f,
    Vertex &best,
    const Box &box,
    std::span<const double> step,
    int budget,
    double tolerance) {
    std::size_t k = best.x.size();
    std::vector<Vertex> simplex{best};
    for (std::size_t i = 0; i < k; i++) {
        Vertex v{best.x, 0};
        v.x[i] += step[i];
        if (v.x[i] > box.hi[i]) {
            v.x[i] = best.x[i] - step[i];
        }
        clamp_into(v.x, box);
        v.f = checked_eval(f, v.x);
        simplex.push_back(std::move(v));
    }
    auto by_value = [](const Vertex &a, const Vertex &b) { return a.f > b.f; };

    int iter = 0;
    for (; iter < budget; iter++) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        if (diameter(simplex) < tolerance) {
            break;
        }
        std::vector<double> centroid(k, 0.0);
        for (std::size_t v = 0; v < k; v++) {
            for (std::size_t i = 0; i < k; i++) {
                centroid[i] += simplex[v].x[i] / static_cast<double>(k);
            }
        }
        Vertex &worst = simplex[k];
        auto along = [&](double t) {
            Vertex out{std::vector<double>(k), 0};
            for (std::size_t i = 0; i < k; i++) {
                out.x[i] = centroid[i] + t * (worst.x[i] - centroid[i]);
            }
            clamp_into(out.x, box);
            out.f = checked_eval(f, out.x);
            return out;
        };

        Vertex reflected = along(-1.0);
        if (reflected.f > simplex[0].f) {
            Vertex expanded = along(-2.0);
            worst = expanded.f > reflected.f ? std::move(expanded) : std::move(reflected);
            continue;
        }
        if (reflected.f > simplex[k - 1].f) {
            worst = std::move(reflected);
            continue;
        }
        if (reflected.f > worst.f) {
            Vertex outside = along(-0.5);
            if (outside.f >= reflected.f) {
                worst = std::move(outside);
                continue;
            }
        } else {
            Vertex inside = along(0.5);
            if (inside.f > worst.f) {
                worst = std::move(inside);
                continue;
            }
        }
        for (std::size_t v = 1; v <= k; v++) {
            for (std::size_t i = 0; i < k; i++) {
                simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
            }
            clamp_into(simplex[v].x, box);
            simplex[v].f = checked_eval(f, simplex[v].x);
        }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex[0].f > best.f) {
        best = simplex[0];
    }
    return iter;
}

}  // namespace

RefineResult refine_max(
    const Objective &objective,
    std::span<const double> start,
    const Box &box,
    const OptimizerConfig &cfg,
    std::span<const double> step) {
    std::size_t k = start.size();
    if (k < 1 || k > 6) {
        throw ValidationError("refine_max supports 1..6 parameters");
    }
    if (box.lo.size() != k || box.hi.size() != k) {
        throw ValidationError("refine_max: box dimension mismatch");
    }
    std::vector<double> steps(step.begin(), step.end());
    if (steps.empty()) {
        for (std::size_t i = 0; i < k; i++) {
            steps.push_back(0.05 * (box.hi[i] - box.lo[i]));
        }
    }
    if (steps.size() != k) {
        throw ValidationError("refine_max: step dimension mismatch");
    }

    Vertex best{std::vector<double>(start.begin(), start.end()), 0};
    clamp_into(best.x, box);
    best.f = checked_eval(objective, best.x);

    int used = 0;
    constexpr int kMaxRestarts = 3;
    for (int run = 0; run <= kMaxRestarts && used < cfg.refine_iters; run++) {
        double before = best.f;
        used += nelder_mead_run(objective, best, box, steps, cfg.refine_iters - used, cfg.tolerance);
        if (run > 0 && !(best.f > before)) {
            break;
        }
    }
    return {best.x, best.f, used};
}

}  // namespace cbd
