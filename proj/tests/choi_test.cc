#include "cbdiscrim/choi.h"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace cbd;
using cbd::testing::kPi;
using cbd::testing::random_matrix;

namespace {

Matrix vec_column(const Matrix &a) {
    return vectorize(a).column();
}

DiscriminationProblem random_cbc_problem(Rng &rng) {
    auto spec = [&] {
        return CbcSpec{static_cast<CbcFamily>(rng.next_u64() % 3), rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)};
    };
    return DiscriminationProblem(cbc_kraus(spec()), cbc_kraus(spec()), rng.uniform());
}

}  // namespace

TEST(choi, vectorize_examples) {
    EXPECT_EQ(vectorize(Matrix::identity(2)).vec, (std::array<Complex, 4>{1, 0, 0, 1}));
    EXPECT_EQ(vectorize(Matrix({{0, 1}, {1, 0}})).vec, (std::array<Complex, 4>{0, 1, 1, 0}));
    EXPECT_EQ(vectorize(cbc_kraus({CbcFamily::Type1}).ops()[1]).vec, (std::array<Complex, 4>{0, 1, 0, 0}));
    EXPECT_EQ(vectorized_identity().vec, vectorize(Matrix::identity(2)).vec);
    EXPECT_THROW(vectorize(Matrix::identity(4)), ValidationError);
}

TEST(choi, vectorize_index_convention) {
    Matrix a({{1, 2}, {3, 4}});
    // vec[2n + m] = <n|A|m>: the row index is the first tensor factor.
    EXPECT_EQ(vectorize(a).vec, (std::array<Complex, 4>{1, 2, 3, 4}));
}

TEST(choi, vectorization_identity) {
    Rng rng(1);
    Matrix id = Matrix::identity(2);
    Matrix vec_i = vectorized_identity().column();
    for (int k = 0; k < 100; k++) {
        Matrix a = random_matrix(rng, 2, 2);
        EXPECT_LE(max_abs_diff(vec_column(a), kron(a, id) * vec_i), 1e-12);
        EXPECT_LE(max_abs_diff(vec_column(a), kron(id, a.transpose()) * vec_i), 1e-12);
        // Unnormalized: <<A|A>> = Tr A^dagger A.
        Matrix v = vec_column(a);
        EXPECT_NEAR((v.adjoint() * v)(0, 0).real(), (a.adjoint() * a).trace().real(), 1e-12);
    }
}

TEST(choi, delta_type1_vs_type2) {
    for (double p1 : {0.1, 0.3, 0.5, 0.9}) {
        DeltaOperator d = build_delta(cbc_kraus({CbcFamily::Type1}), cbc_kraus({CbcFamily::Type2, 0.8}), p1);
        double p2 = 1 - p1;
        EXPECT_LE(max_abs_diff(d.mat.mat(), Matrix::diagonal({p1, p1, -p2, -p2})), 1e-15);
        EXPECT_EQ(d.p1, p1);
    }
}

TEST(choi, delta_identical_channels_vanishes) {
    KrausChannel ch = cbc_kraus({CbcFamily::Type3, 0.2, 1.0});
    EXPECT_EQ(build_delta(ch, ch, 0.5).mat.mat(), Matrix::zero(4, 4));
}

TEST(choi, delta_type1_vs_type3_blocks) {
    double p1 = 0.35;
    double p2 = 1 - p1;
    double phi = 0.6;
    double xi = 1.2;
    double s = std::sin(phi);
    double c = std::cos(phi);
    Complex e = std::polar(1.0, xi);
    Matrix expect({
        {p1 - p2 * c * c, -p2 * std::conj(e) * s * c, 0, 0},
        {-p2 * e * s * c, p1 - p2 * s * s, 0, 0},
        {0, 0, -p2 * s * s, p2 * std::conj(e) * s * c},
        {0, 0, p2 * e * s * c, -p2 * c * c},
    });
    DeltaOperator d = build_delta(cbc_kraus({CbcFamily::Type1}), cbc_kraus({CbcFamily::Type3, xi, phi}), p1);
    EXPECT_LE(max_abs_diff(d.mat.mat(), expect), 1e-15);
}

TEST(choi, delta_same_type3_structure) {
    double p1 = 0.6;
    double p2 = 1 - p1;
    double f1 = 0.4, x1 = 0.3, f2 = 1.1, x2 = -0.7;
    DeltaOperator d = build_delta(cbc_kraus({CbcFamily::Type3, x1, f1}), cbc_kraus({CbcFamily::Type3, x2, f2}), p1);
    Complex d11 = p1 * std::cos(f1) * std::cos(f1) - p2 * std::cos(f2) * std::cos(f2);
    Complex d12 = p1 * std::polar(1.0, -x1) * std::sin(f1) * std::cos(f1) -
                  p2 * std::polar(1.0, -x2) * std::sin(f2) * std::cos(f2);
    Complex d22 = p1 * std::sin(f1) * std::sin(f1) - p2 * std::sin(f2) * std::sin(f2);
    Matrix expect({
        {d11, d12, 0, 0},
        {std::conj(d12), d22, 0, 0},
        {0, 0, d22, -d12},
        {0, 0, -std::conj(d12), d11},
    });
    EXPECT_LE(max_abs_diff(d.mat.mat(), expect), 1e-15);
}

TEST(choi, delta_invalid_inputs) {
    KrausChannel ch = cbc_kraus({CbcFamily::Type1});
    EXPECT_THROW(build_delta(ch, ch, 1.2), ValidationError);
    EXPECT_THROW(build_delta(ch, ch, -0.1), ValidationError);
    KrausChannel partial({Matrix({{1, 0}, {0, 0}})}, "E11");
    EXPECT_THROW(build_delta(ch, partial, 0.5), ValidationError);
}

TEST(choi, delta_trace_and_swap_antisymmetry) {
    Rng rng(2);
    for (int k = 0; k < 100; k++) {
        KrausChannel a = random_kraus_channel(rng, 1 + k % 4);
        KrausChannel b = random_kraus_channel(rng, 1 + (k / 4) % 4);
        double p1 = rng.uniform();
        DeltaOperator d = build_delta(a, b, p1);
        EXPECT_NEAR(d.mat.mat().trace().real(), 2 * (2 * p1 - 1), 1e-9);
        DeltaOperator swapped = build_delta(b, a, 1 - p1);
        EXPECT_LE(max_abs_diff(d.mat.mat(), -swapped.mat.mat()), 1e-12);
    }
}

TEST(choi, probe_validation) {
    EXPECT_NO_THROW(ProbeP(1, 0, 0));
    EXPECT_NO_THROW(ProbeP::maximally_mixed());
    EXPECT_THROW(ProbeP(-0.1, 1, 0), ValidationError);
    EXPECT_THROW(ProbeP(0.5, 0.5, 0), ValidationError);                  // Tr P^2 = 1/2
    EXPECT_THROW(ProbeP(0.6, 0.6, Complex(0.3, 0.0)), ValidationError);  // not unit
    double h = 1 / std::sqrt(2.0);
    EXPECT_THROW(ProbeP(h, 0, Complex(0.5, 0)), ValidationError);        // xy < |z|^2
    EXPECT_TRUE(ProbeP(0.5, 0.5, Complex(0.5, 0)).is_rank_one());
    EXPECT_FALSE(ProbeP::maximally_mixed().is_rank_one());
}

TEST(choi, spectral_probes_are_valid) {
    Rng rng(3);
    for (int k = 0; k < 200; k++) {
        ProbeP p = ProbeP::from_spectral(rng.uniform(-3, 3), rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9));
        Matrix m = p.mat();
        EXPECT_NEAR((m * m).trace().real(), 1, 1e-12);
        EXPECT_GE(hermitian_eigenvalues(HermitianMatrix(m)).back(), -1e-12);
    }
    EXPECT_TRUE(ProbeP::from_spectral(0, 0.3, 1.2, 0.5).is_rank_one());
}

TEST(choi, sandwich_examples) {
    KrausChannel t1 = cbc_kraus({CbcFamily::Type1});
    KrausChannel t2 = cbc_kraus({CbcFamily::Type2, 0.4});
    double p1 = 0.7;
    DeltaOperator d = build_delta(t1, t2, p1);

    HermitianMatrix half = sandwich(d, ProbeP::maximally_mixed());
    EXPECT_LE(max_abs_diff(half.mat(), d.mat.mat() * 0.5), 1e-15);
    EXPECT_NEAR(trace_norm(half), trace_norm(d.mat) / 2, 1e-15);

    HermitianMatrix proj = sandwich(d, ProbeP(1, 0, 0));
    EXPECT_LE(max_abs_diff(proj.mat(), Matrix::diagonal({p1, 0, -(1 - p1), 0})), 1e-15);
    EXPECT_NEAR(trace_norm(proj), 1, 1e-15);
}

TEST(choi, rank_one_sandwich_matches_direct_paths) {
    Rng rng(4);
    for (int k = 0; k < 100; k++) {
        DiscriminationProblem prob = random_cbc_problem(rng);
        DeltaOperator d = build_delta(prob.ch1(), prob.ch2(), prob.p1());
        std::vector<Complex> psi = random_pure_vector(rng, 2);
        ProbeP p = ProbeP::product(std::span<const Complex, 2>(psi.data(), 2));
        double via_delta = trace_norm(sandwich(d, p));

        double single = direct_unassisted_value(prob, DensityMatrix::pure(psi));
        std::vector<Complex> product{psi[0], 0, psi[1], 0};
        double bipartite = direct_assisted_value(prob, DensityMatrix::pure(product));
        EXPECT_NEAR(via_delta, single, 1e-9);
        EXPECT_NEAR(via_delta, bipartite, 1e-9);
    }
}

TEST(choi, half_weight_phase_probe_matches_direct_path) {
    // x = 1/2, |z| = 1/2, phase f: the product probe for (1, e^{i f})/sqrt(2).
    DiscriminationProblem prob(cbc_kraus({CbcFamily::Type3, 0.3, 0.5}), cbc_kraus({CbcFamily::Type3, 1.4, -0.2}), 0.45);
    DeltaOperator d = build_delta(prob.ch1(), prob.ch2(), prob.p1());
    for (double f : {0.0, 0.7, 2.0, 4.5}) {
        ProbeP p(0.5, 0.5, std::polar(0.5, f));
        ASSERT_TRUE(p.is_rank_one());
        std::vector<Complex> psi{1 / std::sqrt(2.0), std::polar(1 / std::sqrt(2.0), f)};
        EXPECT_NEAR(trace_norm(sandwich(d, p)), direct_unassisted_value(prob, DensityMatrix::pure(psi)), 1e-9);
    }
}
