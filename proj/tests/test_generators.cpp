#include <doctest.h>

#include "hardylab/engine.hpp"
#include "hardylab/generators.hpp"
#include "hardylab/io.hpp"
#include "oracles.hpp"

using namespace hardylab;

TEST_CASE("model space of a monomial is the low-degree polynomials") {
    BlaschkeSpec z2;
    z2.monomial_order = 2;
    const Subspace k = model_space(z2, 16);
    CHECK(k.dim() == 2);
    CHECK(contains(k, TruncatedSeries::from_list({1.0, -3.0}, 16), 1e-12));

    BlaschkeSpec one;
    CHECK(model_space(one, 16).dim() == 0);
}

TEST_CASE("model space of a degree-one Blaschke factor is its reproducing kernel") {
    BlaschkeSpec spec;
    spec.zeros = {0.5};
    const int order = 128;
    const Subspace k = model_space(spec, order);
    REQUIRE(k.dim() == 1);
    // closed form 1/(1 - z/2): coefficients (1/2)^n, normalized
    Eigen::VectorXd kernel(order);
    for (int n = 0; n < order; ++n) kernel(n) = std::pow(0.5, n);
    kernel /= kernel.norm();
    const Eigen::VectorXd got = k.basis().col(0).real();
    const double sign = got(0) > 0 ? 1.0 : -1.0;
    CHECK((sign * got - kernel).norm() <= 1e-10);
}

TEST_CASE("model space rejects non-inner input and infers monomial degrees") {
    const auto not_inner = TruncatedSeries::from_list({0.5, 0.5}, 32);
    CHECK_THROWS_AS(model_space(not_inner, 32), PreconditionError);

    // degree inference is valid for monomial inner functions
    const Subspace k = model_space(TruncatedSeries::monomial(3, 32), 32);
    CHECK(k.dim() == 3);
}

TEST_CASE("model spaces commute with the hat involution") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = Rng::substream(600, "lemma2-unit", t);
        const BlaschkeSpec spec = sample_blaschke_spec(rng, 1, 4, 0.7, t % 2 == 0);
        const auto theta = blaschke_series(spec, 128).as_complex();
        const Subspace k = model_space(theta, 128, spec.degree());
        const Subspace k_hat = model_space(hat(theta), 128, spec.degree());
        CHECK(projector_distance(hat_subspace(k), k_hat) <= 1e-6);
    }
}

TEST_CASE("toeplitz kernel of the backward symbol is the constants") {
    const auto inst = toeplitz_kernel(LaurentSymbol::backward(1), 64);
    REQUIRE(inst.kernel.dim() == 1);
    CHECK(projector_distance(inst.kernel,
                             Subspace::span_of(TruncatedSeries::monomial(0, 64))) <= 1e-12);
    CHECK(inst.certificate.pass);
}

TEST_CASE("toeplitz kernel of the forward symbol is the masked edge artifact") {
    const auto inst = toeplitz_kernel(LaurentSymbol::forward(1), 64);
    CHECK(inst.kernel.dim() == 1);  // span{z^{N-1}}, an artifact of truncation
    CHECK(contains(inst.kernel, TruncatedSeries::monomial(63, 64), 1e-10));
    CHECK(inst.certificate.pass);  // guard band masks the edge
    CHECK(inst.certificate.residual == 0.0);
}

TEST_CASE("toeplitz kernel with symbol zbar^2 - 1/4 against the dense oracle") {
    LaurentSymbol sym{2, Eigen::VectorXcd::Zero(5)};
    sym.coeffs(0) = 1.0;     // c_{-2}
    sym.coeffs(2) = -0.25;   // c_0
    const int order = 96;
    const auto inst = toeplitz_kernel(sym, order);
    REQUIRE(inst.kernel.dim() == 2);
    CHECK(inst.certificate.pass);
    CHECK(is_nearly_invariant(inst.kernel, 1e-6));

    // dense oracle: eigen-decomposition of T^H T exposes the same null space
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(order, order);
    for (int i = 0; i < order; ++i) {
        if (i + 2 < order) t(i, i + 2) = 1.0;
        t(i, i) = -0.25;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.transpose() * t);
    Eigen::MatrixXd null(order, 2);
    null.col(0) = es.eigenvectors().col(0);
    null.col(1) = es.eigenvectors().col(1);
    CHECK(es.eigenvalues()(1) <= 1e-16);
    CHECK(es.eigenvalues()(2) >= 1e-4);
    const Subspace oracle_kernel(null.cast<Complex>(), Field::Real);
    CHECK(projector_distance(inst.kernel, oracle_kernel) <= 1e-6);

    // the kernel is spanned by the reproducing kernels at the roots ±1/2
    Eigen::VectorXd k1(order), k2(order);
    for (int n = 0; n < order; ++n) {
        k1(n) = std::pow(0.5, n);
        k2(n) = std::pow(-0.5, n);
    }
    const Subspace expected = orthonormalize(
        {TruncatedSeries::from_real(k1), TruncatedSeries::from_real(k2)});
    CHECK(projector_distance(inst.kernel, expected) <= 1e-6);
}

TEST_CASE("toeplitz kernel rejects degenerate symbols") {
    LaurentSymbol zero{1, Eigen::VectorXcd::Zero(3)};
    CHECK_THROWS_AS(toeplitz_kernel(zero, 32), DegenerateInputError);
}

TEST_CASE("inner multiplier instances are nearly invariant with certified triples") {
    BlaschkeSpec g_spec;
    g_spec.zeros = {Complex(0.3, 0.4), Complex(0.3, -0.4)};
    BlaschkeSpec theta;
    theta.zeros = {0.5};
    const auto inst = inner_multiplier_instance(g_spec, theta, 128);
    CHECK(inst.M.dim() == 1);
    CHECK(inst.defect_report->defect == 0);
    CHECK(inst.hitt->rep_error <= 1e-6);
    CHECK(inst.hitt->isometry_error <= 1e-8);
    CHECK(inst.max_product_spill <= 1e-10);
    // the extracted multiplier is real (hat-symmetric) with positive origin value
    CHECK(inst.hitt->g.field() == Field::Real);
    CHECK(evaluate(inst.hitt->g, 0.0).real() > 0.0);
    CHECK(is_hat_symmetric(inst.hitt->g.as_complex(), 1e-12));

    // g = 1 and theta = z^3 reproduces the plain model space
    BlaschkeSpec trivial;
    BlaschkeSpec z3;
    z3.monomial_order = 3;
    const auto plain = inner_multiplier_instance(trivial, z3, 32);
    CHECK(projector_distance(plain.M, model_space(z3, 32)) <= 1e-12);

    // sign checks
    BlaschkeSpec bad = g_spec;
    bad.front = -1.0;  // makes g(0) < 0
    CHECK_THROWS_AS(inner_multiplier_instance(bad, theta, 64), SignError);
    BlaschkeSpec asym;
    asym.zeros = {Complex(0.2, 0.3)};
    CHECK_THROWS_AS(inner_multiplier_instance(asym, theta, 64), PreconditionError);
}

TEST_CASE("defect instances reject defect directions that touch M") {
    // e = 1 overlaps any case-i instance through g
    BlaschkeSpec trivial;
    const auto g = blaschke_series(trivial, 32);
    BlaschkeSpec z2;
    z2.monomial_order = 2;
    const Subspace k = model_space(z2, 32);
    Eigen::MatrixXcd flat = Eigen::MatrixXcd::Zero(64, k.dim() + 1);
    flat.block(0, 0, 32, k.dim()) = k.basis();
    flat.block(32, k.dim(), 32, 1) = Eigen::MatrixXcd::Identity(32, 1);
    const StackedSubspace nst{Subspace(flat, Field::Real), 2, 32};
    CHECK_THROWS_AS(
        defect_instance(g, {TruncatedSeries::monomial(0, 32)}, nst, 32),
        RejectedInstanceError);
}

TEST_CASE("seeded defect instances satisfy their own contract") {
    const DefectInstance inst = sample_defect_instance(7, 2, 128);
    CHECK(inst.report.defect <= 2);
    CHECK(inst.M.dim() >= 1);
    CHECK(inst.max_synthesis_spill <= 1e-8);
    // the defect directions must be orthogonal to M
    for (const auto& e : inst.e_list)
        for (int j = 0; j < inst.M.dim(); ++j)
            CHECK(std::abs(inner_product(e, inst.M.column(j))) <= 1e-8);
    // determinism
    const DefectInstance again = sample_defect_instance(7, 2, 128);
    CHECK(projector_distance(inst.M, again.M) == 0.0);
}

TEST_CASE("random subspaces are reproducible and well-conditioned") {
    const Subspace a = random_subspace(1, 32, 3);
    const Subspace b = random_subspace(1, 32, 3);
    CHECK((a.basis() - b.basis()).norm() == 0.0);
    const Eigen::MatrixXcd gram = a.basis().adjoint() * a.basis();
    CHECK((gram - Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-12);
    CHECK_THROWS_AS(random_subspace(1, 8, 9), DimensionMismatchError);
    CHECK(random_subspace(1, 8, 0).dim() == 0);

    const Subspace c = random_subspace(2, 32, 3);
    CHECK((a.basis() - c.basis()).norm() > 1e-3);
}

TEST_CASE("hat-closed samples are genuinely hat-closed") {
    for (int t = 0; t < 5; ++t) {
        const Subspace n = sample_hat_closed_subspace(90 + t, 48, 1 + t);
        CHECK(n.dim() == 1 + t);
        CHECK(projector_distance(hat_subspace(n), n) <= 1e-10);
    }
}

TEST_CASE("shift-invariant subspaces from specs pass the engine preconditions") {
    BlaschkeSpec spec;
    spec.zeros = {0.5};
    spec.monomial_order = 1;
    const Subspace m = shift_invariant_subspace(spec, 96);
    CHECK(m.dim() == 96 - 2);
    const TruncatedSeries theta = beurling_extract(m);
    const auto truth = normalize_real_symmetric(blaschke_series(spec, 96).as_complex());
    CHECK((theta.as_complex() - truth.normalized).norm() <= 1e-6);
}
