#include "entq/observables.hpp"
#include "entq/rng.hpp"
#include "entq/states.hpp"

#include <doctest.h>

#include <cmath>

using namespace entq;

TEST_CASE("state vector validation") {
    CHECK_THROWS_AS(StateVector({1.0, 1.0}, DimsSpec{2}), ValidationError);
    CHECK_THROWS_AS(StateVector({1.0}, DimsSpec{2}), DimensionError);
    const StateVector repaired = StateVector::normalized({2.0, 0.0}, DimsSpec{2});
    CHECK(std::abs(repaired[0] - cplx{1.0}) < 1e-15);
}

TEST_CASE("pure_density basics") {
    const StateVector zero_zero({1.0, 0.0, 0.0, 0.0}, DimsSpec{2, 2});
    const DensityMatrix rho = pure_density(zero_zero);
    CHECK(std::abs(rho.matrix()(0, 0) - cplx{1.0}) < 1e-15);
    CHECK(rho.matrix().max_abs() == doctest::Approx(1.0));
    CHECK(purity(rho) == doctest::Approx(1.0));

    const DensityMatrix cat = pure_density(cat_pure(0.0));
    CHECK(std::abs(cat.matrix()(0, 0) - cplx{0.5}) < 1e-12);
    CHECK(std::abs(cat.matrix()(0, 3) - cplx{0.5}) < 1e-12);
    CHECK(std::abs(cat.matrix()(3, 0) - cplx{0.5}) < 1e-12);
    CHECK(std::abs(cat.matrix()(3, 3) - cplx{0.5}) < 1e-12);
    CHECK(std::abs(cat.matrix()(1, 1)) < 1e-15);
}

TEST_CASE("global phase invariance") {
    const StateVector psi = cat_pure(0.7);
    std::vector<cplx> rotated(psi.amplitudes());
    for (auto& a : rotated) a *= std::polar(1.0, 1.234);
    const StateVector psi2(rotated, psi.dims());
    CHECK((pure_density(psi).matrix() - pure_density(psi2).matrix()).max_abs() < 1e-12);
}

TEST_CASE("mix") {
    const DensityMatrix cat = cat_mixed();
    const DensityMatrix same = mix({{1.0, cat}});
    CHECK((same.matrix() - cat.matrix()).max_abs() < 1e-15);

    const DensityMatrix p00 = pure_density(StateVector({1, 0, 0, 0}, DimsSpec{2, 2}));
    const DensityMatrix p11 = pure_density(StateVector({0, 0, 0, 1}, DimsSpec{2, 2}));
    const DensityMatrix eq3 = mix({{0.5, p00}, {0.5, p11}});
    CHECK((eq3.matrix() - cat.matrix()).max_abs() < 1e-15);
    CHECK(purity(eq3) == doctest::Approx(0.5));

    CHECK_THROWS_AS(mix({{0.5, cat}}), ValidationError);
    CHECK_THROWS_AS(mix({{-0.5, cat}, {1.5, cat}}), ValidationError);
}

TEST_CASE("cat_pure observables") {
    const Observable zz = pauli_observable("ZZ");
    for (double phi : {0.0, 1.0, 2.5, 6.0}) {
        const StateVector psi = cat_pure(phi);
        CHECK(psi.norm() == doctest::Approx(1.0));
        CHECK(expectation(pure_density(psi), zz) == doctest::Approx(1.0));
    }
    // Asymmetric survival probability.
    const StateVector tilted = cat_pure(0.0, 0.9);
    CHECK(std::norm(tilted[0]) == doctest::Approx(0.9));
    CHECK(std::norm(tilted[3]) == doctest::Approx(0.1));
}

TEST_CASE("cat_mixed equals the dephased cat for any phase") {
    const ComplexMatrix comp = ComplexMatrix::identity(4);
    for (double phi : {0.0, 0.9, 3.14}) {
        const DensityMatrix deph = dephase(pure_density(cat_pure(phi)), comp);
        CHECK((deph.matrix() - cat_mixed().matrix()).max_abs() < 1e-12);
    }
    CHECK(purity(cat_mixed()) == doctest::Approx(0.5));
}

TEST_CASE("named states") {
    const StateVector bell = phi_plus();
    CHECK(std::abs(bell[0] - cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
    CHECK(std::abs(bell[3] - cplx{1.0 / std::sqrt(2.0)}) < 1e-15);

    const StateVector g = ghz();
    CHECK(g.dims().total() == 8);
    CHECK(std::abs(g[0] - cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
    CHECK(std::abs(g[7] - cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
}

TEST_CASE("dephase") {
    const ComplexMatrix comp = ComplexMatrix::identity(4);
    const DensityMatrix diag = cat_mixed();
    CHECK((dephase(diag, comp).matrix() - diag.matrix()).max_abs() < 1e-15);

    const DensityMatrix bell = pure_density(phi_plus());
    const DensityMatrix deph = dephase(bell, comp);
    CHECK((deph.matrix() - cat_mixed().matrix()).max_abs() < 1e-12);

    // Idempotence.
    const DensityMatrix twice = dephase(deph, comp);
    CHECK((twice.matrix() - deph.matrix()).max_abs() < 1e-12);

    // Diagonal observables keep their expectation.
    const Observable zz = pauli_observable("ZZ");
    CHECK(expectation(bell, zz) == doctest::Approx(expectation(deph, zz)));

    ComplexMatrix bad = ComplexMatrix::identity(4);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(dephase(bell, bad), ValidationError);
}

TEST_CASE("cat diagonal is phase-blind") {
    const DensityMatrix ref = cat_mixed();
    for (double phi : {0.0, 0.4, 1.7, 4.4}) {
        const DensityMatrix rho = pure_density(cat_pure(phi));
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(rho.matrix()(i, i) - ref.matrix()(i, i)) < 1e-15);
    }
}

TEST_CASE("purity bounds") {
    const DensityMatrix mm = DensityMatrix(
        ComplexMatrix::identity(4) * cplx{0.25, 0.0}, DimsSpec{2, 2});
    CHECK(purity(mm) == doctest::Approx(0.25));
    CHECK(purity(pure_density(phi_plus())) == doctest::Approx(1.0));
}

TEST_CASE("density matrix validation rejects bad input") {
    ComplexMatrix notrace = ComplexMatrix::identity(4);
    CHECK_THROWS_AS(DensityMatrix(notrace, DimsSpec{2, 2}), ValidationError);

    ComplexMatrix neg = ComplexMatrix::diag({1.5, -0.5, 0.0, 0.0});
    CHECK_THROWS_AS(DensityMatrix(neg, DimsSpec{2, 2}), ValidationError);
}
