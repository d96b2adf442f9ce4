#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "weylcov/linalg.hpp"
#include "weylcov/rng.hpp"

using namespace weylcov;
using testutil::naive_kron;
using testutil::random_hermitian;
using testutil::scalar_entropy;

TEST_CASE("tensor: dimensions multiply and identity case") {
    const CMat a = CMat::Random(2, 2);
    const CMat b = CMat::Random(3, 3);
    const CMat t = tensor(a, b);
    CHECK(t.rows() == 6);
    CHECK(t.cols() == 6);
    CHECK(max_abs(tensor(CMat(CMat::Identity(2, 2)), CMat(CMat::Identity(3, 3))) - CMat::Identity(6, 6)) == 0.0);
    CHECK(max_abs(t - naive_kron(a, b)) < 1e-14);
}

TEST_CASE("tensor: (a x b)(u x v) = au x bv") {
    Xoshiro256ss rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        const CMat a = random_hermitian(2, rng);
        const CMat b = random_hermitian(2, rng);
        const CVec u = haar_random_vector(2, rng);
        const CVec v = haar_random_vector(2, rng);
        const CVec lhs = tensor(a, b) * tensor(u, v);
        const CVec rhs = tensor(CVec(a * u), CVec(b * v));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("density matrix invariants are enforced") {
    CMat bad = CMat::Identity(2, 2);
    bad(0, 1) = Complex(0.0, 0.5);  // not Hermitian
    bad *= 0.5;
    CHECK_THROWS_AS(DensityMatrix(bad, {2}), std::invalid_argument);

    CHECK_THROWS_AS(DensityMatrix(CMat::Identity(2, 2), {2}), std::invalid_argument);  // trace 2

    CMat indefinite(2, 2);
    indefinite << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix(indefinite, {2}), std::invalid_argument);

    CHECK_THROWS_AS(DensityMatrix(0.5 * CMat::Identity(2, 2), {3}), std::invalid_argument);
}

TEST_CASE("partial trace: maximally entangled pair reduces to I/2") {
    const DensityMatrix phi = maximally_entangled(2);
    for (int keep = 0; keep < 2; ++keep) {
        const DensityMatrix red = partial_trace(phi, keep);
        CHECK(max_abs(red.mat - 0.5 * CMat::Identity(2, 2)) < 1e-14);
    }
}

TEST_CASE("partial trace: product state reduces to its factor") {
    Xoshiro256ss rng(7);
    const CMat rho = random_density_raw(2, rng);
    const CMat y = random_density_raw(3, rng);
    const DensityMatrix prod(tensor(rho, y), {2, 3});
    CHECK(max_abs(partial_trace(prod, 0).mat - rho) < 1e-12);
    CHECK(max_abs(partial_trace(prod, 1).mat - y) < 1e-12);
}

TEST_CASE("partial trace: trace preserved on random states (summation oracle)") {
    Xoshiro256ss rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix x(random_density_raw(4, rng), {2, 2});
        const DensityMatrix red = partial_trace(x, rep % 2);
        CHECK(std::abs(testutil::naive_trace(red.mat) - Complex(1.0, 0.0)) < 1e-12);
    }
    const DensityMatrix three(random_density_raw(8, rng), {2, 2, 2});
    CHECK_THROWS_AS(partial_trace(three, 0), std::invalid_argument);
}

TEST_CASE("eig_hermitian: pinned spectra and conventions") {
    CMat sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const EigResult es = eig_hermitian(sx);
    CHECK(es.values(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.values(1) == doctest::Approx(1.0).epsilon(1e-12));

    CMat diag = CMat::Zero(2, 2);
    diag(0, 0) = 0.25;
    diag(1, 1) = 0.75;
    const EigResult ed = eig_hermitian(diag);
    CHECK(ed.values(0) == doctest::Approx(0.25));
    CHECK(ed.values(1) == doctest::Approx(0.75));
    // permutation of the identity
    CHECK(max_abs(ed.vectors.cwiseAbs().matrix().cast<Complex>() - CMat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("eig_hermitian: reconstruction and phase convention on random input") {
    Xoshiro256ss rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const CMat a = random_hermitian(5, rng);
        const EigResult eig = eig_hermitian(a);
        const CMat rec = eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
        CHECK(max_abs(rec - a) < 1e-10);
        CHECK(max_abs(eig.vectors * eig.vectors.adjoint() - CMat::Identity(5, 5)) < 1e-12);
        for (Index j = 0; j < 5; ++j) {
            for (Index i = 0; i < 5; ++i) {
                const Complex c = eig.vectors(i, j);
                if (std::abs(c) > 1e-8) {
                    CHECK(c.real() > 0.0);
                    CHECK(std::abs(c.imag()) < 1e-12);
                    break;
                }
            }
        }
    }
    CMat skew(2, 2);
    skew << 0.0, 1.0, 2.0, 0.0;
    CHECK_THROWS_AS(eig_hermitian(skew), std::invalid_argument);
}

TEST_CASE("von Neumann entropy: pinned values") {
    const DensityMatrix mixed(0.5 * CMat::Identity(2, 2), {2});
    CHECK(von_neumann_entropy(mixed) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const PureState e0(CVec::Unit(3, 0));
    CHECK(von_neumann_entropy(e0.density()) == doctest::Approx(0.0).epsilon(1e-12));

    CMat diag = CMat::Zero(2, 2);
    diag(0, 0) = 0.75;
    diag(1, 1) = 0.25;
    const double expected = scalar_entropy({0.75, 0.25});
    CHECK(expected == doctest::Approx(0.562335).epsilon(1e-5));
    CHECK(von_neumann_entropy(DensityMatrix(diag, {2})) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("relative entropy: pinned values and support detection") {
    Xoshiro256ss rng(19);
    const DensityMatrix rho(random_density_raw(3, rng), {3});
    CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));

    CMat diag = CMat::Zero(2, 2);
    diag(0, 0) = 0.75;
    diag(1, 1) = 0.25;
    const DensityMatrix a(diag, {2});
    const DensityMatrix half(0.5 * CMat::Identity(2, 2), {2});
    // log 2 - H(0.75, 0.25), evaluated independently
    const double expected = std::log(2.0) - scalar_entropy({0.75, 0.25});
    CHECK(expected == doctest::Approx(0.130812).epsilon(1e-4));
    CHECK(relative_entropy(a, half) == doctest::Approx(expected).epsilon(1e-10));

    const PureState p0(CVec::Unit(2, 0));
    const PureState p1(CVec::Unit(2, 1));
    CHECK(std::isinf(relative_entropy(p0.density(), p1.density())));

    CHECK_THROWS_AS(relative_entropy(rho, half), std::invalid_argument);
}

TEST_CASE("haar_random_pure: determinism and normalization") {
    const PureState a = haar_random_pure(4, 7);
    const PureState b = haar_random_pure(4, 7);
    CHECK((a.vec - b.vec).cwiseAbs().maxCoeff() == 0.0);
    for (std::uint64_t seed : {0ull, 1ull, 99ull})
        CHECK(std::abs(haar_random_pure(5, seed).vec.norm() - 1.0) < 1e-12);
    CHECK_THROWS_AS(haar_random_pure(0, 1), std::invalid_argument);
}

TEST_CASE("haar_random_pure: Monte-Carlo first-component mass (5 sigma band)") {
    const Index dim = 4;
    const int n = 10000;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        const PureState psi = haar_random_pure(dim, 1000 + static_cast<std::uint64_t>(i));
        mean += std::norm(psi.vec(0));
    }
    mean /= n;
    // |<e0|psi>|^2 ~ Beta(1, dim-1): mean 1/dim, variance (dim-1)/(dim^2 (dim+1))
    const double sigma = std::sqrt((dim - 1.0) / (dim * dim * (dim + 1.0)) / n);
    CHECK(std::abs(mean - 1.0 / dim) < 5.0 * sigma);
}

TEST_CASE("entropy is unitarily invariant") {
    Xoshiro256ss rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        const CMat rho = random_density_raw(4, rng);
        const CMat u = random_unitary(4, rng);
        CHECK(std::abs(entropy_psd(u * rho * u.adjoint()) - entropy_psd(rho)) < 1e-10);
    }
}

TEST_CASE("entropy concavity on random 3-term mixtures") {
    Xoshiro256ss rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        double w[3] = {rng.uniform01_open(), rng.uniform01_open(), rng.uniform01_open()};
        const double sum = w[0] + w[1] + w[2];
        for (double& wi : w) wi /= sum;
        CMat mix = CMat::Zero(3, 3);
        double avg = 0.0;
        for (int i = 0; i < 3; ++i) {
            const CMat rho = random_density_raw(3, rng);
            mix += w[i] * rho;
            avg += w[i] * entropy_psd(rho);
        }
        CHECK(entropy_psd(mix) >= avg - 1e-10);
    }
}

TEST_CASE("relative entropy is nonnegative and separates states") {
    Xoshiro256ss rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const CMat rho = random_density_raw(3, rng);
        const CMat tau = random_density_raw(3, rng);
        const double value = relative_entropy_raw(rho, tau);
        CHECK(value >= -1e-10);
        if (max_abs(rho - tau) > 1e-8)
            CHECK(value > 1e-10);  // distinct states do not report zero
        CHECK(relative_entropy_raw(rho, rho) < 1e-10);
    }
}
