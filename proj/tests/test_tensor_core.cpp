#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "monolab/complex_matrix.hpp"
#include "monolab/model.hpp"
#include "support.hpp"

using namespace monolab;
using monolab::testing::eigenvalues_via_charpoly;
using monolab::testing::random_density;
using monolab::testing::random_hermitian;
using monolab::testing::random_matrix;
using monolab::testing::random_unitary;

namespace {

const Complex kI{0.0, 1.0};

ComplexMatrix sigma_y() {
    return ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}});
}

ComplexMatrix bell_projector() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix rho(4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = s * s;
    return rho;
}

}  // namespace

TEST_CASE("kron identity and sigma_y expansion") {
    const auto i2 = ComplexMatrix::identity(2);
    CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

    const auto yy = kron(sigma_y(), sigma_y());
    const auto expected = ComplexMatrix::from_rows({{0.0, 0.0, 0.0, -1.0},
                                                    {0.0, 0.0, 1.0, 0.0},
                                                    {0.0, 1.0, 0.0, 0.0},
                                                    {-1.0, 0.0, 0.0, 0.0}});
    CHECK(max_abs_diff(yy, expected) < 1e-15);
}

TEST_CASE("kron of diagonal matrices") {
    const auto a = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}});
    const auto b = ComplexMatrix::from_rows({{3.0, 0.0}, {0.0, 4.0}});
    const auto k = kron(a, b);
    const double expected[] = {3.0, 4.0, 6.0, 8.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(k(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-15));
        for (int j = 0; j < 4; ++j) {
            if (i != j) CHECK(std::abs(k(i, j)) == 0.0);
        }
    }
}

TEST_CASE("kron associativity on random triples") {
    auto rng = seeded_engine(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(2, rng);
        const auto b = random_matrix(2, rng);
        const auto c = random_matrix(2, rng);
        CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
    }
}

TEST_CASE("kron rejects results beyond the 256 cap") {
    const auto a = ComplexMatrix::identity(16);
    const auto b = ComplexMatrix::identity(32);
    CHECK_THROWS_AS(kron(a, b), CapacityError);
}

TEST_CASE("partial trace of a Bell projector is maximally mixed") {
    const QubitRegister reg{"A", "B"};
    const auto reduced = partial_trace(bell_projector(), reg, {"A"});
    CHECK(max_abs_diff(reduced, 0.5 * ComplexMatrix::identity(2)) < 1e-15);
}

TEST_CASE("partial trace of a product state returns the kept factor") {
    auto rng = seeded_engine(12);
    const auto rho_a = random_density(2, 2, rng);
    const auto rho_b = random_density(2, 2, rng);
    const QubitRegister reg{"A", "B"};
    const auto product = kron(rho_a, rho_b);
    CHECK(max_abs_diff(partial_trace(product, reg, {"B"}), rho_b) < 1e-12);
    CHECK(max_abs_diff(partial_trace(product, reg, {"A"}), rho_a) < 1e-12);
}

TEST_CASE("keep order controls the output ordering") {
    auto rng = seeded_engine(13);
    const auto rho_a = random_density(2, 2, rng);
    const auto rho_b = random_density(2, 2, rng);
    const QubitRegister reg{"A", "B"};
    const auto product = kron(rho_a, rho_b);
    CHECK(max_abs_diff(partial_trace(product, reg, {"B", "A"}), kron(rho_b, rho_a)) < 1e-12);
}

TEST_CASE("initial pair marginal is diagonal rank 2 at t = 0") {
    const auto init = InitialPairState::from_alpha(0.4);
    const auto phi0 = evolved_two_pair_state(init, 0.0);
    const auto reduced = phi0.reduced_density({"c1", "r1"});

    ComplexMatrix expected(4);
    expected(0, 0) = 0.16;
    expected(2, 2) = 0.84;
    CHECK(max_abs_diff(reduced, expected) < 1e-14);
}

TEST_CASE("partial trace is consistent under chaining and preserves trace") {
    auto rng = seeded_engine(14);
    const QubitRegister reg{"a", "b", "c", "d"};
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random_density(16, 3, rng);
        const auto abc = partial_trace(rho, reg, {"a", "b", "c"});
        const auto ab_direct = partial_trace(rho, reg, {"a", "b"});
        const QubitRegister reg_abc{"a", "b", "c"};
        const auto ab_chained = partial_trace(abc, reg_abc, {"a", "b"});
        CHECK(max_abs_diff(ab_direct, ab_chained) < 1e-12);
        CHECK(std::abs(ab_direct.trace() - rho.trace()) < 1e-12);
    }
}

TEST_CASE("partial trace rejects bad keep sets") {
    const QubitRegister reg{"A", "B"};
    const auto rho = bell_projector();
    CHECK_THROWS_AS(partial_trace(rho, reg, {"X"}), LabelError);
    CHECK_THROWS_AS(partial_trace(rho, reg, std::initializer_list<std::string>{}),
                    ArgumentError);
    CHECK_THROWS_AS(partial_trace(rho, reg, {"A", "A"}), ArgumentError);
}

TEST_CASE("hermitian eigenvalues of simple matrices") {
    const auto d = ComplexMatrix::from_rows(
        {{1.0, 0.0, 0.0}, {0.0, 3.0, 0.0}, {0.0, 0.0, 2.0}});
    const auto values = hermitian_eigenvalues(d);
    CHECK(values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(values[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(values[2] == doctest::Approx(1.0).epsilon(1e-14));

    const auto half = hermitian_eigenvalues(0.5 * ComplexMatrix::identity(2));
    CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("Wootters matrix of a Bell projector has spectrum (1,0,0,0)") {
    const auto rho = bell_projector();
    const auto yy = kron(sigma_y(), sigma_y());
    const auto rho_tilde = yy * rho.conjugate() * yy;
    const auto root = psd_sqrt(rho);
    const auto m = root * rho_tilde * root;

    const auto values = hermitian_eigenvalues(m);
    CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k < 4; ++k) CHECK(std::abs(values[k]) < 1e-12);

    // independent route: characteristic polynomial roots
    const auto oracle = eigenvalues_via_charpoly(m);
    for (int k = 0; k < 4; ++k) CHECK(values[k] == doctest::Approx(oracle[k]).epsilon(1e-9));
}

TEST_CASE("Jacobi agrees with the characteristic-polynomial oracle") {
    auto rng = seeded_engine(15);
    for (int trial = 0; trial < 10; ++trial) {
        const auto h = random_hermitian(4, rng);
        const auto jacobi = hermitian_eigenvalues(h);
        const auto oracle = eigenvalues_via_charpoly(h);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(jacobi[k] - oracle[k]) < 1e-9);
        }
    }
}

TEST_CASE("eigensystem reproduces a planted spectrum under conjugation") {
    auto rng = seeded_engine(16);
    for (int n : {2, 4, 8, 16}) {
        const auto u = random_unitary(n, rng);
        std::vector<double> planted(n);
        for (int k = 0; k < n; ++k) planted[k] = std::cos(1.7 * k) * (k + 1);
        ComplexMatrix h(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex s{0.0, 0.0};
                for (int k = 0; k < n; ++k) s += u(i, k) * planted[k] * std::conj(u(j, k));
                h(i, j) = s;
            }
        auto sorted = planted;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        const auto values = hermitian_eigenvalues(h);
        double trace = 0.0;
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs(values[k] - sorted[k]) < 1e-9);
            trace += values[k];
        }
        CHECK(trace == doctest::Approx(h.trace().real()).epsilon(1e-12));
    }
}

TEST_CASE("eigen solver rejects non-Hermitian input") {
    auto rng = seeded_engine(17);
    auto m = random_matrix(3, rng);
    m(0, 1) += Complex{1.0, 1.0};  // decisively non-Hermitian
    CHECK_THROWS_AS(hermitian_eigenvalues(m), ArgumentError);
}

TEST_CASE("psd_sqrt on diagonal and random low-rank inputs") {
    CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) <
          1e-13);

    const auto d = ComplexMatrix::from_rows({{4.0, 0.0}, {0.0, 9.0}});
    const auto root = psd_sqrt(d);
    CHECK(root(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(root(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));

    auto rng = seeded_engine(18);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random_density(4, 2, rng);
        const auto s = psd_sqrt(rho);
        CHECK(s.is_hermitian(1e-12));
        CHECK(max_abs_diff(s * s, rho) < 1e-10);
    }
}

TEST_CASE("psd_sqrt rejects indefinite input") {
    const auto m = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -0.5}});
    CHECK_THROWS_AS(psd_sqrt(m), ArgumentError);
}

TEST_CASE("rank estimates") {
    CHECK(rank_estimate(0.5 * ComplexMatrix::identity(2), 1e-10) == 2);

    ComplexMatrix pure(4);
    pure(2, 2) = 1.0;
    CHECK(rank_estimate(pure, 1e-10) == 1);

    // rho_{c1r1}(t) stays rank 2 along the evolution
    const auto init = InitialPairState::from_alpha(1.0 / std::sqrt(10.0));
    const auto phi = evolved_two_pair_state(init, 1.0);
    CHECK(rank_estimate(phi.reduced_density({"c1", "r1"}), 1e-10) == 2);
}

TEST_CASE("rank estimate is invariant under unitary conjugation") {
    auto rng = seeded_engine(19);
    for (int trial = 0; trial < 10; ++trial) {
        const int rank = 1 + static_cast<int>(rng() % 4);
        const auto rho = random_density(4, rank, rng);
        const int direct = rank_estimate(rho, 1e-10);
        const auto u = random_unitary(4, rng);
        const auto conjugated = u * rho * u.adjoint();
        CHECK(rank_estimate(conjugated, 1e-10) == direct);
    }
}

TEST_CASE("density validation catches malformed inputs") {
    ComplexMatrix rho(2);
    rho(0, 0) = 0.7;
    rho(1, 1) = 0.3;
    CHECK_NOTHROW(rho.check_density());

    rho(0, 1) = Complex{0.0, 0.4};
    rho(1, 0) = Complex{0.0, 0.4};  // anti-Hermitian off-diagonal pair
    CHECK_THROWS_AS(rho.check_density(), ArgumentError);

    ComplexMatrix heavy(2);
    heavy(0, 0) = 0.9;
    heavy(1, 1) = 0.3;
    CHECK_THROWS_AS(heavy.check_density(), ArgumentError);
}
