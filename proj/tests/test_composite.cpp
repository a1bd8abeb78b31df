#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsim/composite.hpp"
#include "qsim/measurement.hpp"
#include "test_helpers.hpp"

using namespace qsim;
using namespace qsim::test;

TEST_CASE("tensor_states and tensor_ops") {
    const RawState zero(V({1.0, 0.0}));
    CHECK(dist(tensor_states(zero, zero).vec(), V({1.0, 0.0, 0.0, 0.0})) == 0.0);

    CHECK(dist(tensor_ops(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
               ComplexMatrix::identity(4)) == 0.0);

    // Alice's gate on the joint state: (diag(1,eps) x I) applied to |00> + |11>.
    const double eps = 0.25;
    const ComplexMatrix joint =
        tensor_ops(ComplexMatrix::diagonal({1.0, eps}), ComplexMatrix::identity(2));
    const ComplexVector bell = V({1.0, 0.0, 0.0, 1.0});
    CHECK(dist(apply(joint, bell), V({1.0, 0.0, 0.0, eps})) == 0.0);
}

TEST_CASE("bell_state") {
    const QubitRegister reg = bell_state();
    CHECK(reg.n_qubits() == 2);
    CHECK(reg.sites() == std::vector<std::string>{"A", "B"});
    CHECK(dist(reg.state().vec(), V({1.0, 0.0, 0.0, 1.0})) == 0.0);

    const double s = 1.0 / std::sqrt(2.0);
    CHECK(dist(normalize(reg.state()).vec(), V({s, 0.0, 0.0, s})) < 1e-15);

    // Joint computational-basis observable: two equal amplitudes.
    const Observable basis_index(ComplexMatrix::diagonal({0.0, 1.0, 2.0, 3.0}));
    const OutcomeDistribution d = born_probabilities_B(reg.state(), basis_index);
    REQUIRE(d.size() == 4);
    CHECK(d[0].probability == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d[1].probability == doctest::Approx(0.0));
    CHECK(d[2].probability == doctest::Approx(0.0));
    CHECK(d[3].probability == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("embed_local") {
    const double eps = 0.3;
    const ComplexMatrix gate = ComplexMatrix::diagonal({1.0, eps});

    SUBCASE("site 0 of 2: oracle is the explicit Kronecker product") {
        const ComplexMatrix embedded = embed_local(gate, 0, 2);
        CHECK(dist(embedded, tensor_ops(gate, ComplexMatrix::identity(2))) == 0.0);
        CHECK(dist(embedded, ComplexMatrix::diagonal({1.0, 1.0, eps, eps})) == 0.0);
    }
    SUBCASE("identity embeds to identity") {
        CHECK(dist(embed_local(ComplexMatrix::identity(2), 1, 3),
                   ComplexMatrix::identity(8)) == 0.0);
    }
    SUBCASE("Pauli-X at site 1 flips |00> to |01>") {
        const ComplexMatrix x1 = embed_local(pauli_x(), 1, 2);
        CHECK(dist(apply(x1, V({1.0, 0.0, 0.0, 0.0})), V({0.0, 1.0, 0.0, 0.0})) == 0.0);
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(embed_local(gate, 2, 2), InvalidInputError);
        CHECK_THROWS_AS(embed_local(ComplexMatrix::identity(3), 0, 2),
                        InvalidInputError);
    }
}

TEST_CASE("density_from_state") {
    CHECK(dist(density_from_state(RawState(V({1.0, 0.0}))).matrix(),
               ComplexMatrix::diagonal({1.0, 0.0})) < 1e-15);

    const double s = 1.0 / std::sqrt(2.0);
    CHECK(dist(density_from_state(RawState(V({s, s}))).matrix(),
               M(2, 2, {0.5, 0.5, 0.5, 0.5})) < 1e-15);

    // Scalar invariance: raw (0, 2i) gives the same matrix as (0, 1).
    const DensityMatrix rho = density_from_state(RawState(V({0.0, 2.0 * kI})));
    CHECK(dist(rho.matrix(), ComplexMatrix::diagonal({0.0, 1.0})) < 1e-15);
    CHECK(rho.normalized());
}

TEST_CASE("partial_trace") {
    SUBCASE("normalized Bell state: Bob is maximally mixed") {
        const DensityMatrix joint =
            density_from_state(bell_state().state());
        const DensityMatrix bob = partial_trace(joint, 1, 2);
        CHECK(dist(bob.matrix(), M(2, 2, {0.5, 0.0, 0.0, 0.5})) <= 1e-12);
        CHECK(bob.normalized());
    }
    SUBCASE("|00> + eps|11>: Bob's renormalized reduced matrix") {
        const double eps = 0.2;
        const RawState damped(V({1.0, 0.0, 0.0, eps}));
        const DensityMatrix bob =
            partial_trace(density_from_state(damped), 1, 2).renormalized();
        const double denom = 1.0 + eps * eps;
        CHECK(dist(bob.matrix(),
                   ComplexMatrix::diagonal({1.0 / denom, eps * eps / denom})) < 1e-14);
    }
    SUBCASE("unnormalized path: the literal diag(1, eps^2)") {
        const double eps = 0.1;
        const RawState damped(V({1.0, 0.0, 0.0, eps}));
        const DensityMatrix bob =
            partial_trace(density_from_state_unnormalized(damped), 1, 2);
        CHECK_FALSE(bob.normalized());
        CHECK(dist(bob.matrix(), ComplexMatrix::diagonal({1.0, eps * eps})) < 1e-15);
    }
    SUBCASE("product states reduce to their factors") {
        SplitMix64 rng(64);
        const RawState a(random_complex_gaussian_vector(2, rng));
        const RawState b(random_complex_gaussian_vector(2, rng));
        const DensityMatrix joint = density_from_state(tensor_states(a, b));
        CHECK(dist(partial_trace(joint, 0, 2).matrix(),
                   density_from_state(a).matrix()) < 1e-12);
        CHECK(dist(partial_trace(joint, 1, 2).matrix(),
                   density_from_state(b).matrix()) < 1e-12);
    }
    SUBCASE("dimension and site validation") {
        const DensityMatrix rho = density_from_state(RawState(V({1.0, 0.0})));
        CHECK_THROWS_AS(partial_trace(rho, 0, 2), InvalidInputError);
        CHECK_THROWS_AS(partial_trace(rho, 1, 1), InvalidInputError);
    }
}

TEST_CASE("partial_trace preserves trace and positivity") {
    SplitMix64 rng(65);
    for (int trial = 0; trial < 20; ++trial) {
        const int n_qubits = 2 + static_cast<int>(rng.next_u64() % 2);
        const std::size_t dim = std::size_t{1} << n_qubits;
        const DensityMatrix joint =
            density_from_state(RawState(random_complex_gaussian_vector(dim, rng)));
        const int keep = static_cast<int>(rng.next_u64() % n_qubits);

        const DensityMatrix reduced = partial_trace(joint, keep, n_qubits);
        CHECK(std::abs(trace(reduced.matrix()).real() -
                       trace(joint.matrix()).real()) <= 1e-12);

        const auto eig = hermitian_eigendecomposition(reduced.matrix(), 1e-9);
        for (double lambda : eig.eigenvalues) {
            CHECK(lambda >= -1e-10);
            CHECK(lambda <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("tensor then trace round-trip") {
    SplitMix64 rng(66);
    for (int trial = 0; trial < 20; ++trial) {
        const RawState a(random_complex_gaussian_vector(2, rng));
        const RawState b(random_complex_gaussian_vector(2, rng));
        const DensityMatrix joint = density_from_state(tensor_states(a, b));
        CHECK(dist(partial_trace(joint, 0, 2).matrix(),
                   density_from_state(a).matrix()) <= 1e-10);
    }
}

TEST_CASE("disjoint-site embeddings commute") {
    SplitMix64 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix a(2, 2), b(2, 2);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                a(i, j) = rng.next_complex_gaussian();
                b(i, j) = rng.next_complex_gaussian();
            }
        }
        const ComplexMatrix a0 = embed_local(a, 0, 3);
        const ComplexMatrix b2 = embed_local(b, 2, 3);
        CHECK(frobenius_norm(a0 * b2 - b2 * a0) <=
              1e-12 * frobenius_norm(a0 * b2));
    }
}

TEST_CASE("Bob's marginal from the joint state matches the reduced diagonal") {
    SplitMix64 rng(68);
    ComplexMatrix bit(2, 2);
    bit(1, 1) = 1.0;
    const Observable bob_obs(embed_local(bit, 1, 2));

    for (int trial = 0; trial < 20; ++trial) {
        const RawState joint(random_complex_gaussian_vector(4, rng));
        const OutcomeDistribution direct = born_probabilities_B(joint, bob_obs);

        const DensityMatrix reduced =
            partial_trace(density_from_state(joint), 1, 2).renormalized();
        CHECK(std::abs(direct[0].probability - reduced.matrix()(0, 0).real()) <=
              1e-12);
        CHECK(std::abs(direct[1].probability - reduced.matrix()(1, 1).real()) <=
              1e-12);
    }
}

TEST_CASE("register validation") {
    CHECK_THROWS_AS(QubitRegister(2, RawState(V({1.0, 0.0})), {"A", "B"}),
                    InvalidInputError);
    CHECK_THROWS_AS(QubitRegister(1, RawState(V({1.0, 0.0})), {"A", "B"}),
                    InvalidInputError);
    CHECK_THROWS_AS(QubitRegister(0, RawState(V({1.0})), {}), InvalidInputError);
}
