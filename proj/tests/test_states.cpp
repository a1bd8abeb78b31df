#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsim/states.hpp"
#include "test_helpers.hpp"

using namespace qsim;
using namespace qsim::test;

namespace {

ComplexScalar phase_of(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

RawState random_raw(std::size_t dim, SplitMix64& rng) {
    return RawState(random_complex_gaussian_vector(dim, rng));
}

}  // namespace

TEST_CASE("normalize: scaling, idempotence, zero rejection") {
    const UnitState u = normalize(RawState(V({3.0, 4.0 * kI})));
    CHECK(dist(u.vec(), V({0.6, 0.8 * kI})) < 1e-15);

    const UnitState again = normalize(u.raw());
    CHECK(dist(again.vec(), u.vec()) < 1e-15);

    // The zero vector is excluded at the type boundary.
    CHECK_THROWS_AS(RawState(V({0.0, 0.0})), InvalidInputError);
}

TEST_CASE("normalize: unit outputs stay within 1e-12 of unit norm") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 1 + (rng.next_u64() % 10);
        const UnitState u = normalize(random_raw(dim, rng));
        CHECK(std::abs(norm(u.vec()) - 1.0) <= 1e-12);
    }
}

TEST_CASE("canonicalize: gauge fixing") {
    SUBCASE("(0, 2i) -> (0, 1)") {
        const CanonicalRay ray = canonicalize(RawState(V({0.0, 2.0 * kI})));
        CHECK(dist(ray.vec(), V({0.0, 1.0})) < 1e-15);
    }
    SUBCASE("phase multiples collapse to one representative") {
        const RawState s(V({{0.4, -0.3}, {1.2, 0.8}, {-0.5, 0.1}}));
        const CanonicalRay base = canonicalize(s);
        for (double theta : {0.1, 2.5, 3.14159265358979}) {
            const CanonicalRay rotated =
                canonicalize(RawState(phase_of(theta) * s.vec()));
            CHECK(dist(rotated.vec(), base.vec()) < 1e-14);
        }
    }
    SUBCASE("entries below phase_tol never fix the gauge") {
        // First entry is numerically negligible; the second carries the phase.
        const RawState s(V({{1e-30, 0.0}, {0.0, 1.0}}));
        const CanonicalRay ray = canonicalize(s);
        // Oracle: multiply by conj(i)/|i| = -i explicitly.
        const ComplexVector expected = ComplexScalar{0.0, -1.0} * s.vec();
        CHECK(dist(ray.vec(), ComplexScalar{1.0, 0.0} * expected) < 1e-15);
        CHECK(ray.vec()[1].real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(ray.vec()[1].imag()) < 1e-15);
        CHECK(std::abs(ray.vec()[0]) < 1e-20);
    }
}

TEST_CASE("canonicalize: unique representative under any nonzero rescaling") {
    SplitMix64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        const RawState s = random_raw(1 + (rng.next_u64() % 6), rng);
        const CanonicalRay base = canonicalize(s);
        for (int k = 0; k < 100; ++k) {
            // Log-uniform magnitude over several decades, uniform phase.
            const double mag = std::exp((rng.next_unit() - 0.5) * 12.0);
            const ComplexScalar z = mag * phase_of(rng.next_unit() * 6.28318);
            const CanonicalRay scaled = canonicalize(RawState(z * s.vec()));
            CHECK(dist(scaled.vec(), base.vec()) <= 1e-12);
        }
    }
}

TEST_CASE("equivalent_A: phase equivalence of unit vectors") {
    SplitMix64 rng(111);
    const UnitState u = normalize(random_raw(4, rng));

    CHECK(equivalent_A(u, UnitState(phase_of(1.3) * u.vec()), 1e-6));
    CHECK_FALSE(equivalent_A(UnitState(V({1.0, 0.0})), UnitState(V({0.0, 1.0})),
                             1e-6));

    // 0.99 u + 0.141 u_perp, renormalized: overlap 0.99ish, far beyond 1e-6.
    const UnitState e1 = UnitState(V({1.0, 0.0}));
    const UnitState mixed = normalize(RawState(V({0.99, 0.141})));
    const double overlap = std::abs(inner_product(e1.vec(), mixed.vec()));
    REQUIRE(1.0 - overlap > 0.5 * 1e-6 * 1e-6);  // closed-form oracle
    CHECK_FALSE(equivalent_A(e1, mixed, 1e-6));

    CHECK_THROWS_AS(equivalent_A(e1, normalize(random_raw(3, rng)), 1e-6),
                    InvalidInputError);
}

TEST_CASE("equivalent_B: ray equivalence of raw vectors") {
    SplitMix64 rng(222);
    const RawState s = random_raw(3, rng);

    CHECK(equivalent_B(s, RawState(ComplexScalar{2.0, -3.0} * s.vec()), 1e-9));
    CHECK_FALSE(equivalent_B(RawState(V({1.0, 0.0})), RawState(V({1.0, 1e-3})), 1e-6));

    const ComplexScalar z = phase_of(0.77) * ComplexScalar{1.0 / 7.0, 0.0};
    CHECK(equivalent_B(s, RawState(z * s.vec()), 1e-9));
}

TEST_CASE("phase equivalence is a special case of ray equivalence") {
    SplitMix64 rng(333);
    for (int trial = 0; trial < 50; ++trial) {
        const UnitState u = normalize(random_raw(4, rng));
        const UnitState v = UnitState(phase_of(rng.next_unit() * 6.28) * u.vec());
        // For unit inputs the two notions agree in both directions.
        CHECK(equivalent_A(u, v, 1e-6));
        CHECK(equivalent_B(u.raw(), v.raw(), 1e-6));

        const UnitState w = normalize(random_raw(4, rng));
        CHECK(equivalent_A(u, w, 1e-6) == equivalent_B(u.raw(), w.raw(), 1e-6));
    }
}

TEST_CASE("unit state construction rejects non-unit vectors") {
    CHECK_THROWS_AS(UnitState(V({1.0, 1.0})), InvalidInputError);
    CHECK_THROWS_AS(UnitState(V({0.0, 0.0})), InvalidInputError);
}
