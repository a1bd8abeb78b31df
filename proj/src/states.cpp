#include "qsim/states.hpp"

#include <cmath>
#include <string>

namespace qsim {

RawState::RawState(ComplexVector vec) : vec_(std::move(vec)) {
    if (norm(vec_) == 0.0) {
        throw InvalidInputError("RawState: the zero vector is not a state");
    }
}

UnitState::UnitState(ComplexVector vec) : vec_(std::move(vec)) {
    const double n = norm(vec_);
    if (std::abs(n - 1.0) > tol::kUnitNorm) {
        throw InvalidInputError("UnitState: |norm - 1| = " +
                                std::to_string(std::abs(n - 1.0)) +
                                " exceeds " + std::to_string(tol::kUnitNorm));
    }
}

UnitState normalize(const RawState& s) {
    const double n = norm(s.vec());
    return UnitState(ComplexScalar{1.0 / n, 0.0} * s.vec());
}

CanonicalRay canonicalize(const RawState& s, double phase_tol) {
    if (phase_tol <= 0.0) {
        throw InvalidInputError("canonicalize: phase_tol must be positive");
    }
    const UnitState u = normalize(s);
    const ComplexVector& v = u.vec();

    // Gauge entry: first one whose modulus is significant after
    // normalization.  A unit vector always has one as long as
    // dim < 1/phase_tol^2.
    for (std::size_t i = 0; i < v.dim(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > phase_tol) {
            const ComplexScalar rotate = std::conj(v[i]) / mag;
            return CanonicalRay(rotate * v);
        }
    }
    throw InvalidInputError(
        "canonicalize: no entry exceeds phase_tol; gauge cannot be fixed");
}

bool equivalent_A(const UnitState& u, const UnitState& v, double tolerance) {
    if (u.dim() != v.dim()) {
        throw InvalidInputError("equivalent_A: dimension mismatch");
    }
    if (tolerance < 0.0) {
        throw InvalidInputError("equivalent_A: tolerance must be nonnegative");
    }
    // min_theta ||u - e^{i theta} v||^2 = 2 - 2|<u|v>|.
    const double overlap = std::abs(inner_product(u.vec(), v.vec()));
    return 1.0 - overlap <= 0.5 * tolerance * tolerance;
}

bool equivalent_B(const RawState& s, const RawState& t, double tolerance) {
    if (s.dim() != t.dim()) {
        throw InvalidInputError("equivalent_B: dimension mismatch");
    }
    if (tolerance < 0.0) {
        throw InvalidInputError("equivalent_B: tolerance must be nonnegative");
    }
    const CanonicalRay cs = canonicalize(s);
    const CanonicalRay ct = canonicalize(t);
    return norm(cs.vec() - ct.vec()) <= tolerance;
}

}  // namespace qsim
