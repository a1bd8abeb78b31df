#ifndef QSIM_STATES_HPP
#define QSIM_STATES_HPP

#include "qsim/linalg.hpp"
#include "qsim/tolerances.hpp"

namespace qsim {

// The three state representations:
//   RawState      any nonzero vector (formulation B),
//   UnitState     a unit vector (formulation A),
//   CanonicalRay  the unique representative of an equivalence class under
//                 multiplication by a nonzero complex scalar.

class RawState {
public:
    explicit RawState(ComplexVector vec);

    const ComplexVector& vec() const { return vec_; }
    std::size_t dim() const { return vec_.dim(); }

private:
    ComplexVector vec_;
};

class UnitState {
public:
    explicit UnitState(ComplexVector vec);

    const ComplexVector& vec() const { return vec_; }
    std::size_t dim() const { return vec_.dim(); }

    RawState raw() const { return RawState(vec_); }

private:
    ComplexVector vec_;
};

class CanonicalRay {
public:
    const ComplexVector& vec() const { return vec_; }
    std::size_t dim() const { return vec_.dim(); }

private:
    friend CanonicalRay canonicalize(const RawState&, double);
    explicit CanonicalRay(ComplexVector vec) : vec_(std::move(vec)) {}
    ComplexVector vec_;
};

// s.vec / norm(s.vec).
UnitState normalize(const RawState& s);

// Unique ray representative: unit norm, and the first entry whose modulus
// exceeds phase_tol made real and strictly positive.
CanonicalRay canonicalize(const RawState& s, double phase_tol = tol::kPhase);

// Phase equivalence (formulation A): true iff min over theta of
// ||u - e^{i theta} v|| <= tol, evaluated in closed form through |<u|v>|.
bool equivalent_A(const UnitState& u, const UnitState& v, double tolerance);

// Ray equivalence (formulation B): canonical representatives within tol.
bool equivalent_B(const RawState& s, const RawState& t, double tolerance);

}  // namespace qsim

#endif  // QSIM_STATES_HPP
