#ifndef QSIM_MEASUREMENT_HPP
#define QSIM_MEASUREMENT_HPP

#include <cstdint>
#include <vector>

#include "qsim/linalg.hpp"
#include "qsim/states.hpp"
#include "qsim/tolerances.hpp"

namespace qsim {

// One eigenspace of an observable: representative eigenvalue, orthogonal
// projector, and the orthonormal basis the projector was built from.
struct Eigenspace {
    double eigenvalue;
    ComplexMatrix projector;
    std::vector<ComplexVector> basis;
};

// Hermitian operator with its eigendecomposition grouped into eigenspaces.
// Immutable after construction.
class Observable {
public:
    Observable(ComplexMatrix hermitian, double degeneracy_tol = tol::kDegeneracy);

    const ComplexMatrix& matrix() const { return matrix_; }
    const std::vector<Eigenspace>& eigenspaces() const { return eigenspaces_; }
    double degeneracy_tol() const { return degeneracy_tol_; }
    std::size_t dim() const { return matrix_.rows(); }

private:
    ComplexMatrix matrix_;
    double degeneracy_tol_;
    std::vector<Eigenspace> eigenspaces_;
};

inline Observable make_observable(const ComplexMatrix& hermitian,
                                  double degeneracy_tol = tol::kDegeneracy) {
    return Observable(hermitian, degeneracy_tol);
}

struct Outcome {
    double eigenvalue;
    double probability;
};

// Validated at construction: probabilities in [0,1], summing to 1.
class OutcomeDistribution {
public:
    explicit OutcomeDistribution(std::vector<Outcome> outcomes);

    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    std::size_t size() const { return outcomes_.size(); }
    const Outcome& operator[](std::size_t i) const { return outcomes_[i]; }

private:
    std::vector<Outcome> outcomes_;
};

template <typename StateT>
struct MeasurementRecord {
    double observed_eigenvalue;
    StateT post_state;
    std::uint64_t rng_seed_used;
};

// Born rule, formulation A: P(lambda) = <u|P_lambda|u> on a unit state.
OutcomeDistribution born_probabilities_A(const UnitState& u, const Observable& obs);

// Born rule, formulation B: P(lambda) = <s|P_lambda|s> / <s|s>; invariant
// under rescaling of s by any nonzero complex number.
OutcomeDistribution born_probabilities_B(const RawState& s, const Observable& obs);

// Project onto the eigenspace of `eigenvalue`.  Unit states are
// renormalized; raw states keep the bare projected vector.
UnitState collapse(const UnitState& state, const Observable& obs, double eigenvalue);
RawState collapse(const RawState& state, const Observable& obs, double eigenvalue);

// Inverse-CDF draw over the outcome distribution in ascending-eigenvalue
// order, then collapse.  Deterministic given the seed.
MeasurementRecord<UnitState> sample_measurement(const UnitState& state,
                                                const Observable& obs,
                                                std::uint64_t rng_seed);
MeasurementRecord<RawState> sample_measurement(const RawState& state,
                                               const Observable& obs,
                                               std::uint64_t rng_seed);

}  // namespace qsim

#endif  // QSIM_MEASUREMENT_HPP
