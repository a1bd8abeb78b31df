#ifndef QSIM_EVOLUTION_HPP
#define QSIM_EVOLUTION_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "qsim/linalg.hpp"
#include "qsim/states.hpp"
#include "qsim/tolerances.hpp"

namespace qsim {

// A square matrix with its admissibility class computed at construction.
// Singular operators are representable (the classification taxonomy needs
// them) but every evolution engine rejects them.
class EvolutionOperator {
public:
    explicit EvolutionOperator(ComplexMatrix matrix, double tolerance = tol::kClassify,
                               std::string label = "");

    const ComplexMatrix& matrix() const { return matrix_; }
    const OperatorClass& op_class() const { return class_; }
    const std::string& label() const { return label_; }
    std::size_t dim() const { return matrix_.rows(); }
    double tolerance() const { return tolerance_; }

private:
    ComplexMatrix matrix_;
    double tolerance_;
    OperatorClass class_;
    std::string label_;
};

// Numerical laboratory record for the norm-preservation theorem: sampled
// norm deviations, the Gram residual ||U†U - I||_F, the polarization
// reconstruction residual, and (when the operator is not unitary at
// tolerance) an analytic worst-case unit vector.
struct TheoremReport {
    OperatorClass operator_class;
    double max_unit_norm_deviation = 0.0;
    std::optional<ComplexVector> witness;
    double polarization_residual = 0.0;
    double gram_residual = 0.0;
};

// Standard engine (axiom set A/B): requires a Unitary-class operator and
// verifies norm preservation on the way out.
UnitState evolve_unitary(const UnitState& state, const EvolutionOperator& u);
RawState evolve_unitary(const RawState& state, const EvolutionOperator& u);

// General linear engine (axiom set B'): any invertible operator; the result
// is deliberately not renormalized, so norms may drift over time.
RawState evolve_linear_B(const RawState& state, const EvolutionOperator& u);

// Manual-normalization engine (axiom set B' seen from formulation A):
// U|psi> rescaled back to the unit sphere.
UnitState evolve_manual_norm_A(const UnitState& u_state, const EvolutionOperator& u);

// How far the manual-normalization map is from acting linearly on the
// superposition a*psi1 + b*psi2: the distance between the image of the
// normalized superposition and the normalized superposition of the images
// taken with the original weights.  Zero (to roundoff) exactly when
// U†U is proportional to the identity.
double linearity_defect(const EvolutionOperator& u, const UnitState& psi1,
                        const UnitState& psi2, ComplexScalar a, ComplexScalar b);

// Norm-preservation experiment: samples random unit vectors, reconstructs
// inner products through the polarization identity, and when U is not
// unitary finds the analytic witness (the eigenvector of U†U whose singular
// value lies farthest from 1, which maximizes |  ||U psi|| - 1  | over unit
// vectors).
TheoremReport theorem1_lab(const EvolutionOperator& u, int n_samples,
                           std::uint64_t seed);

}  // namespace qsim

#endif  // QSIM_EVOLUTION_HPP
