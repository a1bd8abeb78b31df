#include "qsim/evolution.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qsim {

namespace {

void require_dim(const EvolutionOperator& u, std::size_t dim, const char* what) {
    if (u.dim() != dim) {
        throw InvalidInputError(std::string(what) + ": operator dimension " +
                                std::to_string(u.dim()) +
                                " does not match state dimension " +
                                std::to_string(dim));
    }
}

void reject_singular(const EvolutionOperator& u, const char* what) {
    if (u.op_class().kind == OperatorKind::Singular) {
        throw InadmissibleOperatorError(
            std::string(what) + ": Singular operator '" + u.label() +
            "' maps nonzero states to zero and is not a valid time evolution");
    }
}

}  // namespace

EvolutionOperator::EvolutionOperator(ComplexMatrix matrix, double tolerance,
                                     std::string label)
    : matrix_(std::move(matrix)), tolerance_(tolerance), label_(std::move(label)) {
    if (!matrix_.is_square()) {
        throw InvalidInputError("EvolutionOperator: matrix must be square");
    }
    class_ = classify_operator(matrix_, tolerance_);
}

// ============================================================================
// Engines
// ============================================================================

UnitState evolve_unitary(const UnitState& state, const EvolutionOperator& u) {
    require_dim(u, state.dim(), "evolve_unitary");
    if (u.op_class().kind != OperatorKind::Unitary) {
        throw InadmissibleOperatorError(
            "evolve_unitary: operator class is " + to_string(u.op_class().kind) +
            "; the standard engine accepts only Unitary operators");
    }
    const ComplexVector evolved = apply(u.matrix(), state.vec());
    const double n = norm(evolved);
    if (std::abs(n - 1.0) > tol::kNormPreservation) {
        throw NumericContractError(
            "evolve_unitary: norm drifted to " + std::to_string(n) +
            " under an operator classified Unitary");
    }
    // Scrub the sub-1e-10 roundoff so the result honors the unit invariant.
    return UnitState(ComplexScalar{1.0 / n, 0.0} * evolved);
}

RawState evolve_unitary(const RawState& state, const EvolutionOperator& u) {
    require_dim(u, state.dim(), "evolve_unitary");
    if (u.op_class().kind != OperatorKind::Unitary) {
        throw InadmissibleOperatorError(
            "evolve_unitary: operator class is " + to_string(u.op_class().kind) +
            "; the standard engine accepts only Unitary operators");
    }
    const ComplexVector evolved = apply(u.matrix(), state.vec());
    const double before = norm(state.vec());
    const double after = norm(evolved);
    if (std::abs(after / before - 1.0) > tol::kNormPreservation) {
        throw NumericContractError(
            "evolve_unitary: relative norm drifted by " +
            std::to_string(std::abs(after / before - 1.0)) +
            " under an operator classified Unitary");
    }
    return RawState(evolved);
}

RawState evolve_linear_B(const RawState& state, const EvolutionOperator& u) {
    require_dim(u, state.dim(), "evolve_linear_B");
    reject_singular(u, "evolve_linear_B");
    RawState out(apply(u.matrix(), state.vec()));  // RawState rejects zero
    return out;
}

UnitState evolve_manual_norm_A(const UnitState& u_state, const EvolutionOperator& u) {
    require_dim(u, u_state.dim(), "evolve_manual_norm_A");
    reject_singular(u, "evolve_manual_norm_A");
    return normalize(RawState(apply(u.matrix(), u_state.vec())));
}

// ============================================================================
// Nonlinearity of manual normalization
// ============================================================================

double linearity_defect(const EvolutionOperator& u, const UnitState& psi1,
                        const UnitState& psi2, ComplexScalar a, ComplexScalar b) {
    if (psi1.dim() != psi2.dim()) {
        throw InvalidInputError("linearity_defect: state dimension mismatch");
    }
    require_dim(u, psi1.dim(), "linearity_defect");
    reject_singular(u, "linearity_defect");

    const ComplexVector superposition = a * psi1.vec() + b * psi2.vec();
    if (norm(superposition) <= 1e-12) {
        throw InvalidInputError(
            "linearity_defect: a*psi1 + b*psi2 is numerically the zero vector");
    }

    const UnitState actual =
        evolve_manual_norm_A(normalize(RawState(superposition)), u);

    const UnitState image1 = evolve_manual_norm_A(psi1, u);
    const UnitState image2 = evolve_manual_norm_A(psi2, u);
    const ComplexVector linear_guess = a * image1.vec() + b * image2.vec();
    if (norm(linear_guess) <= 1e-12) {
        throw InvalidInputError(
            "linearity_defect: superposition of images is numerically zero");
    }
    const UnitState predicted = normalize(RawState(linear_guess));

    return norm(actual.vec() - predicted.vec());
}

// ============================================================================
// Theorem laboratory
// ============================================================================

TheoremReport theorem1_lab(const EvolutionOperator& u, int n_samples,
                           std::uint64_t seed) {
    if (n_samples < 1) {
        throw InvalidInputError("theorem1_lab: n_samples must be positive");
    }
    const std::size_t n = u.dim();
    TheoremReport report;
    report.operator_class = u.op_class();

    const ComplexMatrix gram = adjoint(u.matrix()) * u.matrix();
    report.gram_residual = frobenius_norm(gram - ComplexMatrix::identity(n));

    SplitMix64 rng = substream(seed, 0);
    ComplexVector previous(1, ComplexScalar{0.0, 0.0});
    bool have_previous = false;
    for (int i = 0; i < n_samples; ++i) {
        const ComplexVector psi = random_unit_vector(n, rng);
        const double deviation = std::abs(norm(apply(u.matrix(), psi)) - 1.0);
        report.max_unit_norm_deviation =
            std::max(report.max_unit_norm_deviation, deviation);

        // Disjoint consecutive pairs feed the polarization check.
        if (have_previous) {
            const ComplexScalar reconstructed =
                polarization_reconstruct(u.matrix(), previous, psi);
            const ComplexScalar direct =
                inner_product(apply(u.matrix(), previous), apply(u.matrix(), psi));
            report.polarization_residual = std::max(
                report.polarization_residual, std::abs(reconstructed - direct));
            have_previous = false;
        } else {
            previous = psi;
            have_previous = true;
        }
    }

    if (report.gram_residual > u.tolerance()) {
        // Analytic witness: eigenvector of U†U whose singular value is
        // farthest from 1.  No sampled vector can deviate more.
        EigenDecomposition eig = hermitian_eigendecomposition(
            gram, 1e-6 * std::max(1.0, frobenius_norm(gram)));
        std::size_t worst = 0;
        double worst_dist = -1.0;
        for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
            const double sigma = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
            const double dist = std::abs(sigma - 1.0);
            if (dist > worst_dist) {
                worst_dist = dist;
                worst = k;
            }
        }
        report.witness = eig.eigenvectors[worst];
    }
    return report;
}

}  // namespace qsim
