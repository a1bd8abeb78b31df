#include "qsim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qsim/rng.hpp"

namespace qsim {

namespace {

// Rank-deficient outer-product sum P = sum_k |v_k><v_k|.
ComplexMatrix projector_from_basis(const std::vector<ComplexVector>& basis,
                                   std::size_t dim) {
    ComplexMatrix p(dim, dim);
    for (const auto& v : basis) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                p(i, j) += v[i] * std::conj(v[j]);
            }
        }
    }
    return p;
}

// Probability mass of `s` in the eigenspace, as sum_k |<v_k|s>|^2.  Using
// the basis instead of the projector keeps the result nonnegative by
// construction.
double eigenspace_weight(const Eigenspace& space, const ComplexVector& s) {
    double w = 0.0;
    for (const auto& v : space.basis) w += std::norm(inner_product(v, s));
    return w;
}

const Eigenspace& find_eigenspace(const Observable& obs, double eigenvalue) {
    const auto& spaces = obs.eigenspaces();
    std::size_t best = 0;
    double best_dist = std::abs(spaces[0].eigenvalue - eigenvalue);
    for (std::size_t i = 1; i < spaces.size(); ++i) {
        const double d = std::abs(spaces[i].eigenvalue - eigenvalue);
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }
    const double scale = std::max(1.0, std::abs(spaces[best].eigenvalue));
    if (best_dist > 1e-9 * scale) {
        throw InvalidInputError("collapse: eigenvalue " + std::to_string(eigenvalue) +
                                " does not belong to the observable");
    }
    return spaces[best];
}

void require_dim(const Observable& obs, std::size_t dim, const char* what) {
    if (obs.dim() != dim) {
        throw InvalidInputError(std::string(what) + ": state dimension " +
                                std::to_string(dim) +
                                " does not match observable dimension " +
                                std::to_string(obs.dim()));
    }
}

}  // namespace

// ============================================================================
// Observable
// ============================================================================

Observable::Observable(ComplexMatrix hermitian, double degeneracy_tol)
    : matrix_(std::move(hermitian)), degeneracy_tol_(degeneracy_tol) {
    if (degeneracy_tol_ <= 0.0) {
        throw InvalidInputError("Observable: degeneracy_tol must be positive");
    }
    // Throws InvalidInputError when the matrix is not Hermitian.
    EigenDecomposition eig = hermitian_eigendecomposition(matrix_, tol::kHermitian);

    const std::size_t n = matrix_.rows();
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        // Chain grouping: extend while the next eigenvalue sits within the
        // relative degeneracy window of the previous one.
        while (end < n) {
            const double gap = eig.eigenvalues[end] - eig.eigenvalues[end - 1];
            const double scale = std::max(1.0, std::abs(eig.eigenvalues[end]));
            if (gap > degeneracy_tol_ * scale) break;
            ++end;
        }
        double mean = 0.0;
        std::vector<ComplexVector> basis;
        basis.reserve(end - start);
        for (std::size_t k = start; k < end; ++k) {
            mean += eig.eigenvalues[k];
            basis.push_back(eig.eigenvectors[k]);
        }
        mean /= static_cast<double>(end - start);
        eigenspaces_.push_back(
            Eigenspace{mean, projector_from_basis(basis, n), std::move(basis)});
        start = end;
    }
}

// ============================================================================
// OutcomeDistribution
// ============================================================================

OutcomeDistribution::OutcomeDistribution(std::vector<Outcome> outcomes)
    : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        throw InvalidInputError("OutcomeDistribution: no outcomes");
    }
    double sum = 0.0;
    for (auto& o : outcomes_) {
        if (o.probability < -1e-12 || o.probability > 1.0 + 1e-12) {
            throw NumericContractError("OutcomeDistribution: probability " +
                                       std::to_string(o.probability) +
                                       " outside [0, 1]");
        }
        o.probability = std::clamp(o.probability, 0.0, 1.0);
        sum += o.probability;
    }
    if (std::abs(sum - 1.0) > tol::kProbabilitySum) {
        throw NumericContractError("OutcomeDistribution: probabilities sum to " +
                                   std::to_string(sum) + ", not 1");
    }
}

// ============================================================================
// Born rules
// ============================================================================

OutcomeDistribution born_probabilities_A(const UnitState& u, const Observable& obs) {
    require_dim(obs, u.dim(), "born_probabilities_A");
    std::vector<Outcome> outcomes;
    outcomes.reserve(obs.eigenspaces().size());
    for (const auto& space : obs.eigenspaces()) {
        outcomes.push_back(Outcome{space.eigenvalue, eigenspace_weight(space, u.vec())});
    }
    return OutcomeDistribution(std::move(outcomes));
}

OutcomeDistribution born_probabilities_B(const RawState& s, const Observable& obs) {
    require_dim(obs, s.dim(), "born_probabilities_B");
    const double total = inner_product(s.vec(), s.vec()).real();
    std::vector<Outcome> outcomes;
    outcomes.reserve(obs.eigenspaces().size());
    for (const auto& space : obs.eigenspaces()) {
        outcomes.push_back(
            Outcome{space.eigenvalue, eigenspace_weight(space, s.vec()) / total});
    }
    return OutcomeDistribution(std::move(outcomes));
}

// ============================================================================
// Collapse
// ============================================================================

UnitState collapse(const UnitState& state, const Observable& obs, double eigenvalue) {
    require_dim(obs, state.dim(), "collapse");
    const Eigenspace& space = find_eigenspace(obs, eigenvalue);
    const ComplexVector projected = apply(space.projector, state.vec());
    const double n = norm(projected);
    if (n * n <= tol::kCollapse) {
        throw InvalidInputError(
            "collapse: projection annihilates the state (zero-probability outcome)");
    }
    return UnitState(ComplexScalar{1.0 / n, 0.0} * projected);
}

RawState collapse(const RawState& state, const Observable& obs, double eigenvalue) {
    require_dim(obs, state.dim(), "collapse");
    const Eigenspace& space = find_eigenspace(obs, eigenvalue);
    const ComplexVector projected = apply(space.projector, state.vec());
    const double n = norm(projected);
    const double input_n = norm(state.vec());
    if ((n * n) / (input_n * input_n) <= tol::kCollapse) {
        throw InvalidInputError(
            "collapse: projection annihilates the state (zero-probability outcome)");
    }
    return RawState(projected);
}

// ============================================================================
// Sampling
// ============================================================================

namespace {

double draw_eigenvalue(const OutcomeDistribution& dist, std::uint64_t rng_seed) {
    SplitMix64 rng(rng_seed);
    const double u = rng.next_unit();
    double cumulative = 0.0;
    for (const auto& outcome : dist.outcomes()) {
        cumulative += outcome.probability;
        if (u < cumulative) return outcome.eigenvalue;
    }
    // u landed in the roundoff sliver past the last cumulative step.
    return dist.outcomes().back().eigenvalue;
}

}  // namespace

MeasurementRecord<UnitState> sample_measurement(const UnitState& state,
                                                const Observable& obs,
                                                std::uint64_t rng_seed) {
    const OutcomeDistribution dist = born_probabilities_A(state, obs);
    const double lambda = draw_eigenvalue(dist, rng_seed);
    return MeasurementRecord<UnitState>{lambda, collapse(state, obs, lambda), rng_seed};
}

MeasurementRecord<RawState> sample_measurement(const RawState& state,
                                               const Observable& obs,
                                               std::uint64_t rng_seed) {
    const OutcomeDistribution dist = born_probabilities_B(state, obs);
    const double lambda = draw_eigenvalue(dist, rng_seed);
    return MeasurementRecord<RawState>{lambda, collapse(state, obs, lambda), rng_seed};
}

}  // namespace qsim
