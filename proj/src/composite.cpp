#include "qsim/composite.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qsim/tolerances.hpp"

namespace qsim {

namespace {

void require_qubit_count(int n_qubits, const char* what) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InvalidInputError(std::string(what) + ": n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
    }
}

void require_site(int site, int n_qubits, const char* what) {
    if (site < 0 || site >= n_qubits) {
        throw InvalidInputError(std::string(what) + ": site " + std::to_string(site) +
                                " out of range for " + std::to_string(n_qubits) +
                                " qubits");
    }
}

}  // namespace

// ============================================================================
// QubitRegister
// ============================================================================

QubitRegister::QubitRegister(int n_qubits, RawState state,
                             std::vector<std::string> sites)
    : n_qubits_(n_qubits), state_(std::move(state)), sites_(std::move(sites)) {
    require_qubit_count(n_qubits_, "QubitRegister");
    const std::size_t expected = std::size_t{1} << n_qubits_;
    if (state_.dim() != expected) {
        throw InvalidInputError("QubitRegister: state dimension " +
                                std::to_string(state_.dim()) + " is not 2^" +
                                std::to_string(n_qubits_));
    }
    if (sites_.size() != static_cast<std::size_t>(n_qubits_)) {
        throw InvalidInputError("QubitRegister: need one site label per qubit");
    }
}

// ============================================================================
// DensityMatrix
// ============================================================================

DensityMatrix::DensityMatrix(ComplexMatrix matrix, bool normalized)
    : matrix_(std::move(matrix)), normalized_(normalized) {
    if (!matrix_.is_square()) {
        throw InvalidInputError("DensityMatrix: matrix must be square");
    }
    const double scale = std::max(1.0, frobenius_norm(matrix_));
    if (frobenius_norm(matrix_ - adjoint(matrix_)) > 1e-10 * scale) {
        throw InvalidInputError("DensityMatrix: matrix is not Hermitian");
    }
    const double tr = trace(matrix_).real();
    if (normalized_ && std::abs(tr - 1.0) > 1e-10) {
        throw InvalidInputError("DensityMatrix: trace " + std::to_string(tr) +
                                " is not 1 for a normalized density matrix");
    }
    // Positivity check by eigendecomposition; skipped for large dimensions
    // where the dense Jacobi solve would dominate, since those matrices only
    // arise from construction paths that preserve positivity.
    if (matrix_.rows() <= 64) {
        EigenDecomposition eig = hermitian_eigendecomposition(
            matrix_, 1e-6 * std::max(1.0, frobenius_norm(matrix_)));
        if (eig.eigenvalues.front() < -1e-10 * scale) {
            throw InvalidInputError(
                "DensityMatrix: negative eigenvalue " +
                std::to_string(eig.eigenvalues.front()));
        }
    }
}

DensityMatrix DensityMatrix::renormalized() const {
    const double tr = trace(matrix_).real();
    if (tr <= 0.0) {
        throw InvalidInputError("DensityMatrix::renormalized: trace is not positive");
    }
    return DensityMatrix(ComplexScalar{1.0 / tr, 0.0} * matrix_, true);
}

// ============================================================================
// Tensor construction
// ============================================================================

RawState tensor_states(const RawState& a, const RawState& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    std::vector<ComplexScalar> out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            out[i * nb + j] = a.vec()[i] * b.vec()[j];
        }
    }
    return RawState(ComplexVector(std::move(out)));
}

ComplexMatrix tensor_ops(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const ComplexScalar aij = a(i, j);
            if (aij == ComplexScalar{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

QubitRegister bell_state() {
    std::vector<ComplexScalar> amplitudes(4, ComplexScalar{0.0, 0.0});
    amplitudes[0] = 1.0;  // |00>
    amplitudes[3] = 1.0;  // |11>
    return QubitRegister(2, RawState(ComplexVector(std::move(amplitudes))),
                         {"A", "B"});
}

ComplexMatrix embed_local(const ComplexMatrix& op, int site, int n_qubits) {
    require_qubit_count(n_qubits, "embed_local");
    require_site(site, n_qubits, "embed_local");
    if (op.rows() != 2 || op.cols() != 2) {
        throw InvalidInputError("embed_local: operator must be 2x2, got " +
                                std::to_string(op.rows()) + "x" +
                                std::to_string(op.cols()));
    }
    ComplexMatrix out = (site == 0) ? op : ComplexMatrix::identity(2);
    for (int k = 1; k < n_qubits; ++k) {
        out = tensor_ops(out, (k == site) ? op : ComplexMatrix::identity(2));
    }
    return out;
}

// ============================================================================
// Density matrices and partial trace
// ============================================================================

namespace {

DensityMatrix outer_product_density(const RawState& s, bool rescale) {
    const std::size_t n = s.dim();
    const double total = inner_product(s.vec(), s.vec()).real();
    const double weight = rescale ? 1.0 / total : 1.0;
    ComplexMatrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            rho(i, j) = weight * s.vec()[i] * std::conj(s.vec()[j]);
        }
    }
    const bool normalized = rescale || std::abs(total - 1.0) <= 1e-10;
    return DensityMatrix(std::move(rho), normalized);
}

}  // namespace

DensityMatrix density_from_state(const RawState& s) {
    return outer_product_density(s, true);
}

DensityMatrix density_from_state_unnormalized(const RawState& s) {
    return outer_product_density(s, false);
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep, int n_qubits) {
    require_qubit_count(n_qubits, "partial_trace");
    require_site(keep, n_qubits, "partial_trace");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (rho.dim() != dim) {
        throw InvalidInputError("partial_trace: density dimension " +
                                std::to_string(rho.dim()) + " is not 2^" +
                                std::to_string(n_qubits));
    }

    // Site `keep` owns bit (n_qubits - 1 - keep); enumerate the other bits.
    const int bit = n_qubits - 1 - keep;
    const std::size_t kept_mask = std::size_t{1} << bit;
    ComplexMatrix reduced(2, 2);
    for (std::size_t rest = 0; rest < dim; ++rest) {
        if (rest & kept_mask) continue;  // iterate with the kept bit cleared
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                const std::size_t row = rest | (i << bit);
                const std::size_t col = rest | (j << bit);
                reduced(i, j) += rho.matrix()(row, col);
            }
        }
    }
    return DensityMatrix(std::move(reduced), rho.normalized());
}

}  // namespace qsim
