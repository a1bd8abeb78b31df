#ifndef QSIM_LINALG_HPP
#define QSIM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qsim/errors.hpp"
#include "qsim/rng.hpp"
#include "qsim/tolerances.hpp"

namespace qsim {

using ComplexScalar = std::complex<double>;

// ============================================================================
// Dense complex vector / matrix
// ============================================================================

// Immutable after construction by convention: operations return new values.
// Constructors reject NaN/inf entries outright; nothing downstream ever has
// to re-check finiteness.
class ComplexVector {
public:
    explicit ComplexVector(std::vector<ComplexScalar> entries);
    ComplexVector(std::size_t dim, ComplexScalar fill);

    std::size_t dim() const { return entries_.size(); }
    const ComplexScalar& operator[](std::size_t i) const { return entries_[i]; }
    ComplexScalar& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<ComplexScalar>& entries() const { return entries_; }

    ComplexVector operator+(const ComplexVector& rhs) const;
    ComplexVector operator-(const ComplexVector& rhs) const;

private:
    std::vector<ComplexScalar> entries_;
};

ComplexVector operator*(const ComplexScalar& z, const ComplexVector& v);

// Row-major dense storage.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols,
                  std::vector<ComplexScalar> entries);
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<ComplexScalar>& diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const ComplexScalar& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    ComplexScalar& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }
    const std::vector<ComplexScalar>& entries() const { return entries_; }

    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<ComplexScalar> entries_;
};

ComplexMatrix operator*(const ComplexScalar& z, const ComplexMatrix& m);

// ============================================================================
// Operator classification
// ============================================================================

enum class OperatorKind {
    Unitary,
    ProportionalUnitary,
    GeneralInvertible,
    Singular,
};

// For ProportionalUnitary the scale is stored with its phase gauge-fixed to
// zero (real positive |c|); the phase of the proportionality constant is not
// separable from the global phase of the unitary factor.
struct OperatorClass {
    OperatorKind kind = OperatorKind::Singular;
    ComplexScalar scale = {1.0, 0.0};
};

std::string to_string(OperatorKind kind);

// ============================================================================
// Core operations
// ============================================================================

// <a|b>: conjugate-linear in the first argument, linear in the second.
ComplexScalar inner_product(const ComplexVector& a, const ComplexVector& b);

// sqrt(<v|v>).
double norm(const ComplexVector& v);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector apply(const ComplexMatrix& m, const ComplexVector& v);

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

double frobenius_norm(const ComplexMatrix& m);
ComplexScalar trace(const ComplexMatrix& m);

struct EigenDecomposition {
    std::vector<double> eigenvalues;          // ascending
    std::vector<ComplexVector> eigenvectors;  // orthonormal, same order
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.  Throws if the input
// is not square or deviates from Hermiticity by more than tol_herm in
// Frobenius norm.
EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& h,
                                                double tol_herm = tol::kHermitian);

// Singular values of a square matrix (descending), via the eigenvalues of
// M†M.
std::vector<double> singular_values(const ComplexMatrix& m);

// Classification order: Unitary, then ProportionalUnitary with |c|^2
// inferred as trace(M†M)/N, then Singular by singular-value ratio, else
// GeneralInvertible.
OperatorClass classify_operator(const ComplexMatrix& m, double tol = tol::kClassify);

// <a|U†U|b> reconstructed only from the norms of U*a, U*b, U*(a+b) and
// U*(a+i*b); the numerical form of the polarization-identity step in the
// norm-preservation argument.
ComplexScalar polarization_reconstruct(const ComplexMatrix& u,
                                       const ComplexVector& alpha,
                                       const ComplexVector& beta);

// ============================================================================
// Random generators (test harness and experiment inputs)
// ============================================================================

ComplexVector random_complex_gaussian_vector(std::size_t dim, SplitMix64& rng);

// Normalized complex-Gaussian vector; rotation invariant.
ComplexVector random_unit_vector(std::size_t dim, SplitMix64& rng);

// Haar-distributed unitary: Gram-Schmidt of a complex Gaussian matrix with a
// re-orthogonalization pass (R's diagonal comes out real positive, which
// makes the distribution Haar).
ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng);

// U1 * diag(sigma) * U2† with singular values spread so that the condition
// number is at least kappa_min (> 1); classified GeneralInvertible for any
// kappa_min meaningfully above 1.
ComplexMatrix random_invertible(std::size_t dim, SplitMix64& rng,
                                double kappa_min = 1.01, double kappa_max = 10.0);

ComplexMatrix random_hermitian(std::size_t dim, SplitMix64& rng);

}  // namespace qsim

#endif  // QSIM_LINALG_HPP
