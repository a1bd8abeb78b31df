#include "qsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace qsim {

namespace {

void require_finite(const ComplexScalar& z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidInputError(std::string(what) + ": non-finite entry");
    }
}

void require_same_dim(const ComplexVector& a, const ComplexVector& b,
                      const char* what) {
    if (a.dim() != b.dim()) {
        throw InvalidInputError(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square()) {
        throw InvalidInputError(std::string(what) + ": matrix is not square (" +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ")");
    }
}

}  // namespace

// ============================================================================
// ComplexVector
// ============================================================================

ComplexVector::ComplexVector(std::vector<ComplexScalar> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw InvalidInputError("ComplexVector: dimension must be at least 1");
    }
    for (const auto& z : entries_) require_finite(z, "ComplexVector");
}

ComplexVector::ComplexVector(std::size_t dim, ComplexScalar fill)
    : entries_(dim, fill) {
    if (dim == 0) {
        throw InvalidInputError("ComplexVector: dimension must be at least 1");
    }
    require_finite(fill, "ComplexVector");
}

ComplexVector ComplexVector::operator+(const ComplexVector& rhs) const {
    require_same_dim(*this, rhs, "vector sum");
    std::vector<ComplexScalar> out(entries_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs.entries_[i];
    return ComplexVector(std::move(out));
}

ComplexVector ComplexVector::operator-(const ComplexVector& rhs) const {
    require_same_dim(*this, rhs, "vector difference");
    std::vector<ComplexScalar> out(entries_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs.entries_[i];
    return ComplexVector(std::move(out));
}

ComplexVector operator*(const ComplexScalar& z, const ComplexVector& v) {
    std::vector<ComplexScalar> out(v.entries());
    for (auto& e : out) e *= z;
    return ComplexVector(std::move(out));
}

// ============================================================================
// ComplexMatrix
// ============================================================================

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<ComplexScalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw InvalidInputError("ComplexMatrix: dimensions must be positive");
    }
    if (entries_.size() != rows_ * cols_) {
        throw InvalidInputError("ComplexMatrix: entry count " +
                                std::to_string(entries_.size()) +
                                " does not match " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
    }
    for (const auto& z : entries_) require_finite(z, "ComplexMatrix");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, ComplexScalar{0.0, 0.0}) {
    if (rows_ == 0 || cols_ == 0) {
        throw InvalidInputError("ComplexMatrix: dimensions must be positive");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<ComplexScalar>& diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw InvalidInputError("matrix sum: dimension mismatch");
    }
    std::vector<ComplexScalar> out(entries_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs.entries_[i];
    return ComplexMatrix(rows_, cols_, std::move(out));
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw InvalidInputError("matrix difference: dimension mismatch");
    }
    std::vector<ComplexScalar> out(entries_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs.entries_[i];
    return ComplexMatrix(rows_, cols_, std::move(out));
}

ComplexMatrix operator*(const ComplexScalar& z, const ComplexMatrix& m) {
    std::vector<ComplexScalar> out(m.entries());
    for (auto& e : out) e *= z;
    return ComplexMatrix(m.rows(), m.cols(), std::move(out));
}

std::string to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Unitary: return "Unitary";
        case OperatorKind::ProportionalUnitary: return "ProportionalUnitary";
        case OperatorKind::GeneralInvertible: return "GeneralInvertible";
        case OperatorKind::Singular: return "Singular";
    }
    return "Unknown";
}

// ============================================================================
// Core operations
// ============================================================================

ComplexScalar inner_product(const ComplexVector& a, const ComplexVector& b) {
    require_same_dim(a, b, "inner_product");
    ComplexScalar acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm(const ComplexVector& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) acc += std::norm(v[i]);
    return std::sqrt(acc);
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(j, i) = std::conj(m(i, j));
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InvalidInputError("matmul: inner dimensions disagree (" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const ComplexScalar aik = a(i, k);
            if (aik == ComplexScalar{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexVector apply(const ComplexMatrix& m, const ComplexVector& v) {
    if (m.cols() != v.dim()) {
        throw InvalidInputError("apply: matrix columns " + std::to_string(m.cols()) +
                                " do not match vector dimension " +
                                std::to_string(v.dim()));
    }
    std::vector<ComplexScalar> out(m.rows(), ComplexScalar{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ComplexScalar acc{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return ComplexVector(std::move(out));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
    return apply(m, v);
}

double frobenius_norm(const ComplexMatrix& m) {
    double acc = 0.0;
    for (const auto& z : m.entries()) acc += std::norm(z);
    return std::sqrt(acc);
}

ComplexScalar trace(const ComplexMatrix& m) {
    require_square(m, "trace");
    ComplexScalar acc{0.0, 0.0};
    for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
    return acc;
}

// ============================================================================
// Hermitian eigendecomposition (cyclic Jacobi)
// ============================================================================

namespace {

// One Jacobi rotation zeroing h(p,q).  The 2x2 block
//   [ a      h   ]          a = h(p,p), b = h(q,q) real,
//   [ conj(h) b  ]          h = h(p,q)
// is factored through the phase of h into a real symmetric rotation.
struct JacobiRotation {
    double c;          // cosine
    ComplexScalar s;   // sine carrying the phase of h(p,q)
};

JacobiRotation make_rotation(double a, double b, ComplexScalar h) {
    const double habs = std::abs(h);
    const ComplexScalar phase = h / habs;  // caller guarantees h != 0
    const double tau = (b - a) / (2.0 * habs);
    // Stable tangent of the half angle.
    double t;
    if (tau >= 0.0) {
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    } else {
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return JacobiRotation{c, t * c * phase};
}

double offdiagonal_norm(const ComplexMatrix& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i != j) acc += std::norm(m(i, j));
        }
    }
    return std::sqrt(acc);
}

}  // namespace

EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& h,
                                                double tol_herm) {
    require_square(h, "hermitian_eigendecomposition");
    const std::size_t n = h.rows();

    const double herm_residual = frobenius_norm(h - adjoint(h));
    if (herm_residual > tol_herm) {
        throw InvalidInputError(
            "hermitian_eigendecomposition: input is not Hermitian (residual " +
            std::to_string(herm_residual) + " > tol " + std::to_string(tol_herm) +
            ")");
    }

    // Work on the Hermitian average so roundoff in the input cannot bias one
    // triangle over the other.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = frobenius_norm(a);
    const double stop = (scale > 0.0) ? 1e-15 * scale : 0.0;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps && offdiagonal_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const ComplexScalar hpq = a(p, q);
                if (std::abs(hpq) == 0.0) continue;

                const JacobiRotation rot =
                    make_rotation(a(p, p).real(), a(q, q).real(), hpq);
                const double c = rot.c;
                const ComplexScalar s = rot.s;

                // A <- J† A J applied to rows/columns p and q, with
                // J[p][p]=c, J[p][q]=s, J[q][p]=-conj(s), J[q][q]=c.
                for (std::size_t k = 0; k < n; ++k) {
                    const ComplexScalar akp = a(k, p);
                    const ComplexScalar akq = a(k, q);
                    a(k, p) = c * akp - std::conj(s) * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const ComplexScalar apk = a(p, k);
                    const ComplexScalar aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = std::conj(s) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const ComplexScalar vkp = v(k, p);
                    const ComplexScalar vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(s) * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (std::size_t idx : order) {
        out.eigenvalues.push_back(a(idx, idx).real());
        std::vector<ComplexScalar> col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v(k, idx);
        out.eigenvectors.emplace_back(std::move(col));
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    require_square(m, "singular_values");
    const ComplexMatrix gram = adjoint(m) * m;
    // The Gram matrix is Hermitian by construction; pass a loose tolerance so
    // roundoff in the product can never trip the check.
    EigenDecomposition eig =
        hermitian_eigendecomposition(gram, 1e-6 * std::max(1.0, frobenius_norm(gram)));
    std::vector<double> sigma;
    sigma.reserve(eig.eigenvalues.size());
    for (auto it = eig.eigenvalues.rbegin(); it != eig.eigenvalues.rend(); ++it) {
        sigma.push_back(std::sqrt(std::max(0.0, *it)));
    }
    return sigma;
}

OperatorClass classify_operator(const ComplexMatrix& m, double tol) {
    require_square(m, "classify_operator");
    if (tol <= 0.0) {
        throw InvalidInputError("classify_operator: tolerance must be positive");
    }
    const std::size_t n = m.rows();
    const ComplexMatrix gram = adjoint(m) * m;

    if (frobenius_norm(gram - ComplexMatrix::identity(n)) <= tol) {
        return OperatorClass{OperatorKind::Unitary, ComplexScalar{1.0, 0.0}};
    }

    // |c|^2 = trace(M†M)/N is exact whenever M†M really is |c|^2 I.
    const double c2 = trace(gram).real() / static_cast<double>(n);
    if (c2 > 0.0) {
        ComplexMatrix scaled_identity(n, n);
        for (std::size_t i = 0; i < n; ++i) scaled_identity(i, i) = c2;
        if (frobenius_norm(gram - scaled_identity) <= tol * c2) {
            return OperatorClass{OperatorKind::ProportionalUnitary,
                                 ComplexScalar{std::sqrt(c2), 0.0}};
        }
    }

    const std::vector<double> sigma = singular_values(m);
    const double sigma_max = sigma.front();
    const double sigma_min = sigma.back();
    if (sigma_min <= tol * sigma_max) {
        return OperatorClass{OperatorKind::Singular, ComplexScalar{0.0, 0.0}};
    }
    return OperatorClass{OperatorKind::GeneralInvertible, ComplexScalar{1.0, 0.0}};
}

ComplexScalar polarization_reconstruct(const ComplexMatrix& u,
                                       const ComplexVector& alpha,
                                       const ComplexVector& beta) {
    require_same_dim(alpha, beta, "polarization_reconstruct");
    if (u.cols() != alpha.dim()) {
        throw InvalidInputError(
            "polarization_reconstruct: operator/vector dimension mismatch");
    }
    const double na = norm(apply(u, alpha));
    const double nb = norm(apply(u, beta));
    const double nsum = norm(apply(u, alpha + beta));
    const double nisum = norm(apply(u, alpha + ComplexScalar{0.0, 1.0} * beta));
    // ||U(a+b)||^2 = ||Ua||^2 + ||Ub||^2 + 2 Re<Ua|Ub>
    // ||U(a+ib)||^2 = ||Ua||^2 + ||Ub||^2 - 2 Im<Ua|Ub>
    const double re = 0.5 * (nsum * nsum - na * na - nb * nb);
    const double im = 0.5 * (na * na + nb * nb - nisum * nisum);
    return {re, im};
}

// ============================================================================
// Random generators
// ============================================================================

ComplexVector random_complex_gaussian_vector(std::size_t dim, SplitMix64& rng) {
    std::vector<ComplexScalar> entries(dim);
    for (auto& z : entries) z = rng.next_complex_gaussian();
    return ComplexVector(std::move(entries));
}

ComplexVector random_unit_vector(std::size_t dim, SplitMix64& rng) {
    for (;;) {
        ComplexVector v = random_complex_gaussian_vector(dim, rng);
        const double n = norm(v);
        if (n > 1e-6) return (ComplexScalar{1.0 / n, 0.0}) * v;
    }
}

ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng) {
    // Columns of a complex Gaussian matrix, orthonormalized by modified
    // Gram-Schmidt with one re-orthogonalization pass.
    std::vector<ComplexVector> cols;
    cols.reserve(dim);
    while (cols.size() < dim) {
        ComplexVector v = random_complex_gaussian_vector(dim, rng);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : cols) {
                v = v - inner_product(q, v) * q;
            }
        }
        const double n = norm(v);
        if (n < 1e-8) continue;  // degenerate draw, resample
        cols.push_back(ComplexScalar{1.0 / n, 0.0} * v);
    }
    ComplexMatrix out(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) out(i, j) = cols[j][i];
    }
    return out;
}

ComplexMatrix random_invertible(std::size_t dim, SplitMix64& rng,
                                double kappa_min, double kappa_max) {
    if (!(kappa_min > 1.0) || !(kappa_max >= kappa_min)) {
        throw InvalidInputError("random_invertible: need 1 < kappa_min <= kappa_max");
    }
    const ComplexMatrix u1 = random_unitary(dim, rng);
    const ComplexMatrix u2 = random_unitary(dim, rng);

    // Fix the extreme singular values to hit a condition number drawn from
    // [kappa_min, kappa_max]; fill the rest in between.
    const double kappa = kappa_min + (kappa_max - kappa_min) * rng.next_unit();
    const double sigma_lo = 1.0 / std::sqrt(kappa);
    const double sigma_hi = sigma_lo * kappa;
    std::vector<ComplexScalar> sigma(dim);
    sigma[0] = sigma_hi;
    if (dim > 1) sigma[dim - 1] = sigma_lo;
    for (std::size_t i = 1; i + 1 < dim; ++i) {
        sigma[i] = sigma_lo + (sigma_hi - sigma_lo) * rng.next_unit();
    }
    return u1 * ComplexMatrix::diagonal(sigma) * adjoint(u2);
}

ComplexMatrix random_hermitian(std::size_t dim, SplitMix64& rng) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            g(i, j) = rng.next_complex_gaussian();
        }
    }
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
        }
    }
    return h;
}

}  // namespace qsim
