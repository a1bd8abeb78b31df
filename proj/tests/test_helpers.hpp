#ifndef QSIM_TEST_HELPERS_HPP
#define QSIM_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "qsim/linalg.hpp"

namespace qsim::test {

inline ComplexVector V(std::initializer_list<ComplexScalar> entries) {
    return ComplexVector(std::vector<ComplexScalar>(entries));
}

inline ComplexMatrix M(std::size_t rows, std::size_t cols,
                       std::initializer_list<ComplexScalar> entries) {
    return ComplexMatrix(rows, cols, std::vector<ComplexScalar>(entries));
}

inline const ComplexScalar kI{0.0, 1.0};

inline double dist(const ComplexScalar& a, const ComplexScalar& b) {
    return std::abs(a - b);
}

inline double dist(const ComplexVector& a, const ComplexVector& b) {
    return norm(a - b);
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
    return frobenius_norm(a - b);
}

// |<a|b>| = 1 up to tol: equal as rays.
inline bool same_ray(const ComplexVector& a, const ComplexVector& b, double tol) {
    const double overlap = std::abs(inner_product(a, b)) / (norm(a) * norm(b));
    return std::abs(overlap - 1.0) <= tol;
}

inline ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return M(2, 2, {s, s, s, -s});
}

inline ComplexMatrix pauli_x() { return M(2, 2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix pauli_z() { return M(2, 2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace qsim::test

#endif  // QSIM_TEST_HELPERS_HPP
