#ifndef QSIM_TOLERANCES_HPP
#define QSIM_TOLERANCES_HPP

#include <cstdint>

namespace qsim {

// Central numeric defaults.  Every tolerance that appears in a public
// contract lives here so the CLI and the test suites agree on one value.
namespace tol {

// Operator classification (Frobenius residuals; relative where a scale
// exists).
inline constexpr double kClassify = 1e-10;

// Hermiticity check on eigensolver / observable inputs (Frobenius).
inline constexpr double kHermitian = 1e-10;

// |norm - 1| allowed for a stored unit vector.
inline constexpr double kUnitNorm = 1e-12;

// Entries below this modulus are never used to fix the ray gauge.
inline constexpr double kPhase = 1e-12;

// Relative eigenvalue gap below which eigenvalues share an eigenspace.
inline constexpr double kDegeneracy = 1e-9;

// Smallest outcome probability that may be collapsed onto (absolute).
inline constexpr double kCollapse = 1e-14;

// Norm-preservation contract of the standard unitary engine.
inline constexpr double kNormPreservation = 1e-10;

// Probability sanity: per-distribution |sum - 1| bound.
inline constexpr double kProbabilitySum = 1e-10;

}  // namespace tol

// CLI-facing experiment defaults.
namespace defaults {

inline constexpr double kEpsilon = 0.1;
inline constexpr std::int64_t kTrials = 100000;
inline constexpr std::uint64_t kSeed = 0;
inline constexpr int kTheoremSamples = 1000;
inline constexpr int kNoCommUnitaries = 100;

}  // namespace defaults

}  // namespace qsim

#endif  // QSIM_TOLERANCES_HPP
