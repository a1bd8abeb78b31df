#ifndef QSIM_COMPOSITE_HPP
#define QSIM_COMPOSITE_HPP

#include <string>
#include <vector>

#include "qsim/linalg.hpp"
#include "qsim/states.hpp"

namespace qsim {

// Basis ordering convention, used everywhere in this module: the FIRST
// tensor factor is the most significant, so a two-qubit basis reads
// |00>, |01>, |10>, |11> and site 0 owns the leading bit.

inline constexpr int kMaxQubits = 12;  // dense storage; dimension 4096

class QubitRegister {
public:
    QubitRegister(int n_qubits, RawState state, std::vector<std::string> sites);

    int n_qubits() const { return n_qubits_; }
    const RawState& state() const { return state_; }
    const std::vector<std::string>& sites() const { return sites_; }
    std::size_t dim() const { return state_.dim(); }

private:
    int n_qubits_;
    RawState state_;
    std::vector<std::string> sites_;
};

// Hermitian positive-semidefinite matrix; `normalized` records whether the
// trace is 1.  Reduced matrices produced under the general linear engine
// are deliberately representable without rescaling.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, bool normalized);

    const ComplexMatrix& matrix() const { return matrix_; }
    bool normalized() const { return normalized_; }
    std::size_t dim() const { return matrix_.rows(); }

    // Trace-1 rescaled copy.
    DensityMatrix renormalized() const;

private:
    ComplexMatrix matrix_;
    bool normalized_;
};

// Kronecker products with the first factor most significant.
RawState tensor_states(const RawState& a, const RawState& b);
ComplexMatrix tensor_ops(const ComplexMatrix& a, const ComplexMatrix& b);

// The entangled two-qubit state |00> + |11>, stored unnormalized exactly as
// written; sites labeled "A" (first) and "B" (second).
QubitRegister bell_state();

// I x ... x op x ... x I with `op` (2x2) at position `site`.
ComplexMatrix embed_local(const ComplexMatrix& op, int site, int n_qubits);

// |s><s| / <s|s>.
DensityMatrix density_from_state(const RawState& s);

// |s><s| with no rescaling; `normalized` is false unless <s|s> = 1.
DensityMatrix density_from_state_unnormalized(const RawState& s);

// Trace over every site except `keep`; preserves trace, Hermiticity,
// positivity and the `normalized` flag.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep, int n_qubits);

}  // namespace qsim

#endif  // QSIM_COMPOSITE_HPP
