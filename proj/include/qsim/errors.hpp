#ifndef QSIM_ERRORS_HPP
#define QSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsim {

// Malformed or out-of-contract input: dimension mismatches, zero vectors
// where a nonzero state is required, non-Hermitian observables, NaN/inf
// entries, flags outside their allowed range.  CLI exit code 1.
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what)
        : std::invalid_argument(what) {}
};

// An operator whose class is not accepted by the requested evolution
// engine (a Singular operator anywhere, or a non-Unitary operator handed
// to the standard engine).  CLI exit code 2.
class InadmissibleOperatorError : public std::domain_error {
public:
    explicit InadmissibleOperatorError(const std::string& what)
        : std::domain_error(what) {}
};

// A numeric postcondition failed at runtime: probabilities that do not
// sum to 1, a norm that was not preserved by a supposedly unitary map.
// CLI exit code 3.
class NumericContractError : public std::runtime_error {
public:
    explicit NumericContractError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace qsim

#endif  // QSIM_ERRORS_HPP
