#ifndef QSIM_SIGNALING_HPP
#define QSIM_SIGNALING_HPP

#include <cstdint>
#include <vector>

#include "qsim/composite.hpp"
#include "qsim/evolution.hpp"
#include "qsim/measurement.hpp"

namespace qsim {

// The two-qubit entanglement-signaling experiment: Alice (site 0) applies a
// non-unitary gate under the general linear engine, Bob (site 1) measures in
// the computational basis.

struct SignalingConfig {
    double epsilon = 0.1;        // in (0, 1); 0 would make the gate singular
    int bit_to_send = 0;         // 0 or 1
    std::int64_t n_trials = 100000;
    std::uint64_t rng_seed = 0;
};

struct SignalingReport {
    OutcomeDistribution analytic_bob_distribution;
    std::int64_t count_0 = 0;
    std::int64_t count_1 = 0;
    double empirical_error_rate = 0.0;
    double analytic_error_rate = 0.0;  // epsilon^2 / (1 + epsilon^2)
    DensityMatrix reduced_density_unnormalized;
};

struct NoCommReport {
    int n_unitaries = 0;
    // Max over trials of the max-norm distance between Bob's marginal and
    // the uniform {1/2, 1/2}.
    double max_marginal_deviation = 0.0;
};

struct SweepRow {
    double epsilon;
    double analytic_error;
    double empirical_error_bit0;
    double empirical_error_bit1;
    double empirical_error_mean;
};

// diag(1, eps) transmits 0; the mirrored diag(eps, 1) transmits 1.
EvolutionOperator alice_gate(int bit, double epsilon);

// Full protocol: Bell state, Alice's embedded gate through the linear
// engine, Bob's analytic distribution, the unnormalized reduced density
// matrix, and n_trials seeded measurements of Bob's qubit.
SignalingReport run_protocol(const SignalingConfig& cfg);

// Control experiment: random unitary Alice-gates through the standard
// engine never move Bob's marginal off {1/2, 1/2}.
NoCommReport no_communication_check(int n_unitaries, std::uint64_t seed);

// One protocol run per epsilon per bit value; empirical rates per bit and
// averaged.
std::vector<SweepRow> error_rate_sweep(const std::vector<double>& epsilons,
                                       std::int64_t n_trials, std::uint64_t seed);

}  // namespace qsim

#endif  // QSIM_SIGNALING_HPP
