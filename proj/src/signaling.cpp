#include "qsim/signaling.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qsim/rng.hpp"
#include "qsim/tolerances.hpp"

namespace qsim {

namespace {

constexpr int kAliceSite = 0;
constexpr int kBobSite = 1;

// Bob's computational-basis observable on the joint space: eigenvalue 0 on
// |*0>, eigenvalue 1 on |*1>.
Observable bob_joint_observable() {
    ComplexMatrix bit_readout(2, 2);
    bit_readout(1, 1) = 1.0;
    return Observable(embed_local(bit_readout, kBobSite, 2));
}

void validate_epsilon(double epsilon) {
    if (!(epsilon > 0.0)) {
        throw InvalidInputError(
            "alice_gate: epsilon = " + std::to_string(epsilon) +
            " would make the gate singular (it annihilates a basis state)");
    }
    if (!(epsilon < 1.0)) {
        throw InvalidInputError("alice_gate: epsilon must be strictly below 1");
    }
}

}  // namespace

EvolutionOperator alice_gate(int bit, double epsilon) {
    validate_epsilon(epsilon);
    if (bit != 0 && bit != 1) {
        throw InvalidInputError("alice_gate: bit must be 0 or 1");
    }
    ComplexMatrix gate(2, 2);
    if (bit == 0) {
        gate(0, 0) = 1.0;
        gate(1, 1) = epsilon;
    } else {
        gate(0, 0) = epsilon;
        gate(1, 1) = 1.0;
    }
    return EvolutionOperator(std::move(gate), tol::kClassify,
                             "alice-gate(bit=" + std::to_string(bit) + ")");
}

SignalingReport run_protocol(const SignalingConfig& cfg) {
    if (cfg.n_trials < 1) {
        throw InvalidInputError("run_protocol: n_trials must be positive");
    }
    if (cfg.bit_to_send != 0 && cfg.bit_to_send != 1) {
        throw InvalidInputError("run_protocol: bit_to_send must be 0 or 1");
    }

    const EvolutionOperator local_gate = alice_gate(cfg.bit_to_send, cfg.epsilon);
    const EvolutionOperator joint_gate(
        embed_local(local_gate.matrix(), kAliceSite, 2), tol::kClassify,
        local_gate.label() + " x I");

    const QubitRegister bell = bell_state();
    const RawState evolved = evolve_linear_B(bell.state(), joint_gate);

    const Observable bob = bob_joint_observable();
    OutcomeDistribution analytic = born_probabilities_B(evolved, bob);

    const DensityMatrix joint_density = density_from_state_unnormalized(evolved);
    DensityMatrix reduced = partial_trace(joint_density, kBobSite, 2);

    SignalingReport report{std::move(analytic), 0, 0, 0.0,
                           cfg.epsilon * cfg.epsilon /
                               (1.0 + cfg.epsilon * cfg.epsilon),
                           std::move(reduced)};

    for (std::int64_t trial = 0; trial < cfg.n_trials; ++trial) {
        const std::uint64_t trial_seed =
            substream(cfg.rng_seed, static_cast<std::uint64_t>(trial)).next_u64();
        const MeasurementRecord<RawState> record =
            sample_measurement(evolved, bob, trial_seed);
        if (record.observed_eigenvalue < 0.5) {
            ++report.count_0;
        } else {
            ++report.count_1;
        }
    }
    const std::int64_t errors =
        (cfg.bit_to_send == 0) ? report.count_1 : report.count_0;
    report.empirical_error_rate =
        static_cast<double>(errors) / static_cast<double>(cfg.n_trials);
    return report;
}

NoCommReport no_communication_check(int n_unitaries, std::uint64_t seed) {
    if (n_unitaries < 1) {
        throw InvalidInputError("no_communication_check: n_unitaries must be >= 1");
    }
    const UnitState bell = normalize(bell_state().state());
    const Observable bob = bob_joint_observable();

    NoCommReport report{n_unitaries, 0.0};
    for (int i = 0; i < n_unitaries; ++i) {
        SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(i));
        const ComplexMatrix v = random_unitary(2, rng);
        const EvolutionOperator joint_gate(embed_local(v, kAliceSite, 2),
                                           tol::kClassify, "random-unitary x I");
        const UnitState evolved = evolve_unitary(bell, joint_gate);
        const OutcomeDistribution marginal = born_probabilities_A(evolved, bob);
        for (const auto& outcome : marginal.outcomes()) {
            report.max_marginal_deviation = std::max(
                report.max_marginal_deviation, std::abs(outcome.probability - 0.5));
        }
    }
    return report;
}

std::vector<SweepRow> error_rate_sweep(const std::vector<double>& epsilons,
                                       std::int64_t n_trials, std::uint64_t seed) {
    std::vector<SweepRow> table;
    table.reserve(epsilons.size());
    std::uint64_t run_index = 0;
    for (double epsilon : epsilons) {
        SignalingConfig cfg;
        cfg.epsilon = epsilon;
        cfg.n_trials = n_trials;

        cfg.bit_to_send = 0;
        cfg.rng_seed = substream(seed, run_index++).next_u64();
        const SignalingReport report0 = run_protocol(cfg);

        cfg.bit_to_send = 1;
        cfg.rng_seed = substream(seed, run_index++).next_u64();
        const SignalingReport report1 = run_protocol(cfg);

        table.push_back(SweepRow{
            epsilon, report0.analytic_error_rate, report0.empirical_error_rate,
            report1.empirical_error_rate,
            0.5 * (report0.empirical_error_rate + report1.empirical_error_rate)});
    }
    return table;
}

}  // namespace qsim
