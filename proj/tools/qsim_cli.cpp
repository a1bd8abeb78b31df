// Command-line surface for the simulator: operator classification, the
// three evolution engines, Born-rule measurement, the entanglement
// signaling protocol, the no-communication control and the
// norm-preservation laboratory.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsim/serialize.hpp"
#include "qsim/tolerances.hpp"

namespace {

using qsim::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitInadmissible = 2;
constexpr int kExitNumericContract = 3;

struct OutputSink {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::fputs(text.c_str(), stdout);
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw qsim::InvalidInputError("cannot open output file: " + path);
        }
        out << text;
    }
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string verdict_for(qsim::OperatorKind kind) {
    switch (kind) {
        case qsim::OperatorKind::Unitary: return "UNITARY";
        case qsim::OperatorKind::ProportionalUnitary: return "PROPORTIONAL-UNITARY";
        case qsim::OperatorKind::GeneralInvertible: return "NON-UNITARY (B′ only)";
        case qsim::OperatorKind::Singular: return "SINGULAR";
    }
    return "UNKNOWN";
}

// Verdict rendering used by the norm-preservation report.
std::string theorem_verdict_for(qsim::OperatorKind kind) {
    switch (kind) {
        case qsim::OperatorKind::Unitary: return "UNITARY";
        case qsim::OperatorKind::ProportionalUnitary:
            return "PROPORTIONAL-UNITARY (physically standard)";
        case qsim::OperatorKind::GeneralInvertible:
            return "NON-UNITARY (B′ only)";
        case qsim::OperatorKind::Singular: return "SINGULAR (inadmissible)";
    }
    return "UNKNOWN";
}

std::string admissibility_for(qsim::OperatorKind kind) {
    switch (kind) {
        case qsim::OperatorKind::Unitary:
            return "admissible under A′ and B′";
        case qsim::OperatorKind::ProportionalUnitary:
            return "proportional-unitary: physically standard under manual "
                   "normalization";
        case qsim::OperatorKind::GeneralInvertible:
            return "admissible under B′ only";
        case qsim::OperatorKind::Singular:
            return "rejected by every evolution engine (annihilates a nonzero "
                   "state)";
    }
    return "unknown";
}

std::string fmt(double x) { return qsim::io::format_double(x); }

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyResiduals {
    double unitary_gram;
    double proportional;
    double singular_value_ratio;
};

ClassifyResiduals classify_residuals(const qsim::ComplexMatrix& m) {
    const std::size_t n = m.rows();
    const qsim::ComplexMatrix gram = qsim::adjoint(m) * m;
    const double unitary_gram =
        qsim::frobenius_norm(gram - qsim::ComplexMatrix::identity(n));
    const double c2 = qsim::trace(gram).real() / static_cast<double>(n);
    double proportional = unitary_gram;
    if (c2 > 0.0) {
        qsim::ComplexMatrix scaled(n, n);
        for (std::size_t i = 0; i < n; ++i) scaled(i, i) = c2;
        proportional = qsim::frobenius_norm(gram - scaled) / c2;
    }
    const std::vector<double> sigma = qsim::singular_values(m);
    const double ratio = (sigma.front() > 0.0) ? sigma.back() / sigma.front() : 0.0;
    return ClassifyResiduals{unitary_gram, proportional, ratio};
}

int run_classify(const std::string& matrix_path, double tolerance,
                 const std::string& format, const OutputSink& sink) {
    const qsim::ComplexMatrix m =
        qsim::io::matrix_from_json(qsim::io::parse_file(matrix_path));
    const qsim::OperatorClass cls = qsim::classify_operator(m, tolerance);
    const ClassifyResiduals residuals = classify_residuals(m);

    Json j{{"verdict", verdict_for(cls.kind)},
           {"operator_class", qsim::io::operator_class_to_json(cls)},
           {"residuals",
            Json{{"unitary_gram", residuals.unitary_gram},
                 {"proportional_relative", residuals.proportional},
                 {"singular_value_ratio", residuals.singular_value_ratio}}}};

    if (format == "json") {
        sink.write(dump(j));
    } else if (format == "tsv") {
        std::string out = "verdict\tunitary_gram\tproportional_relative\t"
                          "singular_value_ratio\n";
        out += verdict_for(cls.kind) + "\t" + fmt(residuals.unitary_gram) + "\t" +
               fmt(residuals.proportional) + "\t" +
               fmt(residuals.singular_value_ratio) + "\n";
        sink.write(out);
    } else {
        std::string out = verdict_for(cls.kind) + "\n";
        out += "  unitary gram residual    " + fmt(residuals.unitary_gram) + "\n";
        out += "  proportional residual    " + fmt(residuals.proportional) + "\n";
        out += "  singular value ratio     " + fmt(residuals.singular_value_ratio) +
               "\n";
        out += "  class: " + qsim::io::operator_class_to_json(cls).dump() + "\n";
        sink.write(out);
    }
    return cls.kind == qsim::OperatorKind::Singular ? kExitInadmissible : kExitOk;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

int run_evolve(const std::string& engine, const std::string& state_path,
               const std::string& operator_path, double tolerance,
               const std::string& format, const OutputSink& sink) {
    const qsim::io::ParsedState parsed =
        qsim::io::state_from_json(qsim::io::parse_file(state_path));
    const qsim::EvolutionOperator op(
        qsim::io::matrix_from_json(qsim::io::parse_file(operator_path)), tolerance,
        operator_path);

    Json out_state;
    if (engine == "unitary") {
        if (parsed.representation == "raw") {
            out_state = qsim::io::state_to_json(
                qsim::evolve_unitary(qsim::RawState(parsed.vec), op));
        } else {
            out_state = qsim::io::state_to_json(
                qsim::evolve_unitary(qsim::UnitState(parsed.vec), op));
        }
    } else if (engine == "linear") {
        out_state = qsim::io::state_to_json(
            qsim::evolve_linear_B(qsim::RawState(parsed.vec), op));
    } else {  // manual
        const qsim::UnitState unit =
            (parsed.representation == "raw")
                ? qsim::normalize(qsim::RawState(parsed.vec))
                : qsim::UnitState(parsed.vec);
        out_state = qsim::io::state_to_json(qsim::evolve_manual_norm_A(unit, op));
    }

    if (format == "json") {
        Json j{{"engine", engine},
               {"operator_class", qsim::io::operator_class_to_json(op.op_class())},
               {"state", out_state}};
        sink.write(dump(j));
    } else if (format == "tsv") {
        std::string out = "index\tre\tim\n";
        const auto& entries = out_state.at("entries");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            out += std::to_string(i) + "\t" + fmt(entries[i][0].get<double>()) +
                   "\t" + fmt(entries[i][1].get<double>()) + "\n";
        }
        sink.write(out);
    } else {
        std::string out = "engine:   " + engine + "\n";
        out += "operator: " + verdict_for(op.op_class().kind) + "\n";
        out += "state:    " + out_state.dump() + "\n";
        sink.write(out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

int run_measure(const std::string& state_path, const std::string& observable_path,
                std::int64_t samples, std::uint64_t seed, const std::string& format,
                const OutputSink& sink) {
    const qsim::io::ParsedState parsed =
        qsim::io::state_from_json(qsim::io::parse_file(state_path));
    const qsim::Observable obs =
        qsim::io::observable_from_json(qsim::io::parse_file(observable_path));

    const qsim::RawState raw(parsed.vec);
    const qsim::UnitState unit = (parsed.representation == "raw")
                                     ? qsim::normalize(raw)
                                     : qsim::UnitState(parsed.vec);

    const qsim::OutcomeDistribution dist_a = qsim::born_probabilities_A(unit, obs);
    const qsim::OutcomeDistribution dist_b = qsim::born_probabilities_B(raw, obs);

    std::vector<std::int64_t> counts(dist_a.size(), 0);
    if (samples > 0) {
        for (std::int64_t trial = 0; trial < samples; ++trial) {
            const std::uint64_t trial_seed =
                qsim::substream(seed, static_cast<std::uint64_t>(trial)).next_u64();
            const auto record = qsim::sample_measurement(raw, obs, trial_seed);
            for (std::size_t k = 0; k < dist_a.size(); ++k) {
                if (std::abs(dist_a[k].eigenvalue - record.observed_eigenvalue) <
                    1e-12 * std::max(1.0, std::abs(dist_a[k].eigenvalue))) {
                    ++counts[k];
                    break;
                }
            }
        }
    }

    if (format == "json") {
        Json j{{"formulation_A", qsim::io::distribution_to_json(dist_a)},
               {"formulation_B", qsim::io::distribution_to_json(dist_b)}};
        if (samples > 0) {
            j["empirical"] =
                Json{{"samples", samples}, {"seed", seed}, {"counts", counts}};
        }
        sink.write(dump(j));
    } else if (format == "tsv") {
        std::string out = samples > 0
                              ? "eigenvalue\tprobability_A\tprobability_B\tempirical\n"
                              : "eigenvalue\tprobability_A\tprobability_B\n";
        for (std::size_t k = 0; k < dist_a.size(); ++k) {
            out += fmt(dist_a[k].eigenvalue) + "\t" + fmt(dist_a[k].probability) +
                   "\t" + fmt(dist_b[k].probability);
            if (samples > 0) {
                out += "\t" + fmt(static_cast<double>(counts[k]) /
                                  static_cast<double>(samples));
            }
            out += "\n";
        }
        sink.write(out);
    } else {
        // Both formulations side by side; they must agree, and showing both
        // makes that visible on every run.
        std::string out = "eigenvalue        P (formulation A)    P (formulation B)";
        if (samples > 0) out += "    empirical";
        out += "\n";
        char line[256];
        for (std::size_t k = 0; k < dist_a.size(); ++k) {
            if (samples > 0) {
                std::snprintf(line, sizeof line, "%-16.10g  %-19.15f  %-19.15f  %.6f\n",
                              dist_a[k].eigenvalue, dist_a[k].probability,
                              dist_b[k].probability,
                              static_cast<double>(counts[k]) /
                                  static_cast<double>(samples));
            } else {
                std::snprintf(line, sizeof line, "%-16.10g  %-19.15f  %-19.15f\n",
                              dist_a[k].eigenvalue, dist_a[k].probability,
                              dist_b[k].probability);
            }
            out += line;
        }
        sink.write(out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bell-signal
// ---------------------------------------------------------------------------

int run_bell_signal(const qsim::SignalingConfig& cfg, const std::string& format,
                    const OutputSink& sink) {
    const qsim::SignalingReport report = qsim::run_protocol(cfg);

    if (format == "json") {
        sink.write(dump(qsim::io::signaling_report_to_json(report)));
    } else if (format == "tsv") {
        std::string out = "eigenvalue\tanalytic_probability\tempirical_frequency\n";
        const double total = static_cast<double>(cfg.n_trials);
        const std::int64_t counts[2] = {report.count_0, report.count_1};
        for (std::size_t k = 0; k < report.analytic_bob_distribution.size(); ++k) {
            const auto& o = report.analytic_bob_distribution[k];
            out += fmt(o.eigenvalue) + "\t" + fmt(o.probability) + "\t" +
                   fmt(static_cast<double>(counts[k]) / total) + "\n";
        }
        sink.write(out);
    } else {
        std::string out;
        out += "bell-signal  epsilon=" + fmt(cfg.epsilon) +
               "  bit=" + std::to_string(cfg.bit_to_send) +
               "  trials=" + std::to_string(cfg.n_trials) +
               "  seed=" + std::to_string(cfg.rng_seed) + "\n";
        const auto& dist = report.analytic_bob_distribution;
        out += "analytic   P(0) = " + fmt(dist[0].probability) +
               "   P(1) = " + fmt(dist[1].probability) + "\n";
        const double total = static_cast<double>(cfg.n_trials);
        out += "empirical  P(0) = " +
               fmt(static_cast<double>(report.count_0) / total) +
               "   P(1) = " + fmt(static_cast<double>(report.count_1) / total) +
               "   (counts " + std::to_string(report.count_0) + " / " +
               std::to_string(report.count_1) + ")\n";
        out += "error rate analytic = " + fmt(report.analytic_error_rate) +
               "   empirical = " + fmt(report.empirical_error_rate) + "\n";
        out += "Bob reduced density (unnormalized): " +
               qsim::io::density_to_json(report.reduced_density_unnormalized).dump() +
               "\n";
        sink.write(out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// no-comm-check
// ---------------------------------------------------------------------------

int run_no_comm(int n_unitaries, std::uint64_t seed, const std::string& format,
                const OutputSink& sink) {
    const qsim::NoCommReport report = qsim::no_communication_check(n_unitaries, seed);
    if (format == "json") {
        sink.write(dump(qsim::io::no_comm_report_to_json(report)));
    } else if (format == "tsv") {
        sink.write("n_unitaries\tmax_marginal_deviation\n" +
                   std::to_string(report.n_unitaries) + "\t" +
                   fmt(report.max_marginal_deviation) + "\n");
    } else {
        std::string out = "no-communication check: " +
                          std::to_string(report.n_unitaries) +
                          " random unitary Alice-gates\n";
        out += "max deviation of Bob's marginal from {1/2, 1/2}: " +
               fmt(report.max_marginal_deviation) + "\n";
        sink.write(out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// theorem-check
// ---------------------------------------------------------------------------

int run_theorem_check(const std::string& matrix_path, int samples,
                      std::uint64_t seed, double tolerance,
                      const std::string& format, const OutputSink& sink) {
    const qsim::EvolutionOperator op(
        qsim::io::matrix_from_json(qsim::io::parse_file(matrix_path)), tolerance,
        matrix_path);
    const qsim::TheoremReport report = qsim::theorem1_lab(op, samples, seed);
    const qsim::OperatorKind kind = report.operator_class.kind;

    if (format == "json") {
        Json j = qsim::io::theorem_report_to_json(report);
        j["verdict"] = theorem_verdict_for(kind);
        j["admissibility"] = admissibility_for(kind);
        sink.write(dump(j));
    } else if (format == "tsv") {
        std::string out =
            "verdict\tgram_residual\tmax_unit_norm_deviation\tpolarization_residual\n";
        out += theorem_verdict_for(kind) + "\t" + fmt(report.gram_residual) + "\t" +
               fmt(report.max_unit_norm_deviation) + "\t" +
               fmt(report.polarization_residual) + "\n";
        sink.write(out);
    } else {
        std::string out = theorem_verdict_for(kind) + " — " +
                          admissibility_for(kind) + "\n";
        out += "  gram residual ||U†U - I||_F    " + fmt(report.gram_residual) +
               "\n";
        out += "  max sampled norm deviation     " +
               fmt(report.max_unit_norm_deviation) + "\n";
        out += "  polarization residual          " +
               fmt(report.polarization_residual) + "\n";
        if (report.witness) {
            const double deviation =
                std::abs(qsim::norm(qsim::apply(op.matrix(), *report.witness)) - 1.0);
            out += "  witness (norm deviation " + fmt(deviation) +
                   "): " + qsim::io::vector_to_json(*report.witness).dump() + "\n";
        } else {
            out += "  witness: none (norms preserved at tolerance)\n";
        }
        sink.write(out);
    }
    return kind == qsim::OperatorKind::Singular ? kExitInadmissible : kExitOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int run_sweep(const std::vector<double>& epsilons, std::int64_t trials,
              std::uint64_t seed, const std::string& format,
              const OutputSink& sink) {
    if (epsilons.empty()) {
        throw qsim::InvalidInputError("sweep: need at least one epsilon");
    }
    const std::vector<qsim::SweepRow> table =
        qsim::error_rate_sweep(epsilons, trials, seed);
    if (format == "json") {
        sink.write(dump(qsim::io::sweep_to_json(table)));
    } else {
        // Human and TSV share the table layout.
        sink.write(qsim::io::sweep_to_tsv(table));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum state-vector simulator: two Born-rule formulations, "
                 "general linear time evolution, and the entanglement "
                 "signaling experiment"};
    app.require_subcommand(1);

    std::string format = "human";
    std::string out_path;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "tsv", "human"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "Write output to this file instead of stdout");

    double tolerance = qsim::tol::kClassify;
    std::uint64_t seed = qsim::defaults::kSeed;
    std::int64_t trials = qsim::defaults::kTrials;

    // classify
    auto* classify = app.add_subcommand(
        "classify", "Classify an operator: Unitary / ProportionalUnitary / "
                    "GeneralInvertible / Singular")->fallthrough();
    std::string classify_matrix;
    classify->add_option("matrix", classify_matrix, "Matrix JSON file")->required();
    classify->add_option("--tol", tolerance, "Classification tolerance")
        ->check(CLI::PositiveNumber);

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Apply an evolution engine to a state")->fallthrough();
    std::string evolve_engine = "unitary";
    std::string evolve_state;
    std::string evolve_operator;
    evolve->add_option("--engine", evolve_engine,
                       "unitary (standard), linear (axiom set B', norms drift), "
                       "manual (B' in formulation A: rescale to the unit sphere)")
        ->check(CLI::IsMember({"unitary", "linear", "manual"}))
        ->capture_default_str();
    evolve->add_option("--state", evolve_state, "State JSON file")->required();
    evolve->add_option("--operator", evolve_operator, "Operator matrix JSON file")
        ->required();
    evolve->add_option("--tol", tolerance, "Classification tolerance")
        ->check(CLI::PositiveNumber);

    // measure
    auto* measure = app.add_subcommand(
        "measure", "Born-rule outcome distribution in both formulations")->fallthrough();
    std::string measure_state;
    std::string measure_observable;
    std::int64_t measure_samples = 0;
    measure->add_option("--state", measure_state, "State JSON file")->required();
    measure->add_option("--observable", measure_observable, "Observable JSON file")
        ->required();
    measure->add_option("--samples", measure_samples,
                        "Also draw this many seeded measurements");
    measure->add_option("--seed", seed, "RNG seed");

    // bell-signal
    auto* bell = app.add_subcommand(
        "bell-signal", "Entanglement signaling protocol under the linear engine")->fallthrough();
    qsim::SignalingConfig cfg;
    bell->add_option("--epsilon", cfg.epsilon, "Gate parameter in (0, 1)")
        ->capture_default_str();
    bell->add_option("--bit", cfg.bit_to_send, "Bit Alice transmits (0 or 1)")
        ->check(CLI::Range(0, 1))
        ->capture_default_str();
    bell->add_option("--trials", cfg.n_trials, "Monte Carlo trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bell->add_option("--seed", cfg.rng_seed, "RNG seed")->capture_default_str();

    // no-comm-check
    auto* nocomm = app.add_subcommand(
        "no-comm-check", "Unitary control: Bob's marginal never moves")->fallthrough();
    int n_unitaries = qsim::defaults::kNoCommUnitaries;
    nocomm->add_option("--unitaries", n_unitaries, "Number of random unitaries")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    nocomm->add_option("--seed", seed, "RNG seed");

    // theorem-check
    auto* theorem = app.add_subcommand(
        "theorem-check", "Norm-preservation laboratory for one operator")->fallthrough();
    std::string theorem_matrix;
    int theorem_samples = qsim::defaults::kTheoremSamples;
    theorem->add_option("matrix", theorem_matrix, "Matrix JSON file")->required();
    theorem->add_option("--samples", theorem_samples, "Random unit vectors to sample")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    theorem->add_option("--seed", seed, "RNG seed");
    theorem->add_option("--tol", tolerance, "Classification tolerance")
        ->check(CLI::PositiveNumber);

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Error rate vs epsilon table (analytic and empirical)")->fallthrough();
    std::vector<double> sweep_epsilons{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    sweep->add_option("--epsilons", sweep_epsilons, "Epsilon values")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--trials", trials, "Trials per (epsilon, bit)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    const OutputSink sink{out_path};
    try {
        if (app.got_subcommand(classify)) {
            return run_classify(classify_matrix, tolerance, format, sink);
        }
        if (app.got_subcommand(evolve)) {
            return run_evolve(evolve_engine, evolve_state, evolve_operator, tolerance,
                              format, sink);
        }
        if (app.got_subcommand(measure)) {
            return run_measure(measure_state, measure_observable, measure_samples,
                               seed, format, sink);
        }
        if (app.got_subcommand(bell)) {
            return run_bell_signal(cfg, format, sink);
        }
        if (app.got_subcommand(nocomm)) {
            return run_no_comm(n_unitaries, seed, format, sink);
        }
        if (app.got_subcommand(theorem)) {
            return run_theorem_check(theorem_matrix, theorem_samples, seed, tolerance,
                                     format, sink);
        }
        if (app.got_subcommand(sweep)) {
            return run_sweep(sweep_epsilons, trials, seed, format, sink);
        }
        std::fputs("no subcommand selected\n", stderr);
        return kExitInvalidInput;
    } catch (const qsim::InadmissibleOperatorError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInadmissible;
    } catch (const qsim::NumericContractError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericContract;
    } catch (const qsim::InvalidInputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalidInput;
    }
}
