#include "qsim/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace qsim::io {

namespace {

[[noreturn]] void parse_failure(const char* what, const std::string& detail) {
    throw InvalidInputError(std::string(what) + ": " + detail);
}

}  // namespace

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        parse_failure("json", e.what());
    }
}

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ============================================================================
// Scalars, vectors, matrices
// ============================================================================

Json scalar_to_json(const ComplexScalar& z) {
    return Json::array({z.real(), z.imag()});
}

ComplexScalar scalar_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        parse_failure("complex scalar", "expected a two-element numeric array");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const ComplexVector& v) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) entries.push_back(scalar_to_json(v[i]));
    return Json{{"dim", v.dim()}, {"entries", std::move(entries)}};
}

ComplexVector vector_from_json(const Json& j) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        const Json& entries = j.at("entries");
        if (!entries.is_array() || entries.size() != dim) {
            parse_failure("vector", "entry count does not match dim");
        }
        std::vector<ComplexScalar> out;
        out.reserve(dim);
        for (const auto& e : entries) out.push_back(scalar_from_json(e));
        return ComplexVector(std::move(out));
    } catch (const Json::exception& e) {
        parse_failure("vector", e.what());
    }
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json entries = Json::array();
    for (const auto& z : m.entries()) entries.push_back(scalar_to_json(z));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    try {
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        const Json& entries = j.at("entries");
        if (!entries.is_array() || entries.size() != rows * cols) {
            parse_failure("matrix", "entry count does not match rows*cols");
        }
        std::vector<ComplexScalar> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(scalar_from_json(e));
        return ComplexMatrix(rows, cols, std::move(out));
    } catch (const Json::exception& e) {
        parse_failure("matrix", e.what());
    }
}

// ============================================================================
// States
// ============================================================================

namespace {

Json tagged_vector(const ComplexVector& v, const char* representation) {
    Json j = vector_to_json(v);
    j["representation"] = representation;
    return j;
}

}  // namespace

Json state_to_json(const RawState& s) { return tagged_vector(s.vec(), "raw"); }
Json state_to_json(const UnitState& s) { return tagged_vector(s.vec(), "unit"); }
Json state_to_json(const CanonicalRay& s) { return tagged_vector(s.vec(), "ray"); }

ParsedState state_from_json(const Json& j) {
    std::string representation = "raw";
    if (j.contains("representation")) {
        if (!j.at("representation").is_string()) {
            parse_failure("state", "representation must be a string");
        }
        representation = j.at("representation").get<std::string>();
    }
    if (representation != "raw" && representation != "unit" && representation != "ray") {
        parse_failure("state", "unknown representation '" + representation + "'");
    }
    return ParsedState{std::move(representation), vector_from_json(j)};
}

// ============================================================================
// Observables and distributions
// ============================================================================

Json observable_to_json(const Observable& obs) {
    Json j = matrix_to_json(obs.matrix());
    j["degeneracy_tol"] = obs.degeneracy_tol();
    return j;
}

Observable observable_from_json(const Json& j) {
    double degeneracy_tol = tol::kDegeneracy;
    if (j.contains("degeneracy_tol")) {
        if (!j.at("degeneracy_tol").is_number()) {
            parse_failure("observable", "degeneracy_tol must be a number");
        }
        degeneracy_tol = j.at("degeneracy_tol").get<double>();
    }
    return Observable(matrix_from_json(j), degeneracy_tol);
}

Json distribution_to_json(const OutcomeDistribution& dist) {
    Json outcomes = Json::array();
    for (const auto& o : dist.outcomes()) {
        outcomes.push_back(
            Json{{"eigenvalue", o.eigenvalue}, {"probability", o.probability}});
    }
    return Json{{"outcomes", std::move(outcomes)}};
}

std::string distribution_to_tsv(const OutcomeDistribution& dist) {
    std::string out = "eigenvalue\tprobability\n";
    for (const auto& o : dist.outcomes()) {
        out += format_double(o.eigenvalue);
        out += '\t';
        out += format_double(o.probability);
        out += '\n';
    }
    return out;
}

// ============================================================================
// Operator classes and theorem reports
// ============================================================================

Json operator_class_to_json(const OperatorClass& cls) {
    Json j{{"tag", to_string(cls.kind)}};
    if (cls.kind == OperatorKind::ProportionalUnitary) {
        j["scale"] = scalar_to_json(cls.scale);
    }
    return j;
}

Json theorem_report_to_json(const TheoremReport& report) {
    Json j{{"operator_class", operator_class_to_json(report.operator_class)},
           {"max_unit_norm_deviation", report.max_unit_norm_deviation},
           {"polarization_residual", report.polarization_residual},
           {"gram_residual", report.gram_residual}};
    if (report.witness) {
        j["witness"] = vector_to_json(*report.witness);
    }
    return j;
}

// ============================================================================
// Composite objects
// ============================================================================

Json density_to_json(const DensityMatrix& rho) {
    Json j = matrix_to_json(rho.matrix());
    j["normalized"] = rho.normalized();
    return j;
}

DensityMatrix density_from_json(const Json& j) {
    if (!j.contains("normalized") || !j.at("normalized").is_boolean()) {
        parse_failure("density matrix", "missing boolean field 'normalized'");
    }
    return DensityMatrix(matrix_from_json(j), j.at("normalized").get<bool>());
}

Json register_to_json(const QubitRegister& reg) {
    return Json{{"n_qubits", reg.n_qubits()},
                {"sites", reg.sites()},
                {"state", vector_to_json(reg.state().vec())}};
}

QubitRegister register_from_json(const Json& j) {
    try {
        const int n_qubits = j.at("n_qubits").get<int>();
        const auto sites = j.at("sites").get<std::vector<std::string>>();
        return QubitRegister(n_qubits, RawState(vector_from_json(j.at("state"))),
                             sites);
    } catch (const Json::exception& e) {
        parse_failure("qubit register", e.what());
    }
}

// ============================================================================
// Experiment reports
// ============================================================================

Json signaling_report_to_json(const SignalingReport& report) {
    return Json{
        {"analytic_bob_distribution",
         distribution_to_json(report.analytic_bob_distribution)},
        {"empirical_counts", Json{{"count_0", report.count_0},
                                  {"count_1", report.count_1}}},
        {"empirical_error_rate", report.empirical_error_rate},
        {"analytic_error_rate", report.analytic_error_rate},
        {"reduced_density_unnormalized",
         density_to_json(report.reduced_density_unnormalized)}};
}

Json no_comm_report_to_json(const NoCommReport& report) {
    return Json{{"n_unitaries", report.n_unitaries},
                {"max_marginal_deviation", report.max_marginal_deviation}};
}

Json sweep_to_json(const std::vector<SweepRow>& table) {
    Json rows = Json::array();
    for (const auto& row : table) {
        rows.push_back(Json{{"epsilon", row.epsilon},
                            {"analytic_error", row.analytic_error},
                            {"empirical_error_bit0", row.empirical_error_bit0},
                            {"empirical_error_bit1", row.empirical_error_bit1},
                            {"empirical_error_mean", row.empirical_error_mean}});
    }
    return Json{{"rows", std::move(rows)}};
}

std::string sweep_to_tsv(const std::vector<SweepRow>& table) {
    std::string out =
        "epsilon\tanalytic_error\tempirical_error_bit0\tempirical_error_bit1\t"
        "empirical_error_mean\n";
    for (const auto& row : table) {
        out += format_double(row.epsilon);
        out += '\t';
        out += format_double(row.analytic_error);
        out += '\t';
        out += format_double(row.empirical_error_bit0);
        out += '\t';
        out += format_double(row.empirical_error_bit1);
        out += '\t';
        out += format_double(row.empirical_error_mean);
        out += '\n';
    }
    return out;
}

}  // namespace qsim::io
