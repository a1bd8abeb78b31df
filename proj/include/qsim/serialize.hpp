#ifndef QSIM_SERIALIZE_HPP
#define QSIM_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "qsim/composite.hpp"
#include "qsim/evolution.hpp"
#include "qsim/linalg.hpp"
#include "qsim/measurement.hpp"
#include "qsim/signaling.hpp"
#include "qsim/states.hpp"

// Repo-wide JSON schema:
//   complex scalar  [re, im]
//   vector          {"dim": n, "entries": [[re, im], ...]}
//   matrix          {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major
//   state           vector schema + "representation": "raw" | "unit" | "ray"
//   observable      matrix schema + "degeneracy_tol"
//   density matrix  matrix schema + "normalized"
// Round-trips are bit-exact: parsing a dumped document reproduces every
// double identically.

namespace qsim::io {

using Json = nlohmann::json;

// Wraps nlohmann parse errors into InvalidInputError.
Json parse_text(const std::string& text);
Json parse_file(const std::string& path);

Json scalar_to_json(const ComplexScalar& z);
ComplexScalar scalar_from_json(const Json& j);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json state_to_json(const RawState& s);
Json state_to_json(const UnitState& s);
Json state_to_json(const CanonicalRay& s);

struct ParsedState {
    std::string representation;  // "raw", "unit" or "ray"
    ComplexVector vec;
};
ParsedState state_from_json(const Json& j);

Json observable_to_json(const Observable& obs);
Observable observable_from_json(const Json& j);

Json distribution_to_json(const OutcomeDistribution& dist);
std::string distribution_to_tsv(const OutcomeDistribution& dist);

Json operator_class_to_json(const OperatorClass& cls);
Json theorem_report_to_json(const TheoremReport& report);

Json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

Json register_to_json(const QubitRegister& reg);
QubitRegister register_from_json(const Json& j);

Json signaling_report_to_json(const SignalingReport& report);
Json no_comm_report_to_json(const NoCommReport& report);

Json sweep_to_json(const std::vector<SweepRow>& table);
std::string sweep_to_tsv(const std::vector<SweepRow>& table);

// "%.17g" formatting used by the TSV emitters.
std::string format_double(double x);

}  // namespace qsim::io

#endif  // QSIM_SERIALIZE_HPP
