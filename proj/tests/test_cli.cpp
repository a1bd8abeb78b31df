#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "qsim/serialize.hpp"
#include "test_helpers.hpp"

// QSIM_CLI_PATH is injected by the build.

using namespace qsim;
using namespace qsim::test;

namespace {

struct CliResult {
    int exit_code;
    std::string stdout_text;
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(QSIM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    return CliResult{WEXITSTATUS(status), output};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path =
        (std::filesystem::temp_directory_path() / ("cli_input_" + name)).string();
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
    return path;
}

std::string matrix_file(const std::string& name, const ComplexMatrix& m) {
    return write_temp(name, io::matrix_to_json(m).dump());
}

}  // namespace

TEST_CASE("classify: verdicts and exit codes") {
    const std::string id = matrix_file("id.json", ComplexMatrix::identity(2));
    const std::string gen =
        matrix_file("gen.json", ComplexMatrix::diagonal({1.0, 0.5}));
    const std::string sing =
        matrix_file("sing.json", ComplexMatrix::diagonal({1.0, 0.0}));

    const CliResult unitary = run_cli("classify " + id);
    CHECK(unitary.exit_code == 0);
    CHECK(unitary.stdout_text.find("UNITARY") == 0);

    const CliResult general = run_cli("classify " + gen);
    CHECK(general.exit_code == 0);
    CHECK(general.stdout_text.find("NON-UNITARY (B′ only)") == 0);

    const CliResult singular = run_cli("classify " + sing);
    CHECK(singular.exit_code == 2);
    CHECK(singular.stdout_text.find("SINGULAR") == 0);

    const CliResult prop = run_cli(
        "classify " +
        matrix_file("prop.json", ComplexScalar{2.0, 0.0} * hadamard()) +
        " --format json");
    CHECK(prop.exit_code == 0);
    const io::Json j = io::parse_text(prop.stdout_text);
    CHECK(j["verdict"] == "PROPORTIONAL-UNITARY");
    CHECK(j["operator_class"]["scale"][0].get<double>() ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("classify: parse failure exits 1") {
    const std::string bad = write_temp("bad.json", "{broken");
    CHECK(run_cli("classify " + bad).exit_code == 1);
    CHECK(run_cli("classify /does/not/exist.json").exit_code == 1);
}

TEST_CASE("evolve: engines and admissibility exit codes") {
    const double s = 1.0 / std::sqrt(2.0);
    const std::string unit_state = write_temp(
        "unit_state.json", io::state_to_json(UnitState(V({s, s}))).dump());
    const std::string hadamard_file = matrix_file("had.json", hadamard());
    const std::string stretch = matrix_file("stretch.json",
                                            ComplexMatrix::diagonal({1.0, 0.5}));
    const std::string sing =
        matrix_file("sing2.json", ComplexMatrix::diagonal({1.0, 0.0}));

    SUBCASE("unitary engine evolves a unit state") {
        const CliResult r = run_cli("evolve --engine unitary --state " + unit_state +
                                    " --operator " + hadamard_file + " --format json");
        CHECK(r.exit_code == 0);
        const io::Json j = io::parse_text(r.stdout_text);
        CHECK(j["state"]["representation"] == "unit");
        CHECK(j["state"]["entries"][0][0].get<double>() ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("non-unitary operator on the unitary engine exits 2") {
        CHECK(run_cli("evolve --engine unitary --state " + unit_state +
                      " --operator " + stretch)
                  .exit_code == 2);
    }
    SUBCASE("singular operator on the linear engine exits 2") {
        CHECK(run_cli("evolve --engine linear --state " + unit_state +
                      " --operator " + sing)
                  .exit_code == 2);
    }
    SUBCASE("manual engine accepts the stretch gate") {
        const CliResult r = run_cli("evolve --engine manual --state " + unit_state +
                                    " --operator " + stretch + " --format json");
        CHECK(r.exit_code == 0);
    }
    SUBCASE("norm-preservation contract violation exits 3") {
        // A gate that squeaks past classification at a loose tolerance but
        // shrinks the second axis by far more than the engine contract.
        const std::string skewed =
            matrix_file("skewed.json", ComplexMatrix::diagonal({1.0, 0.999}));
        const std::string e2_state = write_temp(
            "e2.json", io::state_to_json(UnitState(V({0.0, 1.0}))).dump());
        const CliResult r = run_cli("evolve --engine unitary --tol 0.5 --state " +
                                    e2_state + " --operator " + skewed);
        CHECK(r.exit_code == 3);
    }
}

TEST_CASE("measure: both formulations shown, empirical sampling seeded") {
    const std::string raw_state = write_temp(
        "raw34.json", io::state_to_json(RawState(V({3.0, 4.0 * kI}))).dump());
    const std::string bit_obs = write_temp(
        "bit.json",
        io::observable_to_json(Observable(ComplexMatrix::diagonal({0.0, 1.0})))
            .dump());

    const CliResult human =
        run_cli("measure --state " + raw_state + " --observable " + bit_obs);
    CHECK(human.exit_code == 0);
    CHECK(human.stdout_text.find("formulation A") != std::string::npos);
    CHECK(human.stdout_text.find("formulation B") != std::string::npos);
    CHECK(human.stdout_text.find("0.36") != std::string::npos);

    const CliResult json = run_cli("measure --state " + raw_state + " --observable " +
                                   bit_obs + " --samples 5000 --seed 9 --format json");
    CHECK(json.exit_code == 0);
    const io::Json j = io::parse_text(json.stdout_text);
    CHECK(j["formulation_A"]["outcomes"][0]["probability"].get<double>() ==
          doctest::Approx(0.36).epsilon(1e-12));
    CHECK(j["formulation_B"]["outcomes"][1]["probability"].get<double>() ==
          doctest::Approx(0.64).epsilon(1e-12));
    CHECK(j["empirical"]["counts"][0].get<int>() +
              j["empirical"]["counts"][1].get<int>() ==
          5000);

    const std::string bad_obs = write_temp(
        "nonherm.json",
        io::matrix_to_json(M(2, 2, {0.0, 1.0, 0.0, 0.0})).dump());
    CHECK(run_cli("measure --state " + raw_state + " --observable " + bad_obs)
              .exit_code == 1);
}

TEST_CASE("bell-signal: determinism and flag validation") {
    const std::string flags = "bell-signal --epsilon 0.1 --bit 0 --trials 2000 "
                              "--seed 42 --format json";
    const CliResult first = run_cli(flags);
    const CliResult second = run_cli(flags);
    CHECK(first.exit_code == 0);
    CHECK(first.stdout_text == second.stdout_text);  // byte-identical

    const io::Json j = io::parse_text(first.stdout_text);
    CHECK(j["analytic_bob_distribution"]["outcomes"][0]["probability"].get<double>() ==
          doctest::Approx(1.0 / 1.01).epsilon(1e-14));

    CHECK(run_cli("bell-signal --epsilon 0").exit_code == 1);
    CHECK(run_cli("bell-signal --epsilon 1").exit_code == 1);
    CHECK(run_cli("bell-signal --bit 2").exit_code == 1);
    CHECK(run_cli("bell-signal --trials 0").exit_code == 1);
}

TEST_CASE("theorem-check verdict lines") {
    const std::string had = matrix_file("had2.json", hadamard());
    const CliResult unitary = run_cli("theorem-check " + had + " --samples 100");
    CHECK(unitary.exit_code == 0);
    CHECK(unitary.stdout_text.find("admissible under A′ and B′") !=
          std::string::npos);

    const std::string stretch =
        matrix_file("stretch2.json", ComplexMatrix::diagonal({1.0, 0.5}));
    const CliResult general = run_cli("theorem-check " + stretch + " --samples 100");
    CHECK(general.exit_code == 0);
    CHECK(general.stdout_text.find("admissible under B′ only") !=
          std::string::npos);
    CHECK(general.stdout_text.find("witness") != std::string::npos);

    const std::string dilation = matrix_file(
        "dilation.json", ComplexScalar{2.0, 0.0} * ComplexMatrix::identity(2));
    const CliResult prop = run_cli("theorem-check " + dilation + " --samples 100");
    CHECK(prop.exit_code == 0);
    CHECK(prop.stdout_text.find(
              "physically standard under manual normalization") != std::string::npos);

    const std::string sing =
        matrix_file("sing3.json", ComplexMatrix::diagonal({1.0, 0.0}));
    const CliResult singular = run_cli("theorem-check " + sing + " --samples 100");
    CHECK(singular.exit_code == 2);
    CHECK(singular.stdout_text.find("SINGULAR") != std::string::npos);
}

TEST_CASE("no-comm-check and sweep") {
    const CliResult nocomm = run_cli("no-comm-check --unitaries 10 --seed 4 --format json");
    CHECK(nocomm.exit_code == 0);
    CHECK(io::parse_text(nocomm.stdout_text)["max_marginal_deviation"].get<double>() <=
          1e-10);

    const CliResult sweep =
        run_cli("sweep --epsilons 0.1,0.3 --trials 500 --seed 6 --format tsv");
    CHECK(sweep.exit_code == 0);
    CHECK(sweep.stdout_text.find("epsilon\tanalytic_error") == 0);

    // --out writes the same bytes to a file.
    const std::string out_path = write_temp("sweep_out.tsv", "");
    const CliResult to_file = run_cli(
        "sweep --epsilons 0.1,0.3 --trials 500 --seed 6 --format tsv --out " +
        out_path);
    CHECK(to_file.exit_code == 0);
    std::ifstream in(out_path, std::ios::binary);
    REQUIRE(in.good());
    std::string file_content((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
    CHECK(file_content == sweep.stdout_text);
}

TEST_CASE("every seeded subcommand is bit-reproducible") {
    const std::string raw_state = write_temp(
        "det_state.json", io::state_to_json(RawState(V({3.0, 4.0 * kI}))).dump());
    const std::string bit_obs = write_temp(
        "det_obs.json",
        io::observable_to_json(Observable(ComplexMatrix::diagonal({0.0, 1.0})))
            .dump());

    const std::vector<std::string> invocations{
        "measure --state " + raw_state + " --observable " + bit_obs +
            " --samples 300 --seed 17 --format json",
        "bell-signal --epsilon 0.2 --bit 1 --trials 300 --seed 17 --format json",
        "no-comm-check --unitaries 5 --seed 17 --format json",
        "theorem-check " + write_temp("det_had.json",
                                      io::matrix_to_json(hadamard()).dump()) +
            " --samples 64 --seed 17 --format json",
        "sweep --epsilons 0.2,0.4 --trials 200 --seed 17 --format json",
    };
    for (const std::string& invocation : invocations) {
        CAPTURE(invocation);
        const CliResult first = run_cli(invocation);
        const CliResult second = run_cli(invocation);
        CHECK(first.exit_code == 0);
        CHECK(first.stdout_text == second.stdout_text);
    }
}

TEST_CASE("unknown flags and missing subcommand exit 1") {
    CHECK(run_cli("classify").exit_code == 1);          // missing argument
    CHECK(run_cli("frobnicate").exit_code == 1);        // unknown subcommand
    CHECK(run_cli("bell-signal --bogus 1").exit_code == 1);
}
