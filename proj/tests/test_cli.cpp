#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

// Drives the installed binary end to end: command wiring, exit codes, and
// byte determinism of every report format.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(LEFLAB_CLI_PATH) + " " + args + " > /tmp/cli_out.txt 2> /tmp/cli_err.txt";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp("/tmp/cli_out.txt");
  r.err = slurp("/tmp/cli_err.txt");
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(LEFLAB_FIXTURE_DIR) + "/" + name + ".json";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("validate passes a verified fixture and reports each axiom") {
  const RunResult r = run_cli("validate " + fixture("heis3"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "jacobi (d d = 0): pass"));
  CHECK(contains(r.out, "contact (eta wedge (d eta)^n nonzero): pass (n = 1)"));
  CHECK(contains(r.out, "normality: pass"));
  CHECK(contains(r.out, "verdict: verified Sasakian structure"));
}

TEST_CASE("validate reports failed axioms with exit 3") {
  const RunResult r = run_cli("validate " + fixture("n5_contact"));
  CHECK(r.exit_code == 3);
  CHECK(contains(r.out, "phi_squared: fail"));
  CHECK(contains(r.out, "normality: fail"));
  CHECK(contains(r.out, "verdict: not verified"));
}

TEST_CASE("validate reports a non-contact eta with exit 3") {
  const RunResult r = run_cli("validate " + fixture("abelian3"));
  CHECK(r.exit_code == 3);
  CHECK(contains(r.out, "contact (eta wedge (d eta)^n nonzero): fail"));
}

TEST_CASE("cohomology output is frozen byte for byte") {
  const RunResult r = run_cli("cohomology " + fixture("heis5"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "fixture heis5 (dim 5)\n"
        "b_0 = 1\n"
        "b_1 = 4\n"
        "b_2 = 5\n"
        "b_3 = 5\n"
        "b_4 = 4\n"
        "b_5 = 1\n"
        "euler characteristic = 0\n");
}

TEST_CASE("cohomology --degree lists representative classes") {
  const RunResult r = run_cli("cohomology " + fixture("heis3") + " --degree 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "fixture heis3 (dim 3)\n"
        "b_1 = 2\n"
        "  class [e1]\n"
        "  class [e2]\n");
  CHECK(run_cli("cohomology " + fixture("heis3") + " --degree 4").exit_code == 1);
}

TEST_CASE("identities passes on a verified structure") {
  const RunResult r = run_cli("identities " + fixture("heis3"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "identity catalog (20 entries):"));
  CHECK(contains(r.out, "i.k=1: pass"));
  CHECK(contains(r.out, "dual route crosscheck (codifferential ladder k = 1): pass"));
  CHECK(contains(r.out, "all operator identities hold"));
}

TEST_CASE("identities refuses an unverified structure naming the axioms") {
  const RunResult r = run_cli("identities " + fixture("n5_contact"));
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  CHECK(contains(r.err, "does not verify as a Sasakian structure"));
  CHECK(contains(r.err, "phi_squared, metric_compatibility, normality"));
}

TEST_CASE("ladder traces every harmonic seed through its stations") {
  const RunResult r = run_cli("ladder " + fixture("heis3"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "(p = 0, nu = 0, closed, via seed)  1"));
  CHECK(contains(r.out, "(p = 2, nu = 1, closed, via L)  -e12"));
  CHECK(contains(r.out, "(p = 3, nu = 0, coclosed, via eps_eta)  -e123"));
  CHECK(contains(r.out, "chain terminates: yes"));

  const RunResult single = run_cli("ladder " + fixture("heis5") + " --degree 1");
  CHECK(single.exit_code == 0);
  CHECK(contains(single.out, "degree 1 (harmonic dimension 4):"));
  CHECK(!contains(single.out, "degree 0"));

  CHECK(run_cli("ladder " + fixture("heis3") + " --degree 2").exit_code == 1);
  CHECK(run_cli("ladder " + fixture("n5_contact")).exit_code == 1);
}

TEST_CASE("figure emits the frozen TSV diagram") {
  const RunResult r = run_cli("figure " + fixture("heis3"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "node\t0\t0\tclosed\t1\n"
        "node\t1\t0\tclosed\t2\n"
        "node\t1\t1\tcoclosed\t1\n"
        "node\t2\t0\tcoclosed\t2\n"
        "node\t2\t1\tclosed\t1\n"
        "node\t3\t0\tcoclosed\t1\n"
        "edge\t0\t0\t1\t1\teps_eta/i_xi\n"
        "edge\t1\t0\t2\t0\teps_eta/i_xi\n"
        "edge\t1\t1\t2\t1\td/delta\n"
        "edge\t2\t1\t3\t0\teps_eta/i_xi\n");
}

TEST_CASE("figure --out writes the same bytes as stdout") {
  const RunResult streamed = run_cli("figure " + fixture("heis5"));
  const RunResult filed = run_cli("figure " + fixture("heis5") + " --out /tmp/cli_figure.tsv");
  CHECK(streamed.exit_code == 0);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp("/tmp/cli_figure.tsv") == streamed.out);
}

TEST_CASE("lefschetz decides both verdicts with the matching exit codes") {
  const RunResult pass = run_cli("lefschetz " + fixture("heis3"));
  CHECK(pass.exit_code == 0);
  CHECK(contains(pass.out, "harmonic cross-validation: enabled (metric verifies)"));
  CHECK(contains(pass.out, "verdict: lefschetz_contact"));

  const RunResult obstructed = run_cli("lefschetz " + fixture("n5_contact"));
  CHECK(obstructed.exit_code == 3);
  CHECK(contains(obstructed.out, "harmonic cross-validation: skipped"));
  CHECK(contains(obstructed.out,
                 "relation p = 1: well defined: yes; covers every class: yes; bijective: no"));
  CHECK(contains(obstructed.out, "relation p = 2: well defined: no"));
  CHECK(contains(obstructed.out, "pairing p = 1: 3 x 3 matrix, rank 2"));
  CHECK(contains(obstructed.out, "parity b_1 = 3: odd"));
  CHECK(contains(obstructed.out,
                 "- relation at p = 1 is not the graph of an isomorphism "
                 "(induced map is not bijective)"));
  CHECK(contains(obstructed.out,
                 "- relation at p = 2 is not the graph of an isomorphism (not well defined)"));
  CHECK(contains(obstructed.out, "- betti number b_1 = 3 is odd"));

  CHECK(run_cli("lefschetz " + fixture("abelian3")).exit_code == 1);
}

TEST_CASE("crosscheck agrees across distinct metrics and the relation route") {
  const RunResult two = run_cli("crosscheck " + fixture("heis3") + " --metric2 " +
                                fixture("heis3_shear"));
  CHECK(two.exit_code == 0);
  CHECK(contains(two.out, "structures distinct: yes"));
  CHECK(contains(two.out, "all duality routes agree"));

  const RunResult one = run_cli("crosscheck " + fixture("heis5"));
  CHECK(one.exit_code == 0);
  CHECK(contains(one.out, "structures distinct: no (same structure both routes)"));

  const RunResult mismatch = run_cli("crosscheck " + fixture("heis5") + " --metric2 " +
                                     fixture("heis3_shear"));
  CHECK(mismatch.exit_code == 1);
  CHECK(contains(mismatch.err, "different complexes"));
}

TEST_CASE("json reports are byte-deterministic across runs") {
  const std::string cmd = "lefschetz " + fixture("heis5") + " --json";
  const RunResult first = run_cli(cmd);
  const RunResult second = run_cli(cmd);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(contains(first.out, "\"tool_version\": \"1.0.0\""));
  CHECK(contains(first.out, "\"lefschetz_contact\": true"));

  const RunResult figure1 = run_cli("figure " + fixture("heis5") + " --json");
  const RunResult figure2 = run_cli("figure " + fixture("heis5") + " --json");
  CHECK(figure1.out == figure2.out);
  CHECK(contains(figure1.out, "\"family\": \"closed\""));
}

TEST_CASE("malformed inputs and bad usage exit 1") {
  CHECK(run_cli("validate /nonexistent.json").exit_code == 1);
  CHECK(run_cli("bogus " + fixture("heis3")).exit_code == 1);
  CHECK(run_cli("validate").exit_code == 1);
  CHECK(run_cli("validate " + fixture("heis3") + " --bogus").exit_code == 1);
  CHECK(run_cli("ladder " + fixture("heis3") + " --degree -1").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);

  std::ofstream bad("/tmp/cli_badfloat.json", std::ios::binary);
  bad << R"({"name": "x", "dim": 3, "diff1": {"e3": [[0.5, 1, 2]]}, "eta": [["1", 3]]})";
  bad.close();
  const RunResult r = run_cli("validate /tmp/cli_badfloat.json");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "floating-point numbers are not accepted"));
}
