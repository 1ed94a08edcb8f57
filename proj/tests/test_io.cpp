#include <string>

#include "doctest.h"

#include "algebras.hpp"
#include "leflab/io.hpp"
#include "leflab/sasakian.hpp"

using namespace leflab;

namespace {

const char* kHeis3Json = R"({
  "name": "heis3",
  "dim": 3,
  "diff1": {"e3": [["-2", 1, 2]]},
  "eta": [["1", 3]],
  "metric": "identity"
})";

std::string error_of(const std::string& text) {
  try {
    parse_fixture(text);
  } catch (const FixtureError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a complete fixture parses into the expected document") {
  const FixtureDocument doc = parse_fixture(kHeis3Json);
  CHECK(doc.name == "heis3");
  CHECK(doc.dim == 3);
  REQUIRE(doc.diff.size() == 3);
  CHECK(doc.diff[0].is_zero());
  CHECK(doc.diff[1].is_zero());
  CHECK(doc.diff[2] == Form::monomial(3, {1, 2}, rat(-2)));
  CHECK(doc.eta == Form::monomial(3, {3}));
  CHECK(!doc.gram.has_value());
  CHECK(!doc.phi.has_value());
  CHECK(doc.orientation == 1);

  const auto spec = doc.algebra();
  CHECK(spec.diff[2] == algebras::heisenberg(1).diff[2]);
  CHECK(doc.metric().is_identity());
}

TEST_CASE("gram matrices, phi and orientation are read exactly") {
  const FixtureDocument doc = parse_fixture(R"({
    "name": "shear",
    "dim": 3,
    "diff1": {"e3": [["-2", 1, 2]]},
    "eta": [["1", 3]],
    "metric": [["2", "-1", 0], ["-1", "1", 0], [0, 0, "1"]],
    "phi": [["-1", "-2", 0], ["1", "1", 0], [0, 0, 0]],
    "orientation": -1
  })");
  REQUIRE(doc.gram.has_value());
  CHECK(doc.gram->at(0, 0) == rat(2));
  CHECK(doc.gram->at(0, 1) == rat(-1));
  CHECK(doc.gram->at(2, 2) == rat(1));
  REQUIRE(doc.phi.has_value());
  CHECK((*doc.phi)[0][1] == rat(-2));
  CHECK(doc.orientation == -1);
  CHECK(doc.metric().orientation() == -1);

  // the parsed document assembles into a verified structure
  const auto cx =
      std::make_shared<const InvariantComplex>(InvariantComplex::build(doc.algebra()));
  const auto s = SasakianStructure::check(cx, doc.eta, doc.metric(), doc.phi);
  CHECK(s.verified());
}

TEST_CASE("rational fields accept integers and p/q strings") {
  const FixtureDocument doc = parse_fixture(R"({
    "name": "t",
    "dim": 3,
    "diff1": {"e3": [[-2, 1, 2]]},
    "eta": [["1/2", 3], ["1/2", 3]],
    "metric": [["1/4", 0, 0], [0, "4", 0], [0, 0, 1]]
  })");
  CHECK(doc.diff[2] == Form::monomial(3, {1, 2}, rat(-2)));
  CHECK(doc.eta == Form::monomial(3, {3}));  // the two halves accumulate
  CHECK(doc.gram->at(0, 0) == rat(1, 4));
}

TEST_CASE("unsorted index pairs pick up the permutation sign") {
  const FixtureDocument doc = parse_fixture(R"({
    "name": "t",
    "dim": 3,
    "diff1": {"e3": [["2", 2, 1]]},
    "eta": [["1", 3]]
  })");
  CHECK(doc.diff[2] == Form::monomial(3, {1, 2}, rat(-2)));
}

TEST_CASE("parse errors carry the field path of the first problem") {
  CHECK(error_of("{") .find("line 1") != std::string::npos);
  CHECK(error_of("[1]").find("fixture must be a JSON object") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {}, "eta": [], "zeta": 1})")
            .find("zeta: unknown field") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "eta": []})").find("diff1: missing required field") !=
        std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 0, "diff1": {}, "eta": []})")
            .find("dim: dimension 0 outside 1..64") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {"f3": []}, "eta": []})")
            .find("diff1.f3: generator keys must look like \"e3\"") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {"e9": []}, "eta": []})")
            .find("diff1.e9: generator index 9 outside 1..3") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {"e3": [["1", 1]]}, "eta": []})")
            .find("diff1.e3[0]: expected a [coeff, i, j] triple") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {"e3": [["1", 1, 4]]}, "eta": []})")
            .find("diff1.e3[0][2]: frame index 4 outside 1..3") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {"e3": [["1", 2, 2]]}, "eta": []})")
            .find("diff1.e3[0]: repeated frame index 2") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {"e3": [[0.5, 1, 2]]}, "eta": []})")
            .find("diff1.e3[0][0]: floating-point numbers are not accepted") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {"e3": [["1/0", 1, 2]]}, "eta": []})")
            .find("diff1.e3[0][0]: bad rational \"1/0\"") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {}, "eta": [["1", 1, 2]]})")
            .find("eta[0]: expected a [coeff, i] pair") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 3, "diff1": {}, "eta": [], "metric": [[1, 2], [2, 1]]})")
            .find("metric: expected a 3 x 3 matrix") != std::string::npos);
  CHECK(error_of(
            R"({"name": "x", "dim": 2, "diff1": {}, "eta": [], "metric": [[1, 2], [3, 1]]})")
            .find("metric: Gram matrix must be symmetric") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 2, "diff1": {}, "eta": [], "metric": "euclid"})")
            .find("metric: expected \"identity\" or a Gram matrix") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "dim": 2, "diff1": {}, "eta": [], "orientation": 2})")
            .find("orientation: expected 1 or -1") != std::string::npos);
  CHECK(error_of(R"({"name": 7, "dim": 3, "diff1": {}, "eta": []})")
            .find("name: expected a string, got integer") != std::string::npos);
}

TEST_CASE("load_fixture prefixes diagnostics with the file path") {
  CHECK_THROWS_WITH_AS(load_fixture("/nonexistent/f.json"),
                       "/nonexistent/f.json: cannot open fixture file", FixtureError);
}

TEST_CASE("the figure TSV rendering is frozen") {
  FigureData figure;
  figure.nodes.push_back(FigureNode{0, Rational(0), FamilyTag::closed_family, 1});
  figure.nodes.push_back(FigureNode{1, Rational(1, 2), FamilyTag::coclosed_family, 4});
  figure.edges.push_back(FigureEdge{0, Rational(0), 1, Rational(1, 2), "eps_eta/i_xi"});
  CHECK(render_figure_tsv(figure) ==
        "node\t0\t0\tclosed\t1\n"
        "node\t1\t1/2\tcoclosed\t4\n"
        "edge\t0\t0\t1\t1/2\teps_eta/i_xi\n");
}
