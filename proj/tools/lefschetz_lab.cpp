#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leflab/identities.hpp"
#include "leflab/io.hpp"
#include "leflab/ladder.hpp"
#include "leflab/lefschetz.hpp"
#include "leflab/sasakian.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace leflab;

constexpr int kPass = 0;
constexpr int kInputError = 1;
constexpr int kInternalError = 2;
constexpr int kObstructed = 3;

struct Options {
  std::string fixture_path;
  std::string metric2_path;
  std::string out_path;
  bool json_output = false;
  int degree = -1;  // -1 = every degree
};

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument(opt.out_path + ": cannot open output file");
  out << text;
  out.flush();
  if (!out) throw std::invalid_argument(opt.out_path + ": write failed");
}

json report_header(const char* command, const FixtureDocument& doc) {
  json r;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["fixture"] = doc.name;
  r["dim"] = doc.dim;
  return r;
}

std::string dump(const json& r) { return r.dump(2) + "\n"; }

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::shared_ptr<const InvariantComplex> build_complex(const FixtureDocument& doc) {
  return std::make_shared<const InvariantComplex>(InvariantComplex::build(doc.algebra()));
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& part : parts) {
    if (!out.empty()) out += ", ";
    out += part;
  }
  return out;
}

/// Builds the structure and refuses (input error) unless every axiom holds.
SasakianStructure require_verified(std::shared_ptr<const InvariantComplex> cx,
                                   const FixtureDocument& doc, const char* action) {
  SasakianStructure s = SasakianStructure::check(std::move(cx), doc.eta, doc.metric(), doc.phi);
  if (!s.verified())
    throw std::invalid_argument(std::string("cannot ") + action +
                                ": the fixture does not verify as a Sasakian structure "
                                "(failed axioms: " +
                                join(s.axioms().failed_names()) + ")");
  return s;
}

void check_degree_range(const Options& opt, int upper, const char* bound_name) {
  if (opt.degree > upper)
    throw std::invalid_argument("--degree " + std::to_string(opt.degree) + " outside 0.." +
                                std::to_string(upper) + " (" + bound_name + ")");
}

// ---------------------------------------------------------------------------
// validate: Jacobi, contact condition, structure axioms, adjoint pairs.
// A well-formed fixture that fails a check exits 3; malformed input exits 1.

int cmd_validate(const Options& opt) {
  const FixtureDocument doc = load_fixture(opt.fixture_path);
  std::ostringstream text;
  json results;
  text << "fixture " << doc.name << " (dim " << doc.dim << ")\n";
  bool all_passed = true;

  std::shared_ptr<const InvariantComplex> cx;
  try {
    cx = build_complex(doc);
    text << "jacobi (d d = 0): pass\n";
    results["jacobi"] = json{{"passed", true}};
  } catch (const std::invalid_argument& e) {
    text << "jacobi (d d = 0): fail (" << e.what() << ")\n";
    results["jacobi"] = json{{"passed", false}, {"message", e.what()}};
    all_passed = false;
  }

  std::optional<ContactData> contact;
  if (cx) {
    try {
      contact = make_contact(*cx, doc.eta);
      text << "contact (eta wedge (d eta)^n nonzero): pass (n = " << contact->n << ")\n";
      results["contact"] = json{{"passed", true}, {"n", contact->n}};
    } catch (const std::invalid_argument& e) {
      text << "contact (eta wedge (d eta)^n nonzero): fail (" << e.what() << ")\n";
      results["contact"] = json{{"passed", false}, {"message", e.what()}};
      all_passed = false;
    }
  }

  if (contact) {
    try {
      const SasakianStructure s = SasakianStructure::check(cx, doc.eta, doc.metric(), doc.phi);
      json axioms = json::array();
      text << "structure axioms:\n";
      for (const AxiomCheck& check : s.axioms().checks) {
        text << "  " << check.name << ": " << (check.passed ? "pass" : "fail");
        if (!check.passed && !check.witness.empty()) text << " at " << check.witness;
        text << "\n";
        json entry = json{{"name", check.name}, {"passed", check.passed}};
        if (!check.passed) entry["witness"] = check.witness;
        axioms.push_back(std::move(entry));
        all_passed = all_passed && check.passed;
      }
      results["axioms"] = std::move(axioms);
      const bool adjoints = s.adjoint_pairs_check().all_passed();
      text << "adjoint pairs (eps_eta/i_xi, Lambda/L): " << (adjoints ? "pass" : "fail") << "\n";
      results["adjoint_pairs"] = adjoints;
      all_passed = all_passed && adjoints;
    } catch (const std::invalid_argument& e) {
      text << "structure axioms: fail (" << e.what() << ")\n";
      results["axioms"] = json{{"passed", false}, {"message", e.what()}};
      all_passed = false;
    } catch (const std::domain_error& e) {
      text << "structure axioms: fail (" << e.what() << ")\n";
      results["axioms"] = json{{"passed", false}, {"message", e.what()}};
      all_passed = false;
    }
  }

  results["verified"] = all_passed;
  text << "verdict: " << (all_passed ? "verified Sasakian structure" : "not verified") << "\n";

  if (opt.json_output) {
    json report = report_header("validate", doc);
    report["results"] = std::move(results);
    write_output(opt, dump(report));
  } else {
    write_output(opt, text.str());
  }
  return all_passed ? kPass : kObstructed;
}

// ---------------------------------------------------------------------------
// cohomology: Betti numbers; with --degree also the representative classes.

int cmd_cohomology(const Options& opt) {
  const FixtureDocument doc = load_fixture(opt.fixture_path);
  const auto cx = build_complex(doc);
  check_degree_range(opt, doc.dim, "dim");

  std::ostringstream text;
  json results;
  text << "fixture " << doc.name << " (dim " << doc.dim << ")\n";

  const int lo = opt.degree >= 0 ? opt.degree : 0;
  const int hi = opt.degree >= 0 ? opt.degree : doc.dim;
  json betti = json::array();
  long euler = 0;
  for (int p = lo; p <= hi; ++p) {
    const int b = cx->betti(p);
    text << "b_" << p << " = " << b << "\n";
    betti.push_back(b);
    euler += (p % 2 == 0) ? b : -b;
  }
  results["betti"] = std::move(betti);
  if (opt.degree < 0) {
    text << "euler characteristic = " << euler << "\n";
    results["euler_characteristic"] = euler;
  } else {
    json reps = json::array();
    for (const Form& rep : cx->cohomology(opt.degree).reps) {
      text << "  class [" << to_string(rep) << "]\n";
      reps.push_back(to_string(rep));
    }
    results["representatives"] = std::move(reps);
  }

  if (opt.json_output) {
    json report = report_header("cohomology", doc);
    report["results"] = std::move(results);
    write_output(opt, dump(report));
  } else {
    write_output(opt, text.str());
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// identities: the full operator catalog plus both independent adjoint routes.
// Refuses unverified structures; a catalog failure on a verified structure is
// an internal invariant violation.

int cmd_identities(const Options& opt) {
  const FixtureDocument doc = load_fixture(opt.fixture_path);
  const auto cx = build_complex(doc);
  const SasakianStructure s = require_verified(cx, doc, "verify operator identities");

  const CatalogReport catalog = verify_catalog(s);
  if (!catalog.all_passed)
    throw InternalInvariantViolation("operator identities failed on a verified structure: " +
                                     join(catalog.failed_ids()));
  const DualCrosscheckReport dual = identity_i_dual_crosscheck(s);
  if (!dual.passed())
    throw InternalInvariantViolation(
        "dual-route crosscheck failed on a verified structure (codifferential ladder k = 1)");
  const AdjointPairsReport pairs = s.adjoint_pairs_check();
  if (!pairs.all_passed())
    throw InternalInvariantViolation("adjoint pair check failed on a verified structure");

  std::ostringstream text;
  text << "fixture " << doc.name << " (dim " << doc.dim << ", n = " << s.n() << ")\n";
  text << "identity catalog (" << catalog.entries.size() << " entries):\n";
  json entries = json::array();
  for (const ResidualReport& entry : catalog.entries) {
    text << "  " << entry.id << ": pass  " << entry.display << "\n";
    entries.push_back(json{{"id", entry.id}, {"display", entry.display}, {"passed", true}});
  }
  text << "dual route crosscheck (codifferential ladder k = 1): pass\n";
  text << "adjoint pairs (eps_eta/i_xi, Lambda/L): pass\n";
  text << "all operator identities hold\n";

  if (opt.json_output) {
    json report = report_header("identities", doc);
    report["results"] = json{{"n", s.n()},
                             {"catalog", std::move(entries)},
                             {"dual_crosscheck", true},
                             {"adjoint_pairs", true},
                             {"all_passed", true}};
    write_output(opt, dump(report));
  } else {
    write_output(opt, text.str());
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// ladder: trace every harmonic seed through the L-chain stations.

int cmd_ladder(const Options& opt) {
  const FixtureDocument doc = load_fixture(opt.fixture_path);
  const auto cx = build_complex(doc);
  const SasakianStructure s = require_verified(cx, doc, "trace the eigenvalue ladder");
  const int n = s.n();
  check_degree_range(opt, n, "n");

  std::ostringstream text;
  text << "fixture " << doc.name << " (dim " << doc.dim << ", n = " << n << ")\n";
  json degrees = json::array();

  const int lo = opt.degree >= 0 ? opt.degree : 0;
  const int hi = opt.degree >= 0 ? opt.degree : n;
  for (int p = lo; p <= hi; ++p) {
    const std::vector<Form> seeds = s.hodge().harmonic_forms(p);
    text << "degree " << p << " (harmonic dimension " << seeds.size() << "):\n";
    json traces = json::array();
    for (const Form& seed : seeds) {
      const LadderTrace trace = ladder_trace(s, seed);
      bool factorizations_ok = true;
      for (const FactorizationCheck& f : trace.factorizations)
        factorizations_ok = factorizations_ok && f.all_passed();
      if (!factorizations_ok || !trace.chain_terminates)
        throw InternalInvariantViolation("ladder witnesses failed on a verified structure");

      text << "  seed " << to_string(seed) << "\n";
      json nodes = json::array();
      for (const LadderNode& node : trace.nodes) {
        text << "    (p = " << node.degree << ", nu = " << to_string(node.nu) << ", "
             << to_string(node.family) << ", via " << node.op << ")  " << to_string(node.form)
             << "\n";
        nodes.push_back(json{{"p", node.degree},
                             {"nu", to_string(node.nu)},
                             {"family", to_string(node.family)},
                             {"op", node.op},
                             {"form", to_string(node.form)}});
      }
      text << "    factorization witnesses: " << trace.factorizations.size() << "/"
           << trace.factorizations.size() << " pass; chain terminates: yes\n";
      traces.push_back(json{{"seed", to_string(seed)},
                            {"nodes", std::move(nodes)},
                            {"factorizations_passed", trace.factorizations.size()},
                            {"chain_terminates", true}});
    }
    degrees.push_back(
        json{{"degree", p}, {"harmonic_dim", seeds.size()}, {"traces", std::move(traces)}});
  }

  if (opt.json_output) {
    json report = report_header("ladder", doc);
    report["results"] = json{{"n", n}, {"degrees", std::move(degrees)}};
    write_output(opt, dump(report));
  } else {
    write_output(opt, text.str());
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// figure: the (p, nu) spectrum diagram, TSV by default.

int cmd_figure(const Options& opt) {
  const FixtureDocument doc = load_fixture(opt.fixture_path);
  const auto cx = build_complex(doc);
  const SasakianStructure s = require_verified(cx, doc, "enumerate the spectrum figure");
  const FigureData figure = figure_data(s);

  if (opt.json_output) {
    json nodes = json::array();
    for (const FigureNode& node : figure.nodes)
      nodes.push_back(json{{"p", node.p},
                           {"nu", to_string(node.nu)},
                           {"family", to_string(node.family)},
                           {"dim", node.dim}});
    json edges = json::array();
    for (const FigureEdge& edge : figure.edges)
      edges.push_back(json{{"p1", edge.p1},
                           {"nu1", to_string(edge.nu1)},
                           {"p2", edge.p2},
                           {"nu2", to_string(edge.nu2)},
                           {"op", edge.op}});
    json report = report_header("figure", doc);
    report["results"] = json{{"n", s.n()}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
    write_output(opt, dump(report));
  } else {
    write_output(opt, render_figure_tsv(figure));
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// lefschetz: the metric-free relation verdict, cross-validated against the
// harmonic route whenever the fixture's metric verifies.

int cmd_lefschetz(const Options& opt) {
  const FixtureDocument doc = load_fixture(opt.fixture_path);
  const auto cx = build_complex(doc);
  const ContactData contact = make_contact(*cx, doc.eta);

  std::optional<SasakianStructure> s;
  try {
    SasakianStructure candidate = SasakianStructure::check(cx, doc.eta, doc.metric(), doc.phi);
    if (candidate.verified()) s.emplace(std::move(candidate));
  } catch (const std::invalid_argument&) {
    // metric data unusable; the relation route below is metric-free anyway
  } catch (const std::domain_error&) {
  }

  const ObstructionVerdict v = verdict(*cx, contact, s ? &*s : nullptr);

  std::ostringstream text;
  text << "fixture " << doc.name << " (dim " << doc.dim << ", n = " << contact.n << ")\n";
  text << "harmonic cross-validation: "
       << (s ? "enabled (metric verifies)" : "skipped (metric does not verify)") << "\n";

  json relations = json::array();
  for (const RelationReport& r : v.relations) {
    text << "relation p = " << r.degree << ": well defined: " << (r.well_defined ? "yes" : "no")
         << "; covers every class: " << (r.domain_full ? "yes" : "no")
         << "; bijective: " << (r.bijective ? "yes" : "no") << " -> "
         << (r.graph_of_isomorphism() ? "graph of an isomorphism" : "obstructed") << "\n";
    json entry = json{{"degree", r.degree},
                      {"well_defined", r.well_defined},
                      {"domain_full", r.domain_full},
                      {"bijective", r.bijective},
                      {"graph_of_isomorphism", r.graph_of_isomorphism()}};
    if (r.induced) entry["induced"] = mat_json(*r.induced);
    relations.push_back(std::move(entry));
  }

  json pairings = json::array();
  for (int p = 0; p <= contact.n; ++p) {
    const std::vector<Form> reps = constrained_representatives(*cx, contact, p);
    const Mat b = bilinear_form(*cx, contact, reps);
    text << "pairing p = " << p << ": " << b.rows() << " x " << b.cols() << " matrix, rank "
         << b.rank() << "\n";
    pairings.push_back(json{{"degree", p}, {"rank", b.rank()}, {"matrix", mat_json(b)}});
  }

  json parity = json::array();
  for (const ParityReport::Entry& entry : v.parity.odd_checks) {
    text << "parity b_" << entry.p << " = " << entry.betti << ": "
         << (entry.even ? "even" : "odd") << "\n";
    parity.push_back(json{{"p", entry.p}, {"betti", entry.betti}, {"even", entry.even}});
  }

  text << "verdict: " << (v.lefschetz_contact ? "lefschetz_contact" : "obstructed") << "\n";
  for (const std::string& reason : v.reasons) text << "  - " << reason << "\n";

  if (opt.json_output) {
    json report = report_header("lefschetz", doc);
    report["results"] = json{{"n", contact.n},
                             {"cross_validated", static_cast<bool>(s)},
                             {"relations", std::move(relations)},
                             {"pairings", std::move(pairings)},
                             {"parity", std::move(parity)},
                             {"lefschetz_contact", v.lefschetz_contact},
                             {"reasons", v.reasons}};
    write_output(opt, dump(report));
  } else {
    write_output(opt, text.str());
  }
  return v.lefschetz_contact ? kPass : kObstructed;
}

// ---------------------------------------------------------------------------
// crosscheck: harmonic route under one or two metrics against the metric-free
// relation route; any disagreement is an internal invariant violation.

int cmd_crosscheck(const Options& opt) {
  const FixtureDocument doc = load_fixture(opt.fixture_path);
  const auto cx = build_complex(doc);
  const SasakianStructure s1 = require_verified(cx, doc, "crosscheck duality routes");

  std::optional<SasakianStructure> s2;
  std::string second_name;
  if (!opt.metric2_path.empty()) {
    const FixtureDocument doc2 = load_fixture(opt.metric2_path);
    const auto cx2 = build_complex(doc2);
    s2 = require_verified(cx2, doc2, "crosscheck duality routes (second fixture)");
    second_name = doc2.name;
  }
  const SasakianStructure& other = s2 ? *s2 : s1;
  const bool distinct =
      s2 && (s1.metric().gram1() != other.metric().gram1() || s1.phi() != other.phi());

  std::ostringstream text;
  text << "fixture " << doc.name;
  if (s2) text << " + second metric " << second_name;
  text << " (dim " << doc.dim << ", n = " << s1.n() << ")\n";
  text << "structures distinct: " << (distinct ? "yes" : "no (same structure both routes)")
       << "\n";

  json degrees = json::array();
  for (int p = 0; p <= s1.n(); ++p) {
    const MetricIndependenceReport r = metric_independence_check(s1, other, p);
    if (!r.all_equal)
      throw InternalInvariantViolation("duality routes disagree at degree " + std::to_string(p));
    text << "p = " << p << ": harmonic route (first) == harmonic route (second) == relation route"
         << " (" << r.relation_matrix.rows() << " x " << r.relation_matrix.cols() << ")\n";
    degrees.push_back(
        json{{"degree", p}, {"all_equal", true}, {"matrix", mat_json(r.relation_matrix)}});
  }
  text << "all duality routes agree\n";

  if (opt.json_output) {
    json report = report_header("crosscheck", doc);
    report["results"] = json{{"n", s1.n()},
                             {"second_fixture", second_name},
                             {"structures_distinct", distinct},
                             {"degrees", std::move(degrees)},
                             {"all_equal", true}};
    write_output(opt, dump(report));
  } else {
    write_output(opt, text.str());
  }
  return kPass;
}

int run(const std::string& command, const Options& opt) {
  if (command == "validate") return cmd_validate(opt);
  if (command == "cohomology") return cmd_cohomology(opt);
  if (command == "identities") return cmd_identities(opt);
  if (command == "ladder") return cmd_ladder(opt);
  if (command == "figure") return cmd_figure(opt);
  if (command == "lefschetz") return cmd_lefschetz(opt);
  if (command == "crosscheck") return cmd_crosscheck(opt);
  throw std::invalid_argument("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact spectral and duality checks on invariant contact complexes"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* sub, bool with_degree, bool with_metric2) {
    sub->add_option("fixture", opt.fixture_path, "fixture JSON file")->required();
    sub->add_option("--out", opt.out_path, "write the report to this file instead of stdout");
    sub->add_flag("--json", opt.json_output, "emit a JSON report");
    if (with_degree)
      sub->add_option("--degree", opt.degree, "restrict to a single degree p")
          ->check(CLI::NonNegativeNumber);
    if (with_metric2)
      sub->add_option("--metric2", opt.metric2_path,
                      "fixture supplying a second metric on the same complex");
  };

  add_common(app.add_subcommand("validate", "check Jacobi, the contact condition and the "
                                            "structure axioms"),
             false, false);
  add_common(app.add_subcommand("cohomology", "Betti numbers of the invariant complex"), true,
             false);
  add_common(app.add_subcommand("identities", "verify the operator identity catalog"), false,
             false);
  add_common(app.add_subcommand("ladder", "trace eigenvalue ladders from harmonic seeds"), true,
             false);
  add_common(app.add_subcommand("figure", "enumerate spectral families and transitions (TSV)"),
             false, false);
  add_common(app.add_subcommand("lefschetz", "decide the duality obstruction"), false, false);
  add_common(app.add_subcommand("crosscheck", "compare harmonic and relation duality routes"),
             false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const InternalInvariantViolation& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kInternalError;
  } catch (const FixtureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
