#include "leflab/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace leflab {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw FixtureError(path + ": " + message);
}

std::string type_name(const json& j) {
  if (j.is_null()) return "null";
  if (j.is_boolean()) return "boolean";
  if (j.is_number_float()) return "floating-point number";
  if (j.is_number()) return "integer";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  if (j.is_object()) return "object";
  return j.type_name();
}

Rational rational_at(const json& j, const std::string& path) {
  if (j.is_number_float())
    fail(path, "floating-point numbers are not accepted; use \"p/q\" strings");
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, std::string("bad rational \"") + j.get<std::string>() + "\": " + e.what());
    }
  }
  fail(path, "expected an integer or \"p/q\" string, got " + type_name(j));
}

int index_at(const json& j, const std::string& path, int dim) {
  if (!j.is_number_integer())
    fail(path, "expected a frame index (integer), got " + type_name(j));
  const long long v = j.get<long long>();
  if (v < 1 || v > dim)
    fail(path, "frame index " + std::to_string(v) + " outside 1.." + std::to_string(dim));
  return static_cast<int>(v);
}

int generator_number(const std::string& key, int dim) {
  const std::string path = "diff1." + key;
  if (key.size() < 2 || key[0] != 'e')
    fail(path, "generator keys must look like \"e3\"");
  size_t pos = 0;
  int k = 0;
  try {
    k = std::stoi(key.substr(1), &pos);
  } catch (const std::exception&) {
    fail(path, "generator keys must look like \"e3\"");
  }
  if (pos + 1 != key.size())
    fail(path, "generator keys must look like \"e3\"");
  if (k < 1 || k > dim)
    fail(path, "generator index " + std::to_string(k) + " outside 1.." + std::to_string(dim));
  return k;
}

Form two_form_at(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array of [coeff, i, j] terms, got " + type_name(j));
  Form result = Form::zero(dim, 2);
  for (size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const json& term = j[t];
    if (!term.is_array() || term.size() != 3)
      fail(tp, "expected a [coeff, i, j] triple");
    const Rational c = rational_at(term[0], tp + "[0]");
    const int i = index_at(term[1], tp + "[1]", dim);
    const int jj = index_at(term[2], tp + "[2]", dim);
    const auto sorted = sort_index(MultiIndex{i, jj});
    if (!sorted) fail(tp, "repeated frame index " + std::to_string(i));
    result.add_term(sorted->first, Rational(c * sorted->second));
  }
  return result;
}

Form one_form_at(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array of [coeff, i] terms, got " + type_name(j));
  Form result = Form::zero(dim, 1);
  for (size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const json& term = j[t];
    if (!term.is_array() || term.size() != 2)
      fail(tp, "expected a [coeff, i] pair");
    const Rational c = rational_at(term[0], tp + "[0]");
    const int i = index_at(term[1], tp + "[1]", dim);
    result.add_term(MultiIndex{i}, c);
  }
  return result;
}

std::vector<std::vector<Rational>> square_matrix_at(const json& j, const std::string& path,
                                                    int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(path, "expected a " + std::to_string(dim) + " x " + std::to_string(dim) + " matrix");
  std::vector<std::vector<Rational>> rows;
  rows.reserve(j.size());
  for (size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail(rp, "expected a row of " + std::to_string(dim) + " entries");
    std::vector<Rational> out;
    out.reserve(row.size());
    for (size_t c = 0; c < row.size(); ++c)
      out.push_back(rational_at(row[c], rp + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(out));
  }
  return rows;
}

}  // namespace

FixtureDocument parse_fixture(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const size_t upto = std::min(e.byte, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    fail("line " + std::to_string(line), e.what());
  }
  if (!doc.is_object()) fail("$", "fixture must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    (void)value;
    static const char* known[] = {"name", "dim", "diff1", "eta", "metric", "phi", "orientation"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known))
      fail(key, "unknown field");
  }
  for (const char* required : {"name", "dim", "diff1", "eta"})
    if (!doc.contains(required)) fail(required, "missing required field");

  FixtureDocument out;
  if (!doc["name"].is_string()) fail("name", "expected a string, got " + type_name(doc["name"]));
  out.name = doc["name"].get<std::string>();

  if (!doc["dim"].is_number_integer())
    fail("dim", "expected an integer, got " + type_name(doc["dim"]));
  const long long dim = doc["dim"].get<long long>();
  if (dim < 1 || dim > 64) fail("dim", "dimension " + std::to_string(dim) + " outside 1..64");
  out.dim = static_cast<int>(dim);

  if (!doc["diff1"].is_object())
    fail("diff1", "expected an object of generator -> terms, got " + type_name(doc["diff1"]));
  out.diff.assign(out.dim, Form());
  for (int k = 1; k <= out.dim; ++k) out.diff[k - 1] = Form::zero(out.dim, 2);
  for (const auto& [key, value] : doc["diff1"].items()) {
    const int k = generator_number(key, out.dim);
    out.diff[k - 1] = two_form_at(value, "diff1." + key, out.dim);
  }

  out.eta = one_form_at(doc["eta"], "eta", out.dim);

  if (doc.contains("orientation")) {
    const json& o = doc["orientation"];
    if (!o.is_number_integer() || (o.get<long long>() != 1 && o.get<long long>() != -1))
      fail("orientation", "expected 1 or -1");
    out.orientation = static_cast<int>(o.get<long long>());
  }

  if (doc.contains("metric")) {
    const json& m = doc["metric"];
    if (m.is_string()) {
      if (m.get<std::string>() != "identity")
        fail("metric", "expected \"identity\" or a Gram matrix");
    } else {
      const auto rows = square_matrix_at(m, "metric", out.dim);
      Mat gram(out.dim, out.dim);
      for (int r = 0; r < out.dim; ++r)
        for (int c = 0; c < out.dim; ++c)
          if (rows[r][c] != 0) gram.set(r, c, rows[r][c]);
      if (gram != gram.transpose()) fail("metric", "Gram matrix must be symmetric");
      out.gram = std::move(gram);
    }
  }

  if (doc.contains("phi")) out.phi = square_matrix_at(doc["phi"], "phi", out.dim);

  return out;
}

FixtureDocument load_fixture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError(path + ": cannot open fixture file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_fixture(buffer.str());
  } catch (const FixtureError& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

std::string render_figure_tsv(const FigureData& figure) {
  std::ostringstream out;
  for (const FigureNode& node : figure.nodes)
    out << "node\t" << node.p << '\t' << to_string(node.nu) << '\t' << to_string(node.family)
        << '\t' << node.dim << '\n';
  for (const FigureEdge& edge : figure.edges)
    out << "edge\t" << edge.p1 << '\t' << to_string(edge.nu1) << '\t' << edge.p2 << '\t'
        << to_string(edge.nu2) << '\t' << edge.op << '\n';
  return out.str();
}

}  // namespace leflab
