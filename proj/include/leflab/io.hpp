#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leflab/complex.hpp"
#include "leflab/exterior.hpp"
#include "leflab/ladder.hpp"
#include "leflab/matrix.hpp"
#include "leflab/metric.hpp"

namespace leflab {

/// Version string stamped into every report.
inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed fixture input.  The message always starts with the JSON field
/// path (or line number for syntax errors) of the first problem found.
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structure description as read from a fixture file: the coframe
/// differentials of an invariant complex, a contact form candidate, a coframe
/// Gram matrix (absent = identity), an optional endomorphism phi, and an
/// orientation sign.
struct FixtureDocument {
  std::string name;
  int dim = 0;
  std::vector<Form> diff;  // diff[k-1] = d e^k
  Form eta;
  std::optional<Mat> gram;  // nullopt = identity metric
  std::optional<Endomorphism> phi;
  int orientation = 1;

  LieAlgebraSpec algebra() const { return LieAlgebraSpec{name, dim, diff}; }
  MetricStructure metric() const {
    return gram ? MetricStructure(dim, *gram, orientation)
                : MetricStructure::identity(dim, orientation);
  }
};

/// Parses and validates fixture JSON.  Scalars must be integers or "p/q"
/// strings; floating-point numbers are rejected.  Throws FixtureError with a
/// field-path diagnostic on the first problem.
FixtureDocument parse_fixture(const std::string& text);

/// Reads a file and parses it.  Throws FixtureError when unreadable.
FixtureDocument load_fixture(const std::string& path);

/// Spectrum diagram as tab-separated rows, already sorted:
///   node <p> <nu> <family> <dim>
///   edge <p1> <nu1> <p2> <nu2> <op>
/// with exact "p/q" eigenvalue labels.  Byte-deterministic.
std::string render_figure_tsv(const FigureData& figure);

}  // namespace leflab
