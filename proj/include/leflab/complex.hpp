#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leflab/exterior.hpp"
#include "leflab/graded_operator.hpp"
#include "leflab/matrix.hpp"

namespace leflab {

/// A Lie algebra presented through the differentials of its dual coframe:
/// diff[k-1] is the 2-form de^k.  The bracket is recovered from
/// de^k(X, Y) = -e^k([X, Y]).
struct LieAlgebraSpec {
  std::string name;
  int dim = 0;
  std::vector<Form> diff;
};

/// Basis of a cohomology space with deterministic representatives: cocycles
/// reduced against the boundary space, echelon-normalized with leading
/// coefficient 1 in the monomial ordering of basis(dim, p).
struct CohomologySpace {
  int p = 0;
  std::vector<Form> reps;
};

/// The invariant-form complex of a Lie algebra: the exterior algebra of the
/// coframe with the induced differential.  Construction fails unless d*d = 0,
/// which is equivalent to the Jacobi identity for the bracket.
class InvariantComplex {
 public:
  static InvariantComplex build(const LieAlgebraSpec& spec);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const GradedOperator& d() const { return d_; }
  const Form& coframe_diff(int k) const;  // de^k, 1-based

  /// Evaluates d as an anti-derivation directly on a form.  Used as an
  /// independent route against the cached matrices.
  Form d_form(const Form& f) const;

  /// [E_i, E_j] on basis vectors, 1-based indices.
  VectorField bracket(int i, int j) const;
  VectorField bracket(const VectorField& x, const VectorField& y) const;

  int betti(int p) const;
  const CohomologySpace& cohomology(int p) const;

  /// Coordinates of the class of a closed p-form in the representative basis.
  /// Throws std::invalid_argument if f is not closed.
  std::vector<Rational> class_of(const Form& f) const;

 private:
  InvariantComplex() = default;
  void compute_cohomology();

  std::string name_;
  int dim_ = 0;
  std::vector<Form> diff_;
  GradedOperator d_;
  std::vector<CohomologySpace> coh_;
  std::vector<Mat> class_solver_;  // [reps | boundaries] per degree
};

}  // namespace leflab
