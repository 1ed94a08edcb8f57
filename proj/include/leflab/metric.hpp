#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "leflab/complex.hpp"
#include "leflab/exterior.hpp"
#include "leflab/graded_operator.hpp"
#include "leflab/matrix.hpp"

namespace leflab {

/// Determinant by fraction-free elimination on a dense copy.
Rational determinant(const Mat& m);

/// Inner products of invariant forms induced by a coframe Gram matrix
/// gram1[i][j] = <e^{i+1}, e^{j+1}>.  Degree-p inner products are given by
/// the p-th compound matrix (determinants of p x p submatrices), computed
/// lazily with identity and diagonal fast paths.
class MetricStructure {
 public:
  MetricStructure(int dim, Mat gram1, int orientation = 1);
  static MetricStructure identity(int dim, int orientation = 1);

  int dim() const { return dim_; }
  int orientation() const { return orientation_; }
  const Mat& gram1() const { return gram1_; }
  bool is_identity() const { return identity_; }

  const Mat& gram(int p) const;
  const Mat& gram_inv(int p) const;

  Rational inner(const Form& a, const Form& b) const;

  /// Scale of the volume form relative to e^{1..dim}: 1/sqrt(det gram1).
  /// Throws std::domain_error when the determinant is not a rational square.
  const Rational& volume_scale() const;
  Form vol() const;

  /// Metric adjoint: <A a, b> = <a, A* b> degreewise.
  GradedOperator adjoint(const GradedOperator& a) const;

 private:
  int dim_;
  int orientation_;
  Mat gram1_;
  bool identity_ = false;
  bool diagonal_ = false;
  mutable std::vector<std::optional<Mat>> gram_cache_;
  mutable std::vector<std::optional<Mat>> gram_inv_cache_;
  mutable std::optional<Rational> volume_scale_;
};

/// Hodge-theoretic package for an invariant complex with a chosen metric:
/// star, codifferential (metric adjoint of d, with an independent star-route
/// cross-check), Laplacian, harmonic spaces, projector, and Green operator.
class HodgePackage {
 public:
  HodgePackage(std::shared_ptr<const InvariantComplex> cx, MetricStructure metric);

  const InvariantComplex& complex() const { return *cx_; }
  const MetricStructure& metric() const { return metric_; }
  int dim() const { return metric_.dim(); }

  /// Star matrix on degree p (maps degree p to dim - p).  The star route is
  /// built on first use and needs a rational volume scale; metrics whose
  /// Gram determinant is not a rational square throw here, while delta() and
  /// laplacian() stay available through the Gram-adjoint route.
  const Mat& star_matrix(int p) const;
  Form star(const Form& f) const;

  const GradedOperator& delta() const { return delta_; }
  /// (-1)^p * d * routed through star; equals delta() in odd dimension.
  const GradedOperator& delta_via_star() const;
  const GradedOperator& laplacian() const { return laplacian_; }

  /// Kernel of the degree-p Laplacian, as matrix columns.
  const Mat& harmonic_basis(int p) const;
  std::vector<Form> harmonic_forms(int p) const;
  /// Orthogonal projector onto the harmonic space in degree p.
  const Mat& harmonic_projector(int p) const;
  /// Green operator: inverts the Laplacian on the orthogonal complement of
  /// the harmonic space and kills the harmonic space.
  const Mat& green(int p) const;

  Rational inner(const Form& a, const Form& b) const { return metric_.inner(a, b); }

 private:
  void ensure_star() const;

  std::shared_ptr<const InvariantComplex> cx_;
  MetricStructure metric_;
  mutable std::vector<Mat> star_;
  mutable std::optional<GradedOperator> delta_star_;
  GradedOperator delta_;
  GradedOperator laplacian_;
  mutable std::vector<std::optional<Mat>> harmonic_cache_;
  mutable std::vector<std::optional<Mat>> projector_cache_;
  mutable std::vector<std::optional<Mat>> green_cache_;
};

}  // namespace leflab
