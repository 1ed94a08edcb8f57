#pragma once

#include <functional>
#include <vector>

#include "leflab/exterior.hpp"
#include "leflab/matrix.hpp"

namespace leflab {

/// Degree-homogeneous linear operator on the full exterior algebra of a
/// dim-dimensional coframe: one matrix per source degree p in 0..dim, each
/// mapping degree p to degree p+shift.  Degrees outside 0..dim are treated
/// as the zero space.
class GradedOperator {
 public:
  GradedOperator() : dim_(0), shift_(0) {}
  GradedOperator(int dim, int shift);

  static GradedOperator from_matrices(int dim, int shift, std::vector<Mat> mats);
  static GradedOperator from_form_op(int dim, int shift,
                                     const std::function<Form(const Form&)>& op);
  static GradedOperator identity(int dim);
  /// weight(p) * id on each degree p.
  static GradedOperator diagonal(int dim, const std::function<Rational(int)>& weight);

  int dim() const { return dim_; }
  int shift() const { return shift_; }
  /// Matrix acting on degree p (zero-shaped if p or p+shift is out of range).
  const Mat& matrix(int p) const;

  GradedOperator compose(const GradedOperator& inner) const;
  GradedOperator operator*(const GradedOperator& inner) const { return compose(inner); }
  GradedOperator operator+(const GradedOperator& other) const;
  GradedOperator operator-(const GradedOperator& other) const;
  GradedOperator scaled(const Rational& c) const;
  GradedOperator pow(int k) const;

  bool operator==(const GradedOperator& other) const;
  bool operator!=(const GradedOperator& other) const { return !(*this == other); }
  bool is_zero() const;

  Form apply(const Form& f) const;

 private:
  int dim_;
  int shift_;
  std::vector<Mat> mats_;  // indexed by source degree
};

/// [A, B] = AB - BA.
GradedOperator commutator(const GradedOperator& a, const GradedOperator& b);
/// {A, B} = AB + BA.
GradedOperator anticommutator(const GradedOperator& a, const GradedOperator& b);

}  // namespace leflab
