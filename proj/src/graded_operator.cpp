#include "leflab/graded_operator.hpp"

#include <algorithm>
#include <stdexcept>

namespace leflab {

namespace {

int space_dim_or_zero(int dim, int p) {
  if (p < 0 || p > dim) return 0;
  return space_dim(dim, p);
}

}  // namespace

GradedOperator::GradedOperator(int dim, int shift) : dim_(dim), shift_(shift) {
  mats_.reserve(dim + 1);
  for (int p = 0; p <= dim; ++p) {
    mats_.push_back(Mat::zero(space_dim_or_zero(dim, p + shift), space_dim(dim, p)));
  }
}

GradedOperator GradedOperator::from_matrices(int dim, int shift, std::vector<Mat> mats) {
  if (static_cast<int>(mats.size()) != dim + 1) {
    throw std::invalid_argument("graded operator needs dim+1 matrices");
  }
  GradedOperator out(dim, shift);
  for (int p = 0; p <= dim; ++p) {
    if (mats[p].rows() != out.mats_[p].rows() || mats[p].cols() != out.mats_[p].cols()) {
      throw std::invalid_argument("graded operator block has wrong shape");
    }
    out.mats_[p] = std::move(mats[p]);
  }
  return out;
}

GradedOperator GradedOperator::from_form_op(int dim, int shift,
                                            const std::function<Form(const Form&)>& op) {
  GradedOperator out(dim, shift);
  for (int p = 0; p <= dim; ++p) {
    if (p + shift < 0 || p + shift > dim) continue;  // forced zero, skip evaluation
    out.mats_[p] = as_matrix(op, dim, p, shift);
  }
  return out;
}

GradedOperator GradedOperator::identity(int dim) {
  GradedOperator out(dim, 0);
  for (int p = 0; p <= dim; ++p) out.mats_[p] = Mat::identity(space_dim(dim, p));
  return out;
}

GradedOperator GradedOperator::diagonal(int dim,
                                        const std::function<Rational(int)>& weight) {
  GradedOperator out(dim, 0);
  for (int p = 0; p <= dim; ++p) {
    out.mats_[p] = Mat::identity(space_dim(dim, p)).scaled(weight(p));
  }
  return out;
}

const Mat& GradedOperator::matrix(int p) const {
  if (p < 0 || p > dim_) throw std::out_of_range("degree out of range");
  return mats_[p];
}

GradedOperator GradedOperator::compose(const GradedOperator& inner) const {
  if (dim_ != inner.dim_) throw std::invalid_argument("operator dimension mismatch");
  GradedOperator out(dim_, shift_ + inner.shift_);
  for (int p = 0; p <= dim_; ++p) {
    const int mid = p + inner.shift_;
    if (mid < 0 || mid > dim_) continue;  // factors through the zero space
    const int target = mid + shift_;
    if (target < 0 || target > dim_) continue;
    out.mats_[p] = mats_[mid] * inner.mats_[p];
  }
  return out;
}

GradedOperator GradedOperator::operator+(const GradedOperator& other) const {
  if (dim_ != other.dim_ || shift_ != other.shift_) {
    throw std::invalid_argument("operator shape mismatch in +");
  }
  GradedOperator out(dim_, shift_);
  for (int p = 0; p <= dim_; ++p) out.mats_[p] = mats_[p] + other.mats_[p];
  return out;
}

GradedOperator GradedOperator::operator-(const GradedOperator& other) const {
  if (dim_ != other.dim_ || shift_ != other.shift_) {
    throw std::invalid_argument("operator shape mismatch in -");
  }
  GradedOperator out(dim_, shift_);
  for (int p = 0; p <= dim_; ++p) out.mats_[p] = mats_[p] - other.mats_[p];
  return out;
}

GradedOperator GradedOperator::scaled(const Rational& c) const {
  GradedOperator out(dim_, shift_);
  for (int p = 0; p <= dim_; ++p) out.mats_[p] = mats_[p].scaled(c);
  return out;
}

GradedOperator GradedOperator::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative operator power");
  GradedOperator out = identity(dim_);
  for (int i = 0; i < k; ++i) out = compose(out);
  return out;
}

bool GradedOperator::operator==(const GradedOperator& other) const {
  if (dim_ != other.dim_ || shift_ != other.shift_) return false;
  for (int p = 0; p <= dim_; ++p) {
    if (mats_[p] != other.mats_[p]) return false;
  }
  return true;
}

bool GradedOperator::is_zero() const {
  return std::all_of(mats_.begin(), mats_.end(),
                     [](const Mat& m) { return m.is_zero(); });
}

Form GradedOperator::apply(const Form& f) const {
  if (f.dim != dim_) throw std::invalid_argument("form dimension mismatch");
  if (f.degree < 0 || f.degree > dim_) return Form::zero(dim_, 0);
  const int target = f.degree + shift_;
  if (target < 0 || target > dim_) return Form::zero(dim_, std::clamp(target, 0, dim_));
  return vec_to_form(dim_, target, mats_[f.degree].apply(form_to_vec(f)));
}

GradedOperator commutator(const GradedOperator& a, const GradedOperator& b) {
  return a * b - b * a;
}

GradedOperator anticommutator(const GradedOperator& a, const GradedOperator& b) {
  return a * b + b * a;
}

}  // namespace leflab
