#include "leflab/metric.hpp"

#include <stdexcept>

namespace leflab {

namespace {

std::vector<std::vector<Rational>> to_dense(const Mat& m) {
  std::vector<std::vector<Rational>> out(m.rows(),
                                         std::vector<Rational>(m.cols(), Rational(0)));
  for (int i = 0; i < m.rows(); ++i) {
    for (const auto& [j, v] : m.row(i)) out[i][j] = v;
  }
  return out;
}

Rational det_dense(std::vector<std::vector<Rational>> a) {
  const int n = static_cast<int>(a.size());
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

bool is_diagonal_dense(const std::vector<std::vector<Rational>>& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a.size(); ++j) {
      if (i != j && a[i][j] != 0) return false;
    }
  }
  return true;
}

}  // namespace

Rational determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  return det_dense(to_dense(m));
}

MetricStructure::MetricStructure(int dim, Mat gram1, int orientation)
    : dim_(dim), orientation_(orientation), gram1_(std::move(gram1)) {
  if (orientation != 1 && orientation != -1) {
    throw std::invalid_argument("orientation must be +1 or -1");
  }
  if (gram1_.rows() != dim || gram1_.cols() != dim) {
    throw std::invalid_argument("coframe Gram matrix has wrong shape");
  }
  const auto dense = to_dense(gram1_);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (dense[i][j] != dense[j][i]) {
        throw std::invalid_argument("coframe Gram matrix is not symmetric");
      }
    }
  }
  // Sylvester: positive definite iff all leading principal minors are positive.
  for (int k = 1; k <= dim; ++k) {
    std::vector<std::vector<Rational>> lead(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) lead[i][j] = dense[i][j];
    }
    if (det_dense(std::move(lead)) <= 0) {
      throw std::invalid_argument("coframe Gram matrix is not positive definite");
    }
  }
  identity_ = gram1_ == Mat::identity(dim);
  diagonal_ = is_diagonal_dense(dense);
  gram_cache_.resize(dim + 1);
  gram_inv_cache_.resize(dim + 1);
}

MetricStructure MetricStructure::identity(int dim, int orientation) {
  return MetricStructure(dim, Mat::identity(dim), orientation);
}

const Mat& MetricStructure::gram(int p) const {
  if (p < 0 || p > dim_) throw std::out_of_range("degree out of range");
  if (gram_cache_[p]) return *gram_cache_[p];
  const int np = space_dim(dim_, p);
  if (identity_) {
    gram_cache_[p] = Mat::identity(np);
    return *gram_cache_[p];
  }
  const auto idxs = basis(dim_, p);
  if (diagonal_) {
    Mat g(np, np);
    for (int a = 0; a < np; ++a) {
      Rational prod(1);
      for (int i : idxs[a]) prod *= gram1_.at(i - 1, i - 1);
      g.set(a, a, prod);
    }
    gram_cache_[p] = std::move(g);
    return *gram_cache_[p];
  }
  const auto dense = to_dense(gram1_);
  Mat g(np, np);
  for (int a = 0; a < np; ++a) {
    for (int b = 0; b < np; ++b) {
      std::vector<std::vector<Rational>> sub(p, std::vector<Rational>(p));
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) sub[i][j] = dense[idxs[a][i] - 1][idxs[b][j] - 1];
      }
      g.set(a, b, det_dense(std::move(sub)));
    }
  }
  gram_cache_[p] = std::move(g);
  return *gram_cache_[p];
}

const Mat& MetricStructure::gram_inv(int p) const {
  if (p < 0 || p > dim_) throw std::out_of_range("degree out of range");
  if (gram_inv_cache_[p]) return *gram_inv_cache_[p];
  if (identity_) {
    gram_inv_cache_[p] = Mat::identity(space_dim(dim_, p));
  } else {
    gram_inv_cache_[p] = gram(p).inverse();
  }
  return *gram_inv_cache_[p];
}

Rational MetricStructure::inner(const Form& a, const Form& b) const {
  if (a.dim != dim_ || b.dim != dim_) throw std::invalid_argument("form dimension mismatch");
  if (a.is_zero() || b.is_zero()) return Rational(0);
  if (a.degree != b.degree) return Rational(0);
  const Mat& g = gram(a.degree);
  const SparseVec bv = form_to_vec(b);
  Rational out(0);
  for (const auto& [i, va] : form_to_vec(a)) {
    out += va * dot(g.row(i), bv);
  }
  return out;
}

const Rational& MetricStructure::volume_scale() const {
  if (!volume_scale_) {
    const Rational det = determinant(gram1_);
    const auto root = rational_sqrt(Rational(1) / det);
    if (!root) {
      throw std::domain_error(
          "metric determinant is not a rational square; volume scale is irrational");
    }
    volume_scale_ = *root;
  }
  return *volume_scale_;
}

Form MetricStructure::vol() const {
  MultiIndex top(dim_);
  for (int i = 0; i < dim_; ++i) top[i] = i + 1;
  return Form::monomial(dim_, top, volume_scale() * Rational(orientation_));
}

GradedOperator MetricStructure::adjoint(const GradedOperator& a) const {
  // A: p -> p+s with block A_p gives A*: q -> q-s with block
  // (A*)_q = G_{q-s}^{-1} A_{q-s}^T G_q.
  const int s = a.shift();
  GradedOperator out(dim_, -s);
  std::vector<Mat> blocks;
  blocks.reserve(dim_ + 1);
  for (int q = 0; q <= dim_; ++q) {
    const int src = q - s;
    if (src < 0 || src > dim_) {
      blocks.push_back(Mat::zero(0, space_dim(dim_, q)));
      continue;
    }
    blocks.push_back(gram_inv(src) * a.matrix(src).transpose() * gram(q));
  }
  return GradedOperator::from_matrices(dim_, -s, std::move(blocks));
}

namespace {

// Sign of the shuffle (I, I^c) as a permutation of 1..dim.
int complement_sign(const MultiIndex& idx, const MultiIndex& comp) {
  MultiIndex joined = idx;
  joined.insert(joined.end(), comp.begin(), comp.end());
  const auto sorted = sort_index(joined);
  return sorted->second;
}

MultiIndex complement_of(int dim, const MultiIndex& idx) {
  MultiIndex comp;
  comp.reserve(dim - idx.size());
  size_t s = 0;
  for (int i = 1; i <= dim; ++i) {
    if (s < idx.size() && idx[s] == i) {
      ++s;
    } else {
      comp.push_back(i);
    }
  }
  return comp;
}

}  // namespace

HodgePackage::HodgePackage(std::shared_ptr<const InvariantComplex> cx,
                           MetricStructure metric)
    : cx_(std::move(cx)), metric_(std::move(metric)) {
  const int n = metric_.dim();
  if (cx_->dim() != n) throw std::invalid_argument("complex/metric dimension mismatch");

  delta_ = metric_.adjoint(cx_->d());
  laplacian_ = cx_->d() * delta_ + delta_ * cx_->d();

  harmonic_cache_.resize(n + 1);
  projector_cache_.resize(n + 1);
  green_cache_.resize(n + 1);
}

void HodgePackage::ensure_star() const {
  if (!star_.empty()) return;
  const int n = metric_.dim();

  // alpha ^ star(beta) = <alpha, beta> vol fixes
  // star(e^J) = sum_I sign(I, I^c) * scale * orientation * G_p[I,J] * e^{I^c}.
  const Rational scale = metric_.volume_scale() * Rational(metric_.orientation());
  star_.reserve(n + 1);
  for (int p = 0; p <= n; ++p) {
    const auto idxs = basis(n, p);
    const Mat& g = metric_.gram(p);
    Mat st(space_dim(n, n - p), space_dim(n, p));
    for (int a = 0; a < static_cast<int>(idxs.size()); ++a) {
      const MultiIndex comp = complement_of(n, idxs[a]);
      const int sgn = complement_sign(idxs[a], comp);
      const int row = index_rank(n, comp);
      for (const auto& [b, v] : g.row(a)) {
        // column b picks up the contribution of <e^{I_a}, e^{J_b}>.
        st.set(row, b, st.at(row, b) + Rational(sgn) * scale * v);
      }
    }
    star_.push_back(std::move(st));
  }
}

const GradedOperator& HodgePackage::delta_via_star() const {
  if (!delta_star_) {
    ensure_star();
    const int n = metric_.dim();
    std::vector<Mat> ds_blocks;
    ds_blocks.reserve(n + 1);
    for (int p = 0; p <= n; ++p) {
      if (p == 0) {
        ds_blocks.push_back(Mat::zero(0, 1));
        continue;
      }
      Mat m = star_[n - p + 1] * cx_->d().matrix(n - p) * star_[p];
      if (p % 2 != 0) m = m.scaled(Rational(-1));
      ds_blocks.push_back(std::move(m));
    }
    delta_star_ = GradedOperator::from_matrices(n, -1, std::move(ds_blocks));
  }
  return *delta_star_;
}

const Mat& HodgePackage::star_matrix(int p) const {
  if (p < 0 || p > dim()) throw std::out_of_range("degree out of range");
  ensure_star();
  return star_[p];
}

Form HodgePackage::star(const Form& f) const {
  if (f.dim != dim()) throw std::invalid_argument("form dimension mismatch");
  if (f.is_zero()) return Form::zero(dim(), dim() - f.degree);
  ensure_star();
  return vec_to_form(dim(), dim() - f.degree, star_[f.degree].apply(form_to_vec(f)));
}

const Mat& HodgePackage::harmonic_basis(int p) const {
  if (p < 0 || p > dim()) throw std::out_of_range("degree out of range");
  if (!harmonic_cache_[p]) harmonic_cache_[p] = laplacian_.matrix(p).kernel();
  return *harmonic_cache_[p];
}

std::vector<Form> HodgePackage::harmonic_forms(int p) const {
  const Mat& k = harmonic_basis(p);
  std::vector<Form> out;
  out.reserve(k.cols());
  for (int j = 0; j < k.cols(); ++j) out.push_back(vec_to_form(dim(), p, k.col(j)));
  return out;
}

const Mat& HodgePackage::harmonic_projector(int p) const {
  if (p < 0 || p > dim()) throw std::out_of_range("degree out of range");
  if (!projector_cache_[p]) {
    const Mat& k = harmonic_basis(p);
    if (k.cols() == 0) {
      projector_cache_[p] = Mat::zero(k.rows(), k.rows());
    } else {
      const Mat kt_g = k.transpose() * metric_.gram(p);
      projector_cache_[p] = k * (kt_g * k).inverse() * kt_g;
    }
  }
  return *projector_cache_[p];
}

const Mat& HodgePackage::green(int p) const {
  if (p < 0 || p > dim()) throw std::out_of_range("degree out of range");
  if (!green_cache_[p]) {
    const Mat& pi = harmonic_projector(p);
    const Mat id = Mat::identity(pi.rows());
    green_cache_[p] = (laplacian_.matrix(p) + pi).inverse() * (id - pi);
  }
  return *green_cache_[p];
}

}  // namespace leflab
