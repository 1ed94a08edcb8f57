#include "leflab/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace leflab {

SparseVec axpy(const SparseVec& r, const Rational& c, const SparseVec& v) {
  if (c == 0 || v.empty()) return r;
  SparseVec out;
  out.reserve(r.size() + v.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < v.size()) {
    if (j == v.size() || (i < r.size() && r[i].first < v[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || v[j].first < r[i].first) {
      out.emplace_back(v[j].first, c * v[j].second);
      ++j;
    } else {
      Rational sum = r[i].second + c * v[j].second;
      if (sum != 0) out.emplace_back(r[i].first, std::move(sum));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scale_vec(const SparseVec& v, const Rational& c) {
  if (c == 0) return {};
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [idx, val] : v) out.emplace_back(idx, c * val);
  return out;
}

Rational dot(const SparseVec& a, const SparseVec& b) {
  Rational acc = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      acc += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return acc;
}

SparseVec dense_to_sparse(const std::vector<Rational>& dense) {
  SparseVec out;
  for (int i = 0; i < static_cast<int>(dense.size()); ++i) {
    if (dense[i] != 0) out.emplace_back(i, dense[i]);
  }
  return out;
}

std::vector<Rational> sparse_to_dense(const SparseVec& v, int size) {
  std::vector<Rational> out(size, Rational(0));
  for (const auto& [idx, val] : v) out.at(idx) = val;
  return out;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.row_[i].emplace_back(i, Rational(1));
  return m;
}

Mat Mat::from_rows(int cols, std::vector<SparseVec> rows) {
  Mat m(static_cast<int>(rows.size()), cols);
  m.row_ = std::move(rows);
  return m;
}

Mat Mat::from_cols(int rows, const std::vector<SparseVec>& cols) {
  Mat m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
    for (const auto& [i, val] : cols[j]) m.row_.at(i).emplace_back(j, val);
  }
  return m;
}

Mat Mat::from_dense(const std::vector<std::vector<Rational>>& entries) {
  const int rows = static_cast<int>(entries.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(entries[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(entries[i].size()) != cols) {
      throw std::invalid_argument("ragged dense matrix");
    }
    for (int j = 0; j < cols; ++j) {
      if (entries[i][j] != 0) m.row_[i].emplace_back(j, entries[i][j]);
    }
  }
  return m;
}

SparseVec Mat::col(int j) const {
  SparseVec out;
  for (int i = 0; i < rows_; ++i) {
    const Rational v = at(i, j);
    if (v != 0) out.emplace_back(i, v);
  }
  return out;
}

Rational Mat::at(int i, int j) const {
  const SparseVec& r = row_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, int c) { return e.first < c; });
  if (it != r.end() && it->first == j) return it->second;
  return Rational(0);
}

void Mat::set(int i, int j, const Rational& value) {
  SparseVec& r = row_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, int c) { return e.first < c; });
  if (it != r.end() && it->first == j) {
    if (value == 0) {
      r.erase(it);
    } else {
      it->second = value;
    }
  } else if (value != 0) {
    r.emplace(it, j, value);
  }
}

Mat Mat::operator+(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix shape mismatch in +");
  }
  Mat out(rows_, cols_);
  for (int i = 0; i < rows_; ++i) out.row_[i] = axpy(row_[i], Rational(1), other.row_[i]);
  return out;
}

Mat Mat::operator-(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix shape mismatch in -");
  }
  Mat out(rows_, cols_);
  for (int i = 0; i < rows_; ++i) out.row_[i] = axpy(row_[i], Rational(-1), other.row_[i]);
  return out;
}

Mat Mat::operator*(const Mat& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  Mat out(rows_, other.cols_);
  std::vector<Rational> scratch(other.cols_, Rational(0));
  std::vector<int> touched;
  for (int i = 0; i < rows_; ++i) {
    touched.clear();
    for (const auto& [k, a] : row_[i]) {
      for (const auto& [j, b] : other.row_[k]) {
        if (scratch[j] == 0) touched.push_back(j);
        scratch[j] += a * b;
      }
    }
    std::sort(touched.begin(), touched.end());
    SparseVec& r = out.row_[i];
    for (int j : touched) {
      if (scratch[j] != 0) r.emplace_back(j, scratch[j]);
      scratch[j] = 0;
    }
  }
  return out;
}

Mat Mat::scaled(const Rational& c) const {
  Mat out(rows_, cols_);
  for (int i = 0; i < rows_; ++i) out.row_[i] = scale_vec(row_[i], c);
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (const auto& [j, v] : row_[i]) out.row_[j].emplace_back(i, v);
  }
  return out;
}

bool Mat::operator==(const Mat& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && row_ == other.row_;
}

bool Mat::is_zero() const {
  for (const auto& r : row_) {
    if (!r.empty()) return false;
  }
  return true;
}

long long Mat::nnz() const {
  long long n = 0;
  for (const auto& r : row_) n += static_cast<long long>(r.size());
  return n;
}

SparseVec Mat::apply(const SparseVec& x) const {
  SparseVec out;
  for (int i = 0; i < rows_; ++i) {
    Rational v = dot(row_[i], x);
    if (v != 0) out.emplace_back(i, std::move(v));
  }
  return out;
}

Mat Mat::vstack(const Mat& below) const {
  if (cols_ != below.cols_) throw std::invalid_argument("vstack column mismatch");
  Mat out(rows_ + below.rows_, cols_);
  for (int i = 0; i < rows_; ++i) out.row_[i] = row_[i];
  for (int i = 0; i < below.rows_; ++i) out.row_[rows_ + i] = below.row_[i];
  return out;
}

Mat Mat::hstack(const Mat& right) const {
  if (rows_ != right.rows_) throw std::invalid_argument("hstack row mismatch");
  Mat out(rows_, cols_ + right.cols_);
  for (int i = 0; i < rows_; ++i) {
    out.row_[i] = row_[i];
    for (const auto& [j, v] : right.row_[i]) out.row_[i].emplace_back(cols_ + j, v);
  }
  return out;
}

std::vector<int> Mat::rref() {
  std::vector<int> pivots;
  int next = 0;  // row where the next pivot lands
  for (int c = 0; c < cols_ && next < rows_; ++c) {
    // Rows >= next have zeros left of c, so a candidate's first entry is c.
    int pivot = -1;
    std::size_t best = 0;
    for (int i = next; i < rows_; ++i) {
      if (!row_[i].empty() && row_[i].front().first == c) {
        if (pivot < 0 || row_[i].size() < best) {
          pivot = i;
          best = row_[i].size();
        }
      }
    }
    if (pivot < 0) continue;
    std::swap(row_[pivot], row_[next]);
    if (row_[next].front().second != 1) {
      row_[next] = scale_vec(row_[next], 1 / row_[next].front().second);
    }
    for (int i = 0; i < rows_; ++i) {
      if (i == next) continue;
      const SparseVec& r = row_[i];
      auto it = std::lower_bound(r.begin(), r.end(), c,
                                 [](const auto& e, int col) { return e.first < col; });
      if (it != r.end() && it->first == c) {
        row_[i] = axpy(row_[i], -it->second, row_[next]);
      }
    }
    pivots.push_back(c);
    ++next;
  }
  return pivots;
}

int Mat::rank() const {
  Mat copy = *this;
  return static_cast<int>(copy.rref().size());
}

Mat Mat::kernel() const {
  Mat work = *this;
  const std::vector<int> pivots = work.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<SparseVec> basis;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
      const Rational a = work.at(i, f);
      if (a != 0) v.emplace_back(pivots[i], -a);
    }
    v.emplace_back(f, Rational(1));
    std::sort(v.begin(), v.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    basis.push_back(std::move(v));
  }
  return Mat::from_cols(cols_, basis);
}

std::optional<Mat> Mat::solve(const Mat& rhs) const {
  if (rhs.rows() != rows_) throw std::invalid_argument("solve shape mismatch");
  Mat aug = hstack(rhs);
  const std::vector<int> pivots = aug.rref();
  for (int c : pivots) {
    if (c >= cols_) return std::nullopt;  // pivot in the rhs block: inconsistent
  }
  Mat x(cols_, rhs.cols());
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
    for (const auto& [j, v] : aug.row(i)) {
      if (j >= cols_) x.set(pivots[i], j - cols_, v);
    }
  }
  return x;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw std::domain_error("inverse of non-square matrix");
  Mat aug = hstack(Mat::identity(rows_));
  const std::vector<int> pivots = aug.rref();
  // a pivot inside the appended identity block certifies singularity
  if (static_cast<int>(pivots.size()) != rows_ ||
      (rows_ > 0 && pivots.back() >= cols_)) {
    throw std::domain_error("inverse of singular matrix");
  }
  Mat out(rows_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (const auto& [j, v] : aug.row(i)) {
      if (j >= cols_) out.set(i, j - cols_, v);
    }
  }
  return out;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  // Stored rows are mutually reduced (no row has an entry at another row's
  // leading column), so one pass over them eliminates every stored lead.
  for (const auto& [lead, row] : rows_) {
    auto pos = std::lower_bound(v.begin(), v.end(), lead,
                                [](const auto& e, int c) { return e.first < c; });
    if (pos != v.end() && pos->first == lead) {
      v = axpy(v, -pos->second, row);
    }
  }
  return v;
}

SparseVec EchelonBasis::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  std::erase_if(r, [](const auto& e) { return e.second == 0; });  // tolerate stored zeros
  if (r.empty()) return {};
  r = scale_vec(r, 1 / r.front().second);
  const int lead = r.front().first;
  for (auto& [other_lead, row] : rows_) {
    auto pos = std::lower_bound(row.begin(), row.end(), lead,
                                [](const auto& e, int c) { return e.first < c; });
    if (pos != row.end() && pos->first == lead) {
      row = axpy(row, -pos->second, r);
    }
  }
  rows_.emplace(lead, r);
  return r;
}

}  // namespace leflab
