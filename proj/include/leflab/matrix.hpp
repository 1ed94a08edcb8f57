#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "leflab/rational.hpp"

namespace leflab {

/// Sparse vector: (index, value) pairs sorted by index, no zero values stored.
using SparseVec = std::vector<std::pair<int, Rational>>;

/// r += c * v (sparse merge; result stays sorted and zero-free).
SparseVec axpy(const SparseVec& r, const Rational& c, const SparseVec& v);
SparseVec scale_vec(const SparseVec& v, const Rational& c);
Rational dot(const SparseVec& a, const SparseVec& b);
SparseVec dense_to_sparse(const std::vector<Rational>& dense);
std::vector<Rational> sparse_to_dense(const SparseVec& v, int size);

/// Sparse exact matrix over Rational with deterministic Gauss-Jordan
/// elimination. Rows are kept sorted by column with no explicit zeros.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  static Mat from_rows(int cols, std::vector<SparseVec> rows);
  static Mat from_cols(int rows, const std::vector<SparseVec>& cols);
  static Mat from_dense(const std::vector<std::vector<Rational>>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVec& row(int i) const { return row_[i]; }
  SparseVec col(int j) const;
  Rational at(int i, int j) const;
  void set(int i, int j, const Rational& value);

  Mat operator+(const Mat& other) const;
  Mat operator-(const Mat& other) const;
  Mat operator*(const Mat& other) const;
  Mat scaled(const Rational& c) const;
  Mat transpose() const;
  bool operator==(const Mat& other) const;
  bool operator!=(const Mat& other) const { return !(*this == other); }
  bool is_zero() const;
  long long nnz() const;

  SparseVec apply(const SparseVec& x) const;

  /// Stacks rows of `below` under this matrix (column counts must agree).
  Mat vstack(const Mat& below) const;
  /// Appends columns of `right` (row counts must agree).
  Mat hstack(const Mat& right) const;

  /// In-place reduced row echelon form; returns pivot columns in order.
  /// Pivot choice is deterministic: leftmost column, then the candidate row
  /// with fewest nonzeros, then lowest row index.
  std::vector<int> rref();

  int rank() const;
  /// Kernel basis as matrix columns, RREF-normalized (free coordinate 1).
  Mat kernel() const;
  /// Solves A X = rhs exactly; free variables are set to zero. Returns
  /// nullopt when inconsistent.
  std::optional<Mat> solve(const Mat& rhs) const;
  /// Exact inverse; throws std::domain_error when not square or singular.
  Mat inverse() const;

 private:
  int rows_;
  int cols_;
  std::vector<SparseVec> row_;
};

/// Incremental reduced echelon basis of row vectors; rows are kept mutually
/// reduced with leading coefficient 1, so insertion order determines the
/// basis deterministically.
class EchelonBasis {
 public:
  explicit EchelonBasis(int ncols) : ncols_(ncols) {}

  /// Fully reduces v against the basis; returns the residue.
  SparseVec reduce(SparseVec v) const;
  /// Reduces v; when the residue is nonzero, normalizes and inserts it and
  /// returns the stored row. Returns an empty vector when v was dependent.
  SparseVec insert(const SparseVec& v);
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  int ncols_;
  std::map<int, SparseVec> rows_;  // keyed by leading column
};

}  // namespace leflab
