#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leflab/matrix.hpp"
#include "leflab/rational.hpp"

namespace leflab {

/// Largest supported coframe dimension (binomial tables are sized for it).
inline constexpr int kMaxDim = 24;

/// Strictly increasing generator indices, 1-based: {1,3,4} stands for
/// e^1 ∧ e^3 ∧ e^4. The empty index is the degree-0 monomial.
using MultiIndex = std::vector<int>;

/// Coefficient vector of a vector field in the frame E_1..E_dim (0-based
/// storage: component k is the E_{k+1} coefficient).
using VectorField = std::vector<Rational>;

/// Endomorphism of the frame; entry (i,j) is the E_{i+1} coefficient of the
/// image of E_{j+1} (columns are images).
using Endomorphism = std::vector<std::vector<Rational>>;

/// Homogeneous invariant form: finite multi-index -> coefficient map with no
/// zero coefficients stored. Values are immutable by convention; operations
/// return new forms.
struct Form {
  int dim = 0;
  int degree = 0;
  std::map<MultiIndex, Rational> coeff;

  static Form zero(int dim, int degree) { return Form{dim, degree, {}}; }
  static Form monomial(int dim, MultiIndex idx, Rational c = Rational(1));
  static Form constant(int dim, Rational c);

  bool is_zero() const { return coeff.empty(); }
  bool operator==(const Form& other) const;
  Form operator+(const Form& other) const;
  Form operator-(const Form& other) const;
  Form scaled(const Rational& c) const;
  /// Adds c to the coefficient of idx, dropping it when the sum is zero.
  void add_term(const MultiIndex& idx, const Rational& c);
};

/// Human-readable rendering, deterministic (lex term order): "e12 - 2 e13".
std::string to_string(const Form& f);

/// Sorts an arbitrary index tuple into a strictly increasing multi-index.
/// Returns the permutation sign, or nullopt when an index repeats.
std::optional<std::pair<MultiIndex, int>> sort_index(const MultiIndex& unsorted);

/// Exterior product; signs by transposition counting during the sorted merge.
Form wedge(const Form& a, const Form& b);

/// Interior product i_v: contraction in the first slot.
Form interior(const VectorField& v, const Form& omega);

/// Degree-0 derivation extending alpha -> alpha∘psi on 1-forms; the identity
/// endomorphism gives degree * omega.
Form insert_endo(const Endomorphism& psi, const Form& omega);

/// Number of degree-p basis monomials, C(dim, p); 0 outside 0..dim.
int space_dim(int dim, int p);

/// Lex-ordered basis of degree-p monomials.
std::vector<MultiIndex> basis(int dim, int p);

/// Rank of a multi-index within the lex-ordered basis, and its inverse.
int index_rank(int dim, const MultiIndex& idx);
MultiIndex index_unrank(int dim, int p, int rank);

/// Coordinates of a form w.r.t. the lex basis of its degree.
SparseVec form_to_vec(const Form& f);
Form vec_to_form(int dim, int degree, const SparseVec& v);

/// Matrix of a degree-homogeneous linear map on degree-p forms. The map must
/// send degree p to degree p + shift; out-of-range targets give a 0-row
/// matrix.
Mat as_matrix(const std::function<Form(const Form&)>& op, int dim, int p, int shift);

}  // namespace leflab
