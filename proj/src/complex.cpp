#include "leflab/complex.hpp"

#include <sstream>
#include <stdexcept>

namespace leflab {

namespace {

VectorField basis_vector(int dim, int k) {
  VectorField v(dim, Rational(0));
  v[k - 1] = Rational(1);
  return v;
}

// Jacobi defect [[x,y],z] + [[y,z],x] + [[z,x],y] for basis indices, used to
// name a concrete violating triple when d*d != 0.
VectorField jacobi_defect(const InvariantComplex& cx, int i, int j, int k) {
  VectorField out(cx.dim(), Rational(0));
  auto acc = [&](const VectorField& v) {
    for (int s = 0; s < cx.dim(); ++s) out[s] += v[s];
  };
  const int n = cx.dim();
  acc(cx.bracket(cx.bracket(i, j), basis_vector(n, k)));
  acc(cx.bracket(cx.bracket(j, k), basis_vector(n, i)));
  acc(cx.bracket(cx.bracket(k, i), basis_vector(n, j)));
  return out;
}

bool all_zero(const VectorField& v) {
  for (const Rational& c : v) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace

InvariantComplex InvariantComplex::build(const LieAlgebraSpec& spec) {
  if (spec.dim < 1 || spec.dim > kMaxDim) {
    throw std::invalid_argument("algebra dimension out of supported range");
  }
  if (static_cast<int>(spec.diff.size()) != spec.dim) {
    throw std::invalid_argument("need one coframe differential per generator");
  }
  InvariantComplex cx;
  cx.name_ = spec.name;
  cx.dim_ = spec.dim;
  cx.diff_ = spec.diff;
  for (int k = 1; k <= spec.dim; ++k) {
    const Form& f = cx.diff_[k - 1];
    if (f.dim != spec.dim || (!f.is_zero() && f.degree != 2)) {
      std::ostringstream msg;
      msg << "differential of e" << k << " must be a 2-form on " << spec.dim
          << " generators";
      throw std::invalid_argument(msg.str());
    }
  }

  cx.d_ = GradedOperator::from_form_op(spec.dim, 1,
                                       [&cx](const Form& f) { return cx.d_form(f); });
  const GradedOperator dd = cx.d_ * cx.d_;
  if (!dd.is_zero()) {
    // d^2 e^k is a 3-form; any nonzero one certifies a Jacobi failure.
    int bad_gen = 0;
    for (int k = 1; k <= spec.dim; ++k) {
      if (!cx.d_form(cx.diff_[k - 1]).is_zero()) {
        bad_gen = k;
        break;
      }
    }
    for (int i = 1; i <= spec.dim; ++i) {
      for (int j = i + 1; j <= spec.dim; ++j) {
        for (int l = j + 1; l <= spec.dim; ++l) {
          if (all_zero(jacobi_defect(cx, i, j, l))) continue;
          std::ostringstream msg;
          msg << "structure constants violate the Jacobi identity: d(d e" << bad_gen
              << ") != 0, bracket fails on (E" << i << ", E" << j << ", E" << l << ")";
          throw std::invalid_argument(msg.str());
        }
      }
    }
    throw std::invalid_argument("d*d != 0 on the coframe");
  }

  cx.compute_cohomology();
  return cx;
}

const Form& InvariantComplex::coframe_diff(int k) const {
  if (k < 1 || k > dim_) throw std::out_of_range("coframe index out of range");
  return diff_[k - 1];
}

Form InvariantComplex::d_form(const Form& f) const {
  if (f.dim != dim_) throw std::invalid_argument("form dimension mismatch");
  Form out = Form::zero(dim_, std::min(f.degree + 1, dim_));
  for (const auto& [idx, c] : f.coeff) {
    // d(e^{i1..ip}) = sum_s (-1)^{s-1} e^{i1..} ^ de^{i_s} ^ e^{..ip}
    for (size_t s = 0; s < idx.size(); ++s) {
      MultiIndex rest;
      rest.reserve(idx.size() - 1);
      for (size_t t = 0; t < idx.size(); ++t) {
        if (t != s) rest.push_back(idx[t]);
      }
      const Rational sign = (s % 2 == 0) ? c : -c;
      Form term = wedge(diff_[idx[s] - 1].scaled(sign),
                        Form::monomial(dim_, rest, Rational(1)));
      if (!term.is_zero()) out = out + term;
    }
  }
  return out;
}

VectorField InvariantComplex::bracket(int i, int j) const {
  return bracket(basis_vector(dim_, i), basis_vector(dim_, j));
}

VectorField InvariantComplex::bracket(const VectorField& x, const VectorField& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_) {
    throw std::invalid_argument("vector dimension mismatch");
  }
  // de^k = sum_{i<j} c_{ij} e^i^e^j  gives  e^k([E_i, E_j]) = -c_{ij}.
  VectorField out(dim_, Rational(0));
  for (int k = 1; k <= dim_; ++k) {
    Rational acc(0);
    for (const auto& [idx, c] : diff_[k - 1].coeff) {
      const int a = idx[0];
      const int b = idx[1];
      acc -= c * (x[a - 1] * y[b - 1] - x[b - 1] * y[a - 1]);
    }
    out[k - 1] = acc;
  }
  return out;
}

int InvariantComplex::betti(int p) const {
  if (p < 0 || p > dim_) return 0;
  return static_cast<int>(coh_[p].reps.size());
}

const CohomologySpace& InvariantComplex::cohomology(int p) const {
  if (p < 0 || p > dim_) throw std::out_of_range("degree out of range");
  return coh_[p];
}

void InvariantComplex::compute_cohomology() {
  coh_.assign(dim_ + 1, CohomologySpace{});
  class_solver_.assign(dim_ + 1, Mat::zero(0, 0));
  for (int p = 0; p <= dim_; ++p) {
    coh_[p].p = p;
    const int np = space_dim(dim_, p);

    // Boundary space: echelon basis of the columns of d acting on degree p-1.
    EchelonBasis boundaries(np);
    std::vector<SparseVec> boundary_cols;
    if (p >= 1) {
      const Mat& dprev = d_.matrix(p - 1);
      for (int j = 0; j < dprev.cols(); ++j) {
        SparseVec r = boundaries.insert(dprev.col(j));
        if (!r.empty()) boundary_cols.push_back(std::move(r));
      }
    }

    // Reduce a deterministic kernel basis of d_p against the boundaries; the
    // surviving residues are the representatives.
    EchelonBasis reps(np);
    std::vector<SparseVec> rep_cols;
    const Mat ker = d_.matrix(p).kernel();
    for (int j = 0; j < ker.cols(); ++j) {
      SparseVec r = reps.insert(boundaries.reduce(ker.col(j)));
      if (!r.empty()) rep_cols.push_back(std::move(r));
    }
    for (const SparseVec& v : rep_cols) {
      coh_[p].reps.push_back(vec_to_form(dim_, p, v));
    }

    std::vector<SparseVec> solver_cols = rep_cols;
    solver_cols.insert(solver_cols.end(), boundary_cols.begin(), boundary_cols.end());
    class_solver_[p] = Mat::from_cols(np, solver_cols);
  }
}

std::vector<Rational> InvariantComplex::class_of(const Form& f) const {
  if (f.dim != dim_) throw std::invalid_argument("form dimension mismatch");
  if (f.degree < 0 || f.degree > dim_) throw std::invalid_argument("degree out of range");
  if (!d_form(f).is_zero()) throw std::invalid_argument("form is not closed");
  const int p = f.degree;
  const auto sol =
      class_solver_[p].solve(Mat::from_cols(space_dim(dim_, p), {form_to_vec(f)}));
  if (!sol) throw std::logic_error("closed form not in cocycle span");
  std::vector<Rational> out(coh_[p].reps.size(), Rational(0));
  for (const auto& [i, v] : sol->col(0)) {
    if (i < static_cast<int>(out.size())) out[i] = v;
  }
  return out;
}

}  // namespace leflab
