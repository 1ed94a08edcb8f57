#include "leflab/sasakian.hpp"

#include <stdexcept>
#include <utility>

namespace leflab {

namespace {

VectorField frame_vector(int dim, int k) {
  VectorField v(dim, Rational(0));
  v[k - 1] = 1;
  return v;
}

Rational coeff1(const Form& f, int j) {
  auto it = f.coeff.find(MultiIndex{j});
  return it == f.coeff.end() ? Rational(0) : it->second;
}

/// Value of a 2-form on a frame pair (E_i, E_j).
Rational pair_eval(const Form& f, int i, int j) {
  if (i == j) return Rational(0);
  if (i > j) return -pair_eval(f, j, i);
  auto it = f.coeff.find(MultiIndex{i, j});
  return it == f.coeff.end() ? Rational(0) : it->second;
}

VectorField endo_apply(const Endomorphism& psi, const VectorField& v) {
  const int dim = static_cast<int>(v.size());
  VectorField out(dim, Rational(0));
  for (int j = 0; j < dim; ++j) {
    if (v[j] == 0) continue;
    for (int i = 0; i < dim; ++i) out[i] += psi[i][j] * v[j];
  }
  return out;
}

bool vec_is_zero(const VectorField& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

Mat column(const std::vector<Rational>& v) {
  Mat m(static_cast<int>(v.size()), 1);
  for (int i = 0; i < static_cast<int>(v.size()); ++i) m.set(i, 0, v[i]);
  return m;
}

std::string frame_name(int i) { return "E" + std::to_string(i); }

/// Witness "(E_i, E_j)" of the first nonzero entry, for residuals indexed by
/// frame pairs, or "(E_j)" of its column for residuals indexed by arguments.
AxiomCheck matrix_check(const std::string& name, const Mat& residual, bool pair_witness) {
  for (int i = 0; i < residual.rows(); ++i) {
    const SparseVec& r = residual.row(i);
    if (r.empty()) continue;
    const int j = r.front().first;
    AxiomCheck c{name, false, {}};
    c.witness = pair_witness ? "(" + frame_name(i + 1) + ", " + frame_name(j + 1) + ")"
                             : "(" + frame_name(j + 1) + ")";
    return c;
  }
  return AxiomCheck{name, true, {}};
}

}  // namespace

GradedOperator wedge_operator(int dim, const Form& f) {
  return GradedOperator::from_form_op(dim, f.degree,
                                      [f](const Form& x) { return wedge(f, x); });
}

GradedOperator interior_operator(int dim, const VectorField& v) {
  return GradedOperator::from_form_op(dim, -1,
                                      [v](const Form& x) { return interior(v, x); });
}

GradedOperator insert_endo_operator(int dim, const Endomorphism& psi) {
  return GradedOperator::from_form_op(dim, 0,
                                      [psi](const Form& x) { return insert_endo(psi, x); });
}

ContactData make_contact(const InvariantComplex& cx, const Form& eta) {
  const int dim = cx.dim();
  if (eta.dim != dim || eta.degree != 1)
    throw std::invalid_argument("contact form must be a 1-form on the complex");
  if (dim % 2 == 0)
    throw std::invalid_argument("contact structures require odd dimension, got " +
                                std::to_string(dim));
  const int n = (dim - 1) / 2;
  const Form deta = cx.d_form(eta);

  Form top = eta;
  for (int k = 0; k < n; ++k) top = wedge(top, deta);
  if (top.is_zero())
    throw std::invalid_argument("not a contact form: eta ^ (d eta)^" + std::to_string(n) +
                                " = 0");

  // Reeb conditions, linear in xi: eta(xi) = 1 and (i_xi d eta)(E_j) = 0.
  std::vector<SparseVec> cols;
  cols.reserve(dim);
  for (int j = 1; j <= dim; ++j) {
    std::vector<Rational> cond(1 + dim, Rational(0));
    cond[0] = coeff1(eta, j);
    const Form c = interior(frame_vector(dim, j), deta);
    for (int i = 1; i <= dim; ++i) cond[i] = coeff1(c, i);
    cols.push_back(dense_to_sparse(cond));
  }
  Mat a = Mat::from_cols(1 + dim, cols);
  Mat rhs(1 + dim, 1);
  rhs.set(0, 0, Rational(1));
  auto sol = a.solve(rhs);
  if (!sol)
    throw std::invalid_argument("not a contact form: Reeb conditions are unsolvable");

  VectorField xi(dim, Rational(0));
  for (int i = 0; i < dim; ++i) xi[i] = sol->at(i, 0);
  return ContactData{eta, xi, deta.scaled(Rational(1, 2)), n};
}

bool AxiomReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::vector<std::string> AxiomReport::failed_names() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

std::string to_string(OperatorName name) {
  switch (name) {
    case OperatorName::eps_eta: return "eps_eta";
    case OperatorName::i_xi: return "i_xi";
    case OperatorName::i_phi: return "i_phi";
    case OperatorName::L: return "L";
    case OperatorName::Lambda: return "Lambda";
    case OperatorName::lie_xi: return "lie_xi";
    case OperatorName::lie_phi: return "lie_phi";
    case OperatorName::deg: return "deg";
    case OperatorName::d: return "d";
    case OperatorName::delta: return "delta";
    case OperatorName::laplacian: return "laplacian";
  }
  throw std::logic_error("unknown operator name");
}

SasakianStructure::SasakianStructure(std::shared_ptr<const InvariantComplex> cx,
                                     MetricStructure metric)
    : cx_(std::move(cx)), hodge_(cx_, std::move(metric)) {}

SasakianStructure SasakianStructure::check(std::shared_ptr<const InvariantComplex> cx,
                                           const Form& eta, MetricStructure metric,
                                           std::optional<Endomorphism> phi) {
  ContactData contact = make_contact(*cx, eta);
  SasakianStructure s(std::move(cx), std::move(metric));
  s.contact_ = std::move(contact);
  const int dim = s.cx_->dim();

  // Phi as the antisymmetric matrix Phi(E_i, E_j).
  Mat phi_form_mat(dim, dim);
  for (const auto& [idx, c] : s.contact_.Phi.coeff) {
    phi_form_mat.set(idx[0] - 1, idx[1] - 1, c);
    phi_form_mat.set(idx[1] - 1, idx[0] - 1, -c);
  }
  // Vector-field Gram matrix g(E_i, E_j) is the inverse of the coframe Gram.
  const Mat& gram_vec = s.metric().gram_inv(1);

  Mat p_mat;
  if (phi) {
    if (static_cast<int>(phi->size()) != dim)
      throw std::invalid_argument("phi must be a " + std::to_string(dim) + " x " +
                                  std::to_string(dim) + " matrix");
    for (const auto& row : *phi)
      if (static_cast<int>(row.size()) != dim)
        throw std::invalid_argument("phi must be a " + std::to_string(dim) + " x " +
                                    std::to_string(dim) + " matrix");
    s.phi_ = std::move(*phi);
    p_mat = Mat::from_dense(s.phi_);
  } else {
    // Phi(X, Y) = g(X, phi Y) in matrix form is phi_form_mat = gram_vec * phi.
    p_mat = s.metric().gram1() * phi_form_mat;
    s.phi_.assign(dim, std::vector<Rational>(dim, Rational(0)));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) s.phi_[i][j] = p_mat.at(i, j);
  }

  const Mat eta_col = column(std::vector<Rational>([&] {
    std::vector<Rational> e(dim, Rational(0));
    for (int i = 1; i <= dim; ++i) e[i - 1] = coeff1(s.contact_.eta, i);
    return e;
  }()));
  const Mat xi_col = column(s.contact_.xi);

  std::vector<AxiomCheck>& checks = s.report_.checks;
  checks.push_back(matrix_check("contact_compatibility",
                                gram_vec * p_mat - phi_form_mat, true));
  checks.push_back(matrix_check("phi_squared",
                                p_mat * p_mat + Mat::identity(dim) -
                                    xi_col * eta_col.transpose(),
                                false));
  checks.push_back(matrix_check("metric_compatibility",
                                p_mat.transpose() * gram_vec * p_mat - gram_vec +
                                    eta_col * eta_col.transpose(),
                                true));

  // Normality: N_phi(X, Y) + d eta(X, Y) xi = 0 on all frame pairs, with
  // N_phi(X, Y) = phi^2 [X, Y] + [phi X, phi Y] - phi [phi X, Y] - phi [X, phi Y].
  {
    const Form deta = s.contact_.Phi.scaled(Rational(2));
    AxiomCheck norm{"normality", true, {}};
    for (int i = 1; i <= dim && norm.passed; ++i) {
      for (int j = i + 1; j <= dim && norm.passed; ++j) {
        const VectorField phi_i = endo_apply(s.phi_, frame_vector(dim, i));
        const VectorField phi_j = endo_apply(s.phi_, frame_vector(dim, j));
        VectorField defect =
            endo_apply(s.phi_, endo_apply(s.phi_, s.cx_->bracket(i, j)));
        const VectorField t2 = s.cx_->bracket(phi_i, phi_j);
        const VectorField t3 = endo_apply(s.phi_, s.cx_->bracket(phi_i, frame_vector(dim, j)));
        const VectorField t4 = endo_apply(s.phi_, s.cx_->bracket(frame_vector(dim, i), phi_j));
        const Rational de = pair_eval(deta, i, j);
        for (int a = 0; a < dim; ++a)
          defect[a] += t2[a] - t3[a] - t4[a] + de * s.contact_.xi[a];
        if (!vec_is_zero(defect)) {
          norm.passed = false;
          norm.witness = "(" + frame_name(i) + ", " + frame_name(j) + ")";
        }
      }
    }
    checks.push_back(norm);
  }

  checks.push_back(matrix_check("reeb_metric_dual", gram_vec * xi_col - eta_col, false));
  checks.push_back(matrix_check("phi_xi", p_mat * xi_col, false));
  checks.push_back(matrix_check("eta_phi", eta_col.transpose() * p_mat, false));

  s.verified_ = s.report_.all_passed();
  s.build_operators();
  return s;
}

void SasakianStructure::build_operators() {
  const int dim = cx_->dim();
  auto slot = [this](OperatorName name) -> GradedOperator& {
    return ops_[static_cast<int>(name)];
  };
  slot(OperatorName::d) = cx_->d();
  slot(OperatorName::eps_eta) = wedge_operator(dim, contact_.eta);
  slot(OperatorName::i_xi) = interior_operator(dim, contact_.xi);
  slot(OperatorName::i_phi) = insert_endo_operator(dim, phi_);
  slot(OperatorName::L) = wedge_operator(dim, contact_.Phi);
  slot(OperatorName::Lambda) = metric().adjoint(slot(OperatorName::L));
  slot(OperatorName::delta) = hodge_.delta();
  slot(OperatorName::laplacian) = hodge_.laplacian();
  slot(OperatorName::lie_xi) =
      anticommutator(slot(OperatorName::d), slot(OperatorName::i_xi));
  slot(OperatorName::lie_phi) = slot(OperatorName::i_phi) * slot(OperatorName::d) -
                                slot(OperatorName::d) * slot(OperatorName::i_phi);
  slot(OperatorName::deg) =
      GradedOperator::diagonal(dim, [](int p) { return Rational(p); });
}

const GradedOperator& SasakianStructure::op(OperatorName name) const {
  if (!verified_) {
    std::string msg = "operator algebra requires a verified Sasakian structure; failed:";
    for (const auto& f : report_.failed_names()) msg += " " + f;
    throw std::logic_error(msg);
  }
  return raw_op(name);
}

const GradedOperator& SasakianStructure::raw_op(OperatorName name) const {
  return ops_[static_cast<int>(name)];
}

GradedOperator SasakianStructure::n_minus_deg(const Rational& offset) const {
  const int n = contact_.n;
  return GradedOperator::diagonal(
      // explicit return type: gmp expression templates must not escape the lambda
      dim(), [n, offset](int p) -> Rational { return Rational(n - p) + offset; });
}

AdjointPairsReport SasakianStructure::adjoint_pairs_check() const {
  AdjointPairsReport out;
  const int dim = cx_->dim();
  const GradedOperator& eps = raw_op(OperatorName::eps_eta);
  const GradedOperator& ixi = raw_op(OperatorName::i_xi);
  const GradedOperator& l = raw_op(OperatorName::L);
  const GradedOperator& lam = raw_op(OperatorName::Lambda);
  for (int p = 0; p + 1 <= dim; ++p) {
    Mat r = eps.matrix(p).transpose() * metric().gram(p + 1) -
            metric().gram(p) * ixi.matrix(p + 1);
    if (!r.is_zero()) {
      out.eps_eta_adjoint_of_i_xi = false;
      out.eps_eta_residuals.emplace_back(p, std::move(r));
    }
  }
  for (int p = 0; p + 2 <= dim; ++p) {
    Mat r = l.matrix(p).transpose() * metric().gram(p + 2) -
            metric().gram(p) * lam.matrix(p + 2);
    if (!r.is_zero()) {
      out.lambda_adjoint_of_L = false;
      out.lambda_residuals.emplace_back(p, std::move(r));
    }
  }
  return out;
}

}  // namespace leflab
