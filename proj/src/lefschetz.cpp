#include "leflab/lefschetz.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace leflab {

RelationReport relation(const InvariantComplex& cx, const ContactData& contact, int p) {
  const int n = contact.n;
  const int dim = cx.dim();
  if (p < 0 || p > n) throw std::invalid_argument("relation needs a degree in 0..n");
  const int q = dim - p;

  const GradedOperator l = wedge_operator(dim, contact.Phi);
  const GradedOperator ixi = interior_operator(dim, contact.xi);

  RelationReport report;
  report.degree = p;
  report.constraint_space =
      cx.d().matrix(p).vstack(ixi.matrix(p)).vstack(l.pow(n - p + 1).matrix(p)).kernel();
  const Mat& v = report.constraint_space;

  const GradedOperator dual = wedge_operator(dim, contact.eta) * l.pow(n - p);
  std::vector<SparseVec> class_cols, image_cols;
  for (int j = 0; j < v.cols(); ++j) {
    const Form beta = vec_to_form(dim, p, v.col(j));
    class_cols.push_back(dense_to_sparse(cx.class_of(beta)));
    image_cols.push_back(dense_to_sparse(cx.class_of(dual.apply(beta))));
  }
  report.class_matrix = Mat::from_cols(cx.betti(p), class_cols);
  report.image_class_matrix = Mat::from_cols(cx.betti(q), image_cols);

  report.well_defined =
      (report.image_class_matrix * report.class_matrix.kernel()).is_zero();
  report.domain_full = report.class_matrix.rank() == cx.betti(p);

  if (report.well_defined && report.domain_full) {
    const auto solved =
        report.class_matrix.transpose().solve(report.image_class_matrix.transpose());
    if (!solved) {
      throw InternalInvariantViolation("well-defined relation has no induced matrix");
    }
    report.induced = solved->transpose();
    report.bijective = report.induced->rows() == report.induced->cols() &&
                       report.induced->rank() == report.induced->rows();
  }
  return report;
}

std::vector<Form> constrained_representatives(const InvariantComplex& cx,
                                              const ContactData& contact, int p) {
  const auto report = relation(cx, contact, p);
  std::vector<Form> out;
  EchelonBasis seen(cx.betti(p));
  for (int j = 0; j < report.constraint_space.cols(); ++j) {
    if (seen.insert(report.class_matrix.col(j)).empty()) continue;
    out.push_back(vec_to_form(cx.dim(), p, report.constraint_space.col(j)));
  }
  return out;
}

Mat lef_matrix_harmonic(const SasakianStructure& s, int p) {
  if (!s.verified()) throw std::invalid_argument("harmonic route needs a verified structure");
  const int n = s.n();
  if (p < 0 || p > n) throw std::invalid_argument("harmonic route needs a degree in 0..n");
  const auto& cx = s.complex();
  const int dim = cx.dim();
  const Mat& projector = s.hodge().harmonic_projector(p);
  const GradedOperator dual = s.op(OperatorName::eps_eta) * s.op(OperatorName::L).pow(n - p);
  std::vector<SparseVec> cols;
  for (const Form& rep : cx.cohomology(p).reps) {
    const Form harm = vec_to_form(dim, p, projector.apply(form_to_vec(rep)));
    cols.push_back(dense_to_sparse(cx.class_of(dual.apply(harm))));
  }
  return Mat::from_cols(cx.betti(dim - p), cols);
}

MetricIndependenceReport metric_independence_check(const SasakianStructure& s1,
                                                   const SasakianStructure& s2, int p) {
  if (!s1.verified() || !s2.verified()) {
    throw std::invalid_argument("independence check needs verified structures");
  }
  if (s1.dim() != s2.dim()) {
    throw std::invalid_argument("structures live on different complexes");
  }
  for (int k = 1; k <= s1.dim(); ++k) {
    if (!(s1.complex().coframe_diff(k) == s2.complex().coframe_diff(k))) {
      throw std::invalid_argument("structures live on different complexes");
    }
  }
  if (!(s1.contact().eta == s2.contact().eta)) {
    throw std::invalid_argument("structures carry different contact forms");
  }
  MetricIndependenceReport report;
  report.degree = p;
  report.first = lef_matrix_harmonic(s1, p);
  report.second = lef_matrix_harmonic(s2, p);
  const auto rel = relation(s1.complex(), s1.contact(), p);
  if (!rel.induced) {
    throw InternalInvariantViolation("relation route degenerated on a verified structure");
  }
  report.relation_matrix = *rel.induced;
  report.all_equal =
      report.first == report.second && report.second == report.relation_matrix;
  return report;
}

Rational integrate_top(int dim, const Form& omega) {
  if (omega.dim != dim || omega.degree != dim) {
    throw std::invalid_argument("integrand must have top degree");
  }
  MultiIndex top(dim);
  std::iota(top.begin(), top.end(), 1);
  const auto it = omega.coeff.find(top);
  return it == omega.coeff.end() ? Rational(0) : it->second;
}

Rational integrate_top(const HodgePackage& hodge, const Form& omega) {
  const int dim = hodge.dim();
  const Rational scale = integrate_top(dim, hodge.star(Form::constant(dim, Rational(1))));
  return Rational(integrate_top(dim, omega) / scale);
}

Mat bilinear_form(const InvariantComplex& cx, const ContactData& contact,
                  const std::vector<Form>& reps) {
  if (reps.empty()) return Mat(0, 0);
  const int n = contact.n;
  const int dim = cx.dim();
  const int p = reps.front().degree;
  if (p < 0 || p > n) throw std::invalid_argument("representatives must have degree 0..n");
  const GradedOperator ixi = interior_operator(dim, contact.xi);
  const GradedOperator l = wedge_operator(dim, contact.Phi);
  const GradedOperator annihilator = l.pow(n - p + 1);
  for (const Form& w : reps) {
    if (w.dim != dim || w.degree != p) {
      throw std::invalid_argument("representatives must share one degree");
    }
    if (!cx.d().apply(w).is_zero() || !ixi.apply(w).is_zero() ||
        !annihilator.apply(w).is_zero()) {
      throw std::invalid_argument("representative violates the duality constraints");
    }
  }
  const int m = static_cast<int>(reps.size());
  Mat b(m, m);
  for (int i = 0; i < m; ++i) {
    const Form lead = wedge(contact.eta, l.pow(n - p).apply(reps[i]));
    for (int j = 0; j < m; ++j) {
      const Rational value = integrate_top(dim, wedge(lead, reps[j]));
      if (value != 0) b.set(i, j, value);
    }
  }
  return b;
}

ParityReport betti_parity(const InvariantComplex& cx, const ContactData& contact) {
  ParityReport report;
  for (int p = 1; p <= contact.n; p += 2) {
    const int betti = cx.betti(p);
    const bool even = betti % 2 == 0;
    report.odd_checks.push_back({p, betti, even});
    if (!even) report.all_even = false;
  }
  return report;
}

ObstructionVerdict verdict(const InvariantComplex& cx, const ContactData& contact,
                           const SasakianStructure* s) {
  if (s != nullptr) {
    if (!s->verified()) {
      throw std::invalid_argument("cross-validation needs a verified structure");
    }
    if (s->dim() != cx.dim() || !(s->contact().eta == contact.eta)) {
      throw std::invalid_argument("cross-validation structure does not match the contact data");
    }
  }
  ObstructionVerdict out;
  for (int p = 0; p <= contact.n; ++p) {
    out.relations.push_back(relation(cx, contact, p));
    const RelationReport& rel = out.relations.back();
    if (!rel.graph_of_isomorphism()) {
      std::string why;
      if (!rel.well_defined) {
        why = "not well defined";
      } else if (!rel.domain_full) {
        why = "does not cover every class";
      } else {
        why = "induced map is not bijective";
      }
      out.reasons.push_back("relation at p = " + std::to_string(p) +
                            " is not the graph of an isomorphism (" + why + ")");
    }
    if (s != nullptr) {
      if (!rel.induced || !(*rel.induced == lef_matrix_harmonic(*s, p))) {
        throw InternalInvariantViolation("relation route disagrees with the harmonic route at p = " +
                                         std::to_string(p));
      }
    }
  }
  out.parity = betti_parity(cx, contact);
  for (const auto& entry : out.parity.odd_checks) {
    if (!entry.even) {
      out.reasons.push_back("betti number b_" + std::to_string(entry.p) + " = " +
                            std::to_string(entry.betti) + " is odd");
    }
  }
  out.lefschetz_contact = out.reasons.empty();
  return out;
}

}  // namespace leflab
