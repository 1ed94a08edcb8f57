#include "leflab/identities.hpp"

#include <stdexcept>

namespace leflab {

struct OpExpr::Node {
  enum class Kind { prim, weight, scaled, sum, diff, compose, comm, acomm, power };
  Kind kind;
  OperatorName name = OperatorName::d;   // prim
  Rational offset = Rational(0);         // weight: p -> (n - p + offset)
  Rational scalar = Rational(0);         // scaled
  int exponent = 0;                      // power
  std::shared_ptr<const Node> a = nullptr;
  std::shared_ptr<const Node> b = nullptr;
};

namespace {

using Node = OpExpr::Node;
using Kind = Node::Kind;

std::shared_ptr<const Node> make_node(Node n) {
  return std::make_shared<const Node>(std::move(n));
}

}  // namespace

OpExpr OpExpr::prim(OperatorName name) {
  return OpExpr(make_node({.kind = Kind::prim, .name = name}));
}

OpExpr OpExpr::n_minus_deg(Rational offset) {
  return OpExpr(make_node({.kind = Kind::weight, .offset = std::move(offset)}));
}

OpExpr OpExpr::scaled(Rational c, OpExpr e) {
  return OpExpr(make_node({.kind = Kind::scaled, .scalar = std::move(c), .a = e.node_}));
}

OpExpr OpExpr::sum(OpExpr a, OpExpr b) {
  return OpExpr(make_node({.kind = Kind::sum, .a = a.node_, .b = b.node_}));
}

OpExpr OpExpr::diff(OpExpr a, OpExpr b) {
  return OpExpr(make_node({.kind = Kind::diff, .a = a.node_, .b = b.node_}));
}

OpExpr OpExpr::compose(OpExpr a, OpExpr b) {
  return OpExpr(make_node({.kind = Kind::compose, .a = a.node_, .b = b.node_}));
}

OpExpr OpExpr::comm(OpExpr a, OpExpr b) {
  return OpExpr(make_node({.kind = Kind::comm, .a = a.node_, .b = b.node_}));
}

OpExpr OpExpr::acomm(OpExpr a, OpExpr b) {
  return OpExpr(make_node({.kind = Kind::acomm, .a = a.node_, .b = b.node_}));
}

OpExpr OpExpr::pow(OpExpr e, int k) {
  if (k < 1) throw std::invalid_argument("operator power wants a positive exponent");
  if (k == 1) return e;
  return OpExpr(make_node({.kind = Kind::power, .exponent = k, .a = e.node_}));
}

namespace {

GradedOperator eval_node(const Node& n, const SasakianStructure& s, bool diagnostic) {
  switch (n.kind) {
    case Kind::prim:
      return diagnostic ? s.raw_op(n.name) : s.op(n.name);
    case Kind::weight:
      return s.n_minus_deg(n.offset);
    case Kind::scaled:
      return eval_node(*n.a, s, diagnostic).scaled(n.scalar);
    case Kind::sum:
      return eval_node(*n.a, s, diagnostic) + eval_node(*n.b, s, diagnostic);
    case Kind::diff:
      return eval_node(*n.a, s, diagnostic) - eval_node(*n.b, s, diagnostic);
    case Kind::compose:
      return eval_node(*n.a, s, diagnostic) * eval_node(*n.b, s, diagnostic);
    case Kind::comm:
      return commutator(eval_node(*n.a, s, diagnostic), eval_node(*n.b, s, diagnostic));
    case Kind::acomm:
      return anticommutator(eval_node(*n.a, s, diagnostic), eval_node(*n.b, s, diagnostic));
    case Kind::power:
      return eval_node(*n.a, s, diagnostic).pow(n.exponent);
  }
  throw std::logic_error("unknown expression node");
}

// sum/diff bind loosest (0), scaling and composition next (1), everything
// else is self-delimiting (2)
int level(const Node& n) {
  switch (n.kind) {
    case Kind::sum:
    case Kind::diff:
      return 0;
    case Kind::scaled:
    case Kind::compose:
      return 1;
    default:
      return 2;
  }
}

std::string display_node(const Node& n);

std::string display_child(const Node& n, int min_level) {
  std::string s = display_node(n);
  return level(n) >= min_level ? s : "(" + s + ")";
}

std::string display_node(const Node& n) {
  switch (n.kind) {
    case Kind::prim:
      return to_string(n.name);
    case Kind::weight: {
      if (n.offset == 0) return "(n - deg)";
      if (n.offset < 0) return "(n - deg - " + to_string(Rational(-n.offset)) + ")";
      return "(n - deg + " + to_string(n.offset) + ")";
    }
    case Kind::scaled: {
      if (n.scalar == 0) return "0";
      if (n.scalar == 1) return display_node(*n.a);
      if (n.scalar == -1) return "-" + display_child(*n.a, 1);
      return to_string(n.scalar) + " " + display_child(*n.a, 1);
    }
    case Kind::sum:
      return display_child(*n.a, 0) + " + " + display_child(*n.b, 0);
    case Kind::diff:
      return display_child(*n.a, 0) + " - " + display_child(*n.b, 1);
    case Kind::compose:
      return display_child(*n.a, 1) + " " + display_child(*n.b, 1);
    case Kind::comm:
      return "[" + display_node(*n.a) + ", " + display_node(*n.b) + "]";
    case Kind::acomm:
      return "{" + display_node(*n.a) + ", " + display_node(*n.b) + "}";
    case Kind::power:
      return display_child(*n.a, 2) + "^" + std::to_string(n.exponent);
  }
  throw std::logic_error("unknown expression node");
}

}  // namespace

GradedOperator OpExpr::eval(const SasakianStructure& s, bool diagnostic) const {
  return eval_node(*node_, s, diagnostic);
}

std::string OpExpr::display() const { return display_node(*node_); }

std::vector<IdentityEntry> identity_catalog(int n) {
  if (n < 1) throw std::invalid_argument("identity catalog wants n >= 1");
  using E = OpExpr;
  const E d = E::prim(OperatorName::d);
  const E delta = E::prim(OperatorName::delta);
  const E lap = E::prim(OperatorName::laplacian);
  const E eps = E::prim(OperatorName::eps_eta);
  const E ixi = E::prim(OperatorName::i_xi);
  const E iphi = E::prim(OperatorName::i_phi);
  const E l = E::prim(OperatorName::L);
  const E lam = E::prim(OperatorName::Lambda);
  const E lxi = E::prim(OperatorName::lie_xi);
  const E lphi = E::prim(OperatorName::lie_phi);

  std::vector<IdentityEntry> out;
  auto add = [&out](std::string id, E lhs, E rhs) {
    out.push_back({std::move(id), std::move(lhs), std::move(rhs)});
  };
  auto vanishing_comm = [&add](std::string id, const E& a, const E& b) {
    E lhs = E::comm(a, b);
    add(std::move(id), lhs, E::scaled(Rational(0), lhs));
  };

  add("a", E::comm(d, lam),
      E::diff(E::comm(iphi, delta), E::scaled(Rational(2), E::compose(E::n_minus_deg(), ixi))));
  add("b", E::comm(lap, ixi),
      E::diff(E::scaled(Rational(2), E::comm(iphi, delta)),
              E::scaled(Rational(4), E::compose(E::n_minus_deg(), ixi))));
  add("c", E::comm(lap, iphi),
      E::scaled(Rational(-2),
                E::sum(E::diff(lxi, E::compose(ixi, d)), E::compose(eps, delta))));
  add("d", E::comm(lap, eps),
      E::sum(E::scaled(Rational(-2), lphi),
             E::scaled(Rational(4), E::compose(eps, E::n_minus_deg()))));

  int e_idx = 0;
  for (const E& rhs : {eps, ixi, l, lam}) {
    vanishing_comm("e." + std::to_string(++e_idx), iphi, rhs);
  }
  for (const E& rhs : {d, delta, eps, ixi, l, lam, iphi}) {
    vanishing_comm("e." + std::to_string(++e_idx), lxi, rhs);
  }

  vanishing_comm("f.1", iphi, eps);
  vanishing_comm("f.2", iphi, ixi);
  add("g", E::pow(lphi, 2), E::scaled(Rational(-2), E::compose(l, lxi)));
  add("h", E::acomm(delta, eps), E::scaled(Rational(-1), lxi));

  for (int k = 1; k <= n; ++k) {
    E first = k == 1 ? lphi : E::compose(E::pow(l, k - 1), lphi);
    E second = k == 1 ? E::compose(eps, E::n_minus_deg())
                      : E::compose(eps, E::compose(E::pow(l, k - 1),
                                                   E::n_minus_deg(Rational(-(k - 1)))));
    add("i.k=" + std::to_string(k), E::comm(delta, E::pow(l, k)),
        E::sum(E::scaled(Rational(-k), first), E::scaled(Rational(2 * k), second)));
  }
  return out;
}

ResidualReport verify_identity(const SasakianStructure& s, const IdentityEntry& entry,
                               bool diagnostic) {
  ResidualReport report;
  report.id = entry.id;
  report.display = entry.display();

  const GradedOperator lhs = entry.lhs.eval(s, diagnostic);
  const GradedOperator rhs = entry.rhs.eval(s, diagnostic);
  const GradedOperator residual = lhs - rhs;

  for (int p = 0; p <= s.dim(); ++p) {
    const Mat& block = residual.matrix(p);
    const bool zero = block.is_zero();
    report.degree_ok.emplace_back(p, zero);
    if (zero || !report.passed) continue;

    report.passed = false;
    report.counterexample_degree = p;
    int first_col = block.cols();
    for (int i = 0; i < block.rows(); ++i) {
      for (const auto& [j, v] : block.row(i)) {
        if (j < first_col) first_col = j;
      }
    }
    const Form monomial = Form::monomial(s.dim(), index_unrank(s.dim(), p, first_col));
    const Form left = lhs.apply(monomial);
    const Form right = rhs.apply(monomial);
    report.counterexample = to_string(monomial) + ": left = " + to_string(left) +
                            ", right = " + to_string(right);
  }
  return report;
}

ResidualReport verify_identity(const SasakianStructure& s, const std::string& id,
                               bool diagnostic) {
  for (const IdentityEntry& entry : identity_catalog(s.n())) {
    if (entry.id == id) return verify_identity(s, entry, diagnostic);
  }
  throw std::invalid_argument("unknown identity id: " + id);
}

std::vector<std::string> CatalogReport::failed_ids() const {
  std::vector<std::string> out;
  for (const ResidualReport& r : entries) {
    if (!r.passed) out.push_back(r.id);
  }
  return out;
}

CatalogReport verify_catalog(const SasakianStructure& s, bool diagnostic) {
  CatalogReport report;
  for (const IdentityEntry& entry : identity_catalog(s.n())) {
    report.entries.push_back(verify_identity(s, entry, diagnostic));
    report.all_passed = report.all_passed && report.entries.back().passed;
  }
  return report;
}

DualCrosscheckReport identity_i_dual_crosscheck(const SasakianStructure& s) {
  const std::vector<IdentityEntry> catalog = identity_catalog(s.n());
  const IdentityEntry* a = nullptr;
  const IdentityEntry* i1 = nullptr;
  for (const IdentityEntry& entry : catalog) {
    if (entry.id == "a") a = &entry;
    if (entry.id == "i.k=1") i1 = &entry;
  }
  if (a == nullptr || i1 == nullptr) throw std::logic_error("catalog is missing a or i.k=1");

  // [d, Lambda]* = -[delta, L] and likewise for the right-hand sides, so the
  // adjoint route through one identity must land on the negated other.
  const MetricStructure& g = s.metric();
  DualCrosscheckReport report;
  report.lhs_matches = g.adjoint(a->lhs.eval(s)) == i1->lhs.eval(s).scaled(Rational(-1));
  report.rhs_matches = g.adjoint(a->rhs.eval(s)) == i1->rhs.eval(s).scaled(Rational(-1));
  return report;
}

bool HarmonicPropertyReport::all_passed() const {
  return iphi_harmonic && ixi_vanishes.value_or(true) && eps_eta_vanishes.value_or(true) &&
         lambda_vanishes.value_or(true) && l_vanishes.value_or(true);
}

HarmonicPropertyReport verify_tachibana(const SasakianStructure& s, int p) {
  if (p < 0 || p > s.dim()) throw std::out_of_range("degree out of range");
  const Mat& h = s.hodge().harmonic_basis(p);
  const int n = s.n();

  HarmonicPropertyReport report;
  report.degree = p;
  report.harmonic_dim = h.cols();

  const Mat iphi_h = s.op(OperatorName::i_phi).matrix(p) * h;
  report.iphi_harmonic = (s.op(OperatorName::laplacian).matrix(p) * iphi_h).is_zero();
  if (p <= n) report.ixi_vanishes = (s.op(OperatorName::i_xi).matrix(p) * h).is_zero();
  if (p >= n + 1) report.eps_eta_vanishes = (s.op(OperatorName::eps_eta).matrix(p) * h).is_zero();
  if (p <= n + 1) report.lambda_vanishes = (s.op(OperatorName::Lambda).matrix(p) * h).is_zero();
  if (p >= n) report.l_vanishes = (s.op(OperatorName::L).matrix(p) * h).is_zero();
  return report;
}

Form aux_map(const SasakianStructure& s, int p, const Form& alpha) {
  const int n = s.n();
  if (p < 1 || p > n) {
    throw std::invalid_argument("auxiliary map wants 1 <= p <= n");
  }
  if (alpha.dim != s.dim() || alpha.degree != p - 1) {
    throw std::invalid_argument("auxiliary map wants a form of degree p - 1");
  }
  const GradedOperator& d = s.op(OperatorName::d);
  const GradedOperator& iphi = s.op(OperatorName::i_phi);
  const GradedOperator& l = s.op(OperatorName::L);
  const GradedOperator& lap = s.op(OperatorName::laplacian);

  Form first = d.apply(iphi.apply(d.apply(alpha)));
  if (n - p > 0) first = l.pow(n - p).apply(first);
  first = first.scaled(Rational(n - p + 1));
  const Form second = l.pow(n - p + 1).apply(lap.apply(alpha));
  return first + second;
}

AuxMapReport aux_companion_check(const SasakianStructure& s, int p, const Form& alpha) {
  const GradedOperator& d = s.op(OperatorName::d);
  const GradedOperator& delta = s.op(OperatorName::delta);
  const GradedOperator& l = s.op(OperatorName::L);
  const GradedOperator& lap = s.op(OperatorName::laplacian);

  AuxMapReport report;
  report.precondition = s.op(OperatorName::lie_xi).apply(alpha).is_zero() &&
                        delta.apply(alpha).is_zero();

  const Form image = aux_map(s, p, alpha);
  const Form lap_alpha = lap.apply(alpha);
  report.coclosed = delta.apply(image).is_zero();
  report.commutes = lap.apply(image) == aux_map(s, p, lap_alpha);
  if (l.pow(s.n() - p + 1).apply(d.apply(lap_alpha)).is_zero()) {
    report.vanishes = image.is_zero();
  }
  return report;
}

}  // namespace leflab
