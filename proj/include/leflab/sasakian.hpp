#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leflab/complex.hpp"
#include "leflab/exterior.hpp"
#include "leflab/graded_operator.hpp"
#include "leflab/metric.hpp"

namespace leflab {

/// Wedge by a fixed form, as a graded operator of shift deg(f).
GradedOperator wedge_operator(int dim, const Form& f);
/// Interior product with a fixed vector field (shift -1).
GradedOperator interior_operator(int dim, const VectorField& v);
/// Derivation extension of an endomorphism (shift 0).
GradedOperator insert_endo_operator(int dim, const Endomorphism& psi);

/// Contact data on an odd-dimensional complex: eta, the Reeb field xi with
/// i_xi eta = 1 and i_xi d eta = 0, and Phi = (1/2) d eta.
struct ContactData {
  Form eta;
  VectorField xi;
  Form Phi;
  int n = 0;  // dim = 2n + 1
};

/// Solves the Reeb conditions for eta.  Throws std::invalid_argument when
/// the dimension is even or eta ^ (d eta)^n = 0.
ContactData make_contact(const InvariantComplex& cx, const Form& eta);

/// Outcome of one structure axiom, with a frame witness when it fails.
struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
  std::vector<std::string> failed_names() const;
};

enum class OperatorName {
  eps_eta,
  i_xi,
  i_phi,
  L,
  Lambda,
  lie_xi,
  lie_phi,
  deg,
  d,
  delta,
  laplacian,
};
inline constexpr int kOperatorCount = 11;

std::string to_string(OperatorName name);

/// Adjointness of the pairs eps_eta = i_xi^* and Lambda = L^*, tested
/// directly through the per-degree Gram matrices (independently of how the
/// operators were assembled).
struct AdjointPairsReport {
  bool eps_eta_adjoint_of_i_xi = true;
  bool lambda_adjoint_of_L = true;
  std::vector<std::pair<int, Mat>> eps_eta_residuals;  // (degree, residual)
  std::vector<std::pair<int, Mat>> lambda_residuals;
  bool all_passed() const { return eps_eta_adjoint_of_i_xi && lambda_adjoint_of_L; }
};

/// Almost contact metric structure with machine-checked Sasakian axioms and
/// the cached operator algebra.  Construction succeeds whenever eta is
/// contact and the metric is admissible; `verified()` tells whether every
/// axiom passed.
class SasakianStructure {
 public:
  /// Builds the structure and checks every axiom.  When phi is omitted the
  /// canonical candidate is derived from Phi(X, Y) = g(X, phi Y).
  static SasakianStructure check(std::shared_ptr<const InvariantComplex> cx,
                                 const Form& eta, MetricStructure metric,
                                 std::optional<Endomorphism> phi = std::nullopt);

  const InvariantComplex& complex() const { return *cx_; }
  const std::shared_ptr<const InvariantComplex>& complex_ptr() const { return cx_; }
  const HodgePackage& hodge() const { return hodge_; }
  const MetricStructure& metric() const { return hodge_.metric(); }
  const ContactData& contact() const { return contact_; }
  const Endomorphism& phi() const { return phi_; }
  const AxiomReport& axioms() const { return report_; }
  bool verified() const { return verified_; }
  int dim() const { return cx_->dim(); }
  int n() const { return contact_.n; }

  /// Named operator of the verified structure.  Throws std::logic_error when
  /// verification failed; diagnostics on failing structures use raw_op.
  const GradedOperator& op(OperatorName name) const;
  const GradedOperator& raw_op(OperatorName name) const;

  /// Diagonal operator (n - deg + offset).
  GradedOperator n_minus_deg(const Rational& offset = Rational(0)) const;

  AdjointPairsReport adjoint_pairs_check() const;

 private:
  SasakianStructure(std::shared_ptr<const InvariantComplex> cx, MetricStructure metric);
  void build_operators();

  std::shared_ptr<const InvariantComplex> cx_;
  HodgePackage hodge_;
  ContactData contact_;
  Endomorphism phi_;
  AxiomReport report_;
  bool verified_ = false;
  std::array<GradedOperator, kOperatorCount> ops_;
};

}  // namespace leflab
