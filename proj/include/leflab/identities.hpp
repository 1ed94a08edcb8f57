#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leflab/sasakian.hpp"

namespace leflab {

/// Formal word in the operator algebra of a Sasakian structure.  Immutable;
/// evaluates to a GradedOperator and renders to a stable display string.
/// Composition is right to left: in compose(a, b), b applies first, and a
/// diagonal weight factor reads the degree of its own input.
class OpExpr {
 public:
  static OpExpr prim(OperatorName name);
  /// Diagonal weight p -> (n - p + offset) on degree p.
  static OpExpr n_minus_deg(Rational offset = Rational(0));
  static OpExpr scaled(Rational c, OpExpr e);
  static OpExpr sum(OpExpr a, OpExpr b);
  static OpExpr diff(OpExpr a, OpExpr b);
  static OpExpr compose(OpExpr a, OpExpr b);
  static OpExpr comm(OpExpr a, OpExpr b);
  static OpExpr acomm(OpExpr a, OpExpr b);
  /// k >= 1; pow(e, 1) is e itself.
  static OpExpr pow(OpExpr e, int k);

  /// Diagnostic evaluation uses the ungated operators of an unverified
  /// structure; the default route refuses on unverified input.
  GradedOperator eval(const SasakianStructure& s, bool diagnostic = false) const;
  std::string display() const;

  struct Node;

 private:
  explicit OpExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// One catalog identity: two formal words that must evaluate to the same
/// GradedOperator on every verified structure.
struct IdentityEntry {
  std::string id;
  OpExpr lhs;
  OpExpr rhs;
  std::string display() const { return lhs.display() + " = " + rhs.display(); }
};

/// The commutator/anticommutator catalog for a structure with dim = 2n + 1:
/// ids "a".."d" (Laplacian-level commutators), "e.1".."e.11" (commuting
/// pairs), "f.1"/"f.2" (insertion-operator brackets), "g", "h", and the
/// codifferential/L-power ladder "i.k=1".."i.k=<n>".
std::vector<IdentityEntry> identity_catalog(int n);

/// Exact per-degree verification outcome for one identity.
struct ResidualReport {
  std::string id;
  std::string display;
  /// (source degree, residual block is exactly zero) for every degree.
  std::vector<std::pair<int, bool>> degree_ok;
  bool passed = true;
  int counterexample_degree = -1;
  /// First basis monomial whose two images differ, with both images; empty
  /// when the identity holds.
  std::string counterexample;
};

ResidualReport verify_identity(const SasakianStructure& s, const IdentityEntry& entry,
                               bool diagnostic = false);
/// Catalog lookup by id; throws std::invalid_argument on an unknown id.
ResidualReport verify_identity(const SasakianStructure& s, const std::string& id,
                               bool diagnostic = false);

struct CatalogReport {
  std::vector<ResidualReport> entries;
  bool all_passed = true;
  std::vector<std::string> failed_ids() const;
};

CatalogReport verify_catalog(const SasakianStructure& s, bool diagnostic = false);

/// The k=1 rung of the codifferential/L-power ladder is the metric adjoint of
/// the d/Lambda commutator identity; the two sides are evaluated through both
/// routes independently and compared.
struct DualCrosscheckReport {
  bool lhs_matches = false;
  bool rhs_matches = false;
  bool passed() const { return lhs_matches && rhs_matches; }
};

DualCrosscheckReport identity_i_dual_crosscheck(const SasakianStructure& s);

/// Vanishing properties of harmonic p-forms: insertion of phi preserves
/// harmonicity, and i_xi, eps_eta, Lambda, L kill the harmonic space in the
/// degree ranges where the classical statement applies.
struct HarmonicPropertyReport {
  int degree = 0;
  int harmonic_dim = 0;
  bool iphi_harmonic = true;
  std::optional<bool> ixi_vanishes;      // checked when p <= n
  std::optional<bool> eps_eta_vanishes;  // checked when p >= n + 1
  std::optional<bool> lambda_vanishes;   // checked when p <= n + 1
  std::optional<bool> l_vanishes;        // checked when p >= n
  bool all_passed() const;
};

HarmonicPropertyReport verify_tachibana(const SasakianStructure& s, int p);

/// Auxiliary map on degree p-1 forms, 1 <= p <= n:
///   alpha -> (n-p+1) L^{n-p} d i_phi d alpha + L^{n-p+1} laplacian alpha.
/// Throws std::invalid_argument on a degree mismatch.
Form aux_map(const SasakianStructure& s, int p, const Form& alpha);

/// Companion properties of the auxiliary map on alpha killed by lie_xi and
/// delta: the image is coclosed and the map commutes with the Laplacian; when
/// additionally L^{n-p+1} d laplacian alpha = 0 the image vanishes.
struct AuxMapReport {
  bool precondition = false;  // lie_xi alpha = 0 and delta alpha = 0
  bool coclosed = false;
  bool commutes = false;
  std::optional<bool> vanishes;
  bool all_passed() const {
    return precondition && coclosed && commutes && vanishes.value_or(true);
  }
};

AuxMapReport aux_companion_check(const SasakianStructure& s, int p, const Form& alpha);

}  // namespace leflab
