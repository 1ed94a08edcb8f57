#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leflab/sasakian.hpp"

namespace leflab {

/// A structural guarantee of the verified theory failed on concrete data.
/// Kept distinct from input validation errors so callers can map it to a
/// dedicated failure channel.
class InternalInvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The two spectral families, each refined by the Laplacian eigenvalue 4 nu:
/// closed forms are annihilated by d, i_xi, and eps_eta delta; coclosed forms
/// by delta, eps_eta, and i_xi d.
enum class FamilyTag { closed_family, coclosed_family };

std::string to_string(FamilyTag family);

/// nu_{p,k} = k(n - p - k + 1).
long nu_value(int n, int p, int k);

/// Exact eigenvalue-over-4 of omega within the family: returns nu when the
/// three annihilator conditions hold and laplacian(omega) = 4 nu omega
/// exactly; nullopt otherwise.  Throws std::invalid_argument on the zero
/// form, which would fit every nu.
std::optional<Rational> membership(const SasakianStructure& s, const Form& omega,
                                   FamilyTag family);

/// Basis (as matrix columns) of the family subspace at (p, nu): the exact
/// kernel of the three annihilators stacked with laplacian - 4 nu.
Mat family_space(const SasakianStructure& s, int p, const Rational& nu, FamilyTag family);

/// Admissible (k, nu) pairs at degree p: every nonzero family subspace on any
/// structure with this n sits at one of these nu values.
std::vector<std::pair<int, long>> allowed_nu(int n, int p, FamilyTag family);

/// One station of a ladder trace; op records how the node was reached
/// ("seed", "L", or "eps_eta").
struct LadderNode {
  int degree = 0;
  Rational nu;
  FamilyTag family = FamilyTag::closed_family;
  Form form;
  std::string op;
};

/// Zigzag factorization witnesses on the interleaved coclosed form
/// alpha_k = eps_eta(omega_k) between the L-chain stations omega_k.
struct FactorizationCheck {
  int k = 0;
  bool membership_ok = false;          // coclosed at (p + 2k + 1, nu_{p,k+1})
  bool two_l_is_eps_d = false;         // 2 L alpha_k = eps_eta d alpha_k
  bool two_lambda_is_delta_ixi = false;  // 2 Lambda alpha_k = delta i_xi alpha_k
  bool d_recovers_next = false;        // d alpha_k = 2 omega_{k+1}
  bool ixi_recovers = false;           // i_xi alpha_k = omega_k
  bool all_passed() const {
    return membership_ok && two_l_is_eps_d && two_lambda_is_delta_ixi && d_recovers_next &&
           ixi_recovers;
  }
};

/// The verified chain from a harmonic seed of degree p <= n through the
/// L-powers to its image under eps_eta L^{n-p}: first and last stations have
/// nu = 0, and every station passed exact membership checks.
struct LadderTrace {
  std::vector<LadderNode> nodes;
  std::vector<FactorizationCheck> factorizations;
  bool chain_terminates = false;  // L^{n-p+1} kills the seed
  const Form& lefschetz_image() const { return nodes.back().form; }
};

/// Walks the chain for a nonzero harmonic form of degree p <= n, verifying
/// each eigen-equation and annihilator exactly.  Throws
/// std::invalid_argument on bad input and InternalInvariantViolation when a
/// chain guarantee fails on a verified structure.
LadderTrace ladder_trace(const SasakianStructure& s, const Form& omega);

/// eps_eta L^{n-p} on a harmonic form of degree p <= n.
Form lefschetz_F(const SasakianStructure& s, int p, const Form& omega);
/// Lambda^{n-p} i_xi on a harmonic form of degree 2n + 1 - p.
Form lefschetz_G(const SasakianStructure& s, int p, const Form& omega);

struct FigureNode {
  int p = 0;
  Rational nu;
  FamilyTag family = FamilyTag::closed_family;
  int dim = 0;
};

/// Directed spectral transition: "d/delta" edges run coclosed(p, nu) to
/// closed(p+1, nu) for nu != 0; "eps_eta/i_xi" edges run closed(p, nu) to
/// coclosed(p+1, nu - p + n).
struct FigureEdge {
  int p1 = 0;
  Rational nu1;
  int p2 = 0;
  Rational nu2;
  std::string op;
};

struct FigureData {
  std::vector<FigureNode> nodes;  // nonzero subspaces only, sorted by (p, nu, family)
  std::vector<FigureEdge> edges;  // both endpoints present, sorted by field tuple
};

/// Enumerates every nonzero family subspace over the admissible nu values,
/// plus the transition edges between the found nodes.
FigureData figure_data(const SasakianStructure& s);

}  // namespace leflab
