#include "leflab/ladder.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

namespace leflab {

std::string to_string(FamilyTag family) {
  return family == FamilyTag::closed_family ? "closed" : "coclosed";
}

long nu_value(int n, int p, int k) { return static_cast<long>(k) * (n - p - k + 1); }

namespace {

/// If image == (4 nu) omega for some rational nu, returns nu; absent otherwise.
std::optional<Rational> eigen_ratio(const Form& omega, const Form& image) {
  if (image.is_zero()) return Rational(0);
  const auto& [lead, a] = *omega.coeff.begin();
  const auto it = image.coeff.find(lead);
  if (it == image.coeff.end()) return std::nullopt;
  const Rational c = it->second / a;
  if (!(image == omega.scaled(c))) return std::nullopt;
  return Rational(c / 4);
}

}  // namespace

std::optional<Rational> membership(const SasakianStructure& s, const Form& omega,
                                   FamilyTag family) {
  if (omega.is_zero()) {
    throw std::invalid_argument("membership of the zero form is ambiguous");
  }
  const auto& d = s.op(OperatorName::d);
  const auto& delta = s.op(OperatorName::delta);
  const auto& eps = s.op(OperatorName::eps_eta);
  const auto& ixi = s.op(OperatorName::i_xi);
  if (family == FamilyTag::closed_family) {
    if (!d.apply(omega).is_zero()) return std::nullopt;
    if (!ixi.apply(omega).is_zero()) return std::nullopt;
    if (!eps.apply(delta.apply(omega)).is_zero()) return std::nullopt;
  } else {
    if (!delta.apply(omega).is_zero()) return std::nullopt;
    if (!eps.apply(omega).is_zero()) return std::nullopt;
    if (!ixi.apply(d.apply(omega)).is_zero()) return std::nullopt;
  }
  return eigen_ratio(omega, s.op(OperatorName::laplacian).apply(omega));
}

Mat family_space(const SasakianStructure& s, int p, const Rational& nu, FamilyTag family) {
  if (p < 0 || p > s.dim()) throw std::invalid_argument("degree out of range");
  const auto& d = s.op(OperatorName::d);
  const auto& delta = s.op(OperatorName::delta);
  const auto& eps = s.op(OperatorName::eps_eta);
  const auto& ixi = s.op(OperatorName::i_xi);

  Mat first(0, 0), second(0, 0), third(0, 0);
  if (family == FamilyTag::closed_family) {
    first = d.matrix(p);
    second = ixi.matrix(p);
    third = (eps * delta).matrix(p);
  } else {
    first = delta.matrix(p);
    second = eps.matrix(p);
    third = (ixi * d).matrix(p);
  }
  const Mat lap = s.op(OperatorName::laplacian).matrix(p);
  const Mat eigen = lap - Mat::identity(lap.cols()).scaled(Rational(nu * 4));
  return first.vstack(second).vstack(third).vstack(eigen).kernel();
}

std::vector<std::pair<int, long>> allowed_nu(int n, int p, FamilyTag family) {
  // closed family: nu = nu_value(n, p - 2k, k) with 0 <= 2k, p - n <= 2k <= p;
  // coclosed family: the same window shifted to p + 1.
  const int q = family == FamilyTag::closed_family ? p : p + 1;
  std::vector<std::pair<int, long>> out;
  for (int k = 0; 2 * k <= q; ++k) {
    if (2 * k < q - n) continue;
    out.emplace_back(k, nu_value(n, q - 2 * k, k));
  }
  return out;
}

LadderTrace ladder_trace(const SasakianStructure& s, const Form& omega) {
  const int n = s.n();
  const int p = omega.degree;
  if (omega.dim != s.dim()) throw std::invalid_argument("form dimension mismatch");
  if (omega.is_zero()) throw std::invalid_argument("ladder trace needs a nonzero seed");
  if (p < 0 || p > n) throw std::invalid_argument("ladder trace needs seed degree <= n");
  if (!s.op(OperatorName::laplacian).apply(omega).is_zero()) {
    throw std::invalid_argument("ladder trace needs a harmonic seed");
  }

  const auto& l = s.op(OperatorName::L);
  const auto& lam = s.op(OperatorName::Lambda);
  const auto& d = s.op(OperatorName::d);
  const auto& delta = s.op(OperatorName::delta);
  const auto& eps = s.op(OperatorName::eps_eta);
  const auto& ixi = s.op(OperatorName::i_xi);

  LadderTrace trace;
  std::vector<Form> chain;
  chain.push_back(omega);
  const auto seed_nu = membership(s, omega, FamilyTag::closed_family);
  if (!seed_nu || *seed_nu != 0) {
    throw InternalInvariantViolation("harmonic seed is not closed-family at nu = 0");
  }
  trace.nodes.push_back({p, Rational(0), FamilyTag::closed_family, omega, "seed"});

  for (int k = 1; k <= n - p; ++k) {
    Form next = l.apply(chain.back());
    if (next.is_zero()) {
      throw InternalInvariantViolation("chain station vanished at k = " + std::to_string(k));
    }
    const Rational expected(nu_value(n, p, k));
    const auto found = membership(s, next, FamilyTag::closed_family);
    if (!found || *found != expected) {
      throw InternalInvariantViolation("eigen equation failed at chain station k = " +
                                       std::to_string(k));
    }
    trace.nodes.push_back({p + 2 * k, expected, FamilyTag::closed_family, next, "L"});
    chain.push_back(std::move(next));
  }

  // one step past the top station: the chain must die there
  const Form tail = l.apply(chain.back());
  trace.chain_terminates = tail.is_zero();
  if (!trace.chain_terminates) {
    throw InternalInvariantViolation("chain fails to terminate past k = n - p");
  }

  Form image = eps.apply(chain.back());
  if (image.is_zero()) {
    throw InternalInvariantViolation("duality image of a nonzero seed vanished");
  }
  const auto image_nu = membership(s, image, FamilyTag::coclosed_family);
  if (!image_nu || *image_nu != 0) {
    throw InternalInvariantViolation("duality image is not coclosed-family at nu = 0");
  }
  trace.nodes.push_back(
      {2 * n + 1 - p, Rational(0), FamilyTag::coclosed_family, std::move(image), "eps_eta"});

  for (int k = 0; k <= n - p; ++k) {
    const Form alpha = eps.apply(chain[k]);
    if (alpha.is_zero()) {
      throw InternalInvariantViolation("zigzag witness vanished at k = " + std::to_string(k));
    }
    FactorizationCheck check;
    check.k = k;
    const auto alpha_nu = membership(s, alpha, FamilyTag::coclosed_family);
    check.membership_ok = alpha_nu && *alpha_nu == Rational(nu_value(n, p, k + 1));
    check.two_l_is_eps_d = l.apply(alpha).scaled(Rational(2)) == eps.apply(d.apply(alpha));
    check.two_lambda_is_delta_ixi =
        lam.apply(alpha).scaled(Rational(2)) == delta.apply(ixi.apply(alpha));
    const Form& next = k + 1 <= n - p ? chain[k + 1] : tail;
    check.d_recovers_next = d.apply(alpha) == next.scaled(Rational(2));
    check.ixi_recovers = ixi.apply(alpha) == chain[k];
    trace.factorizations.push_back(check);
  }
  return trace;
}

Form lefschetz_F(const SasakianStructure& s, int p, const Form& beta) {
  const int n = s.n();
  if (p < 0 || p > n) throw std::invalid_argument("lefschetz map needs degree <= n");
  if (beta.dim != s.dim() || beta.degree != p) {
    throw std::invalid_argument("form degree does not match the requested map");
  }
  if (!s.op(OperatorName::laplacian).apply(beta).is_zero()) {
    throw std::invalid_argument("lefschetz map needs a harmonic argument");
  }
  const auto& l = s.op(OperatorName::L);
  const auto& eps = s.op(OperatorName::eps_eta);
  return eps.apply(l.pow(n - p).apply(beta));
}

Form lefschetz_G(const SasakianStructure& s, int p, const Form& alpha) {
  const int n = s.n();
  if (p < 0 || p > n) throw std::invalid_argument("lefschetz map needs degree <= n");
  if (alpha.dim != s.dim() || alpha.degree != 2 * n + 1 - p) {
    throw std::invalid_argument("form degree does not match the requested map");
  }
  if (!s.op(OperatorName::laplacian).apply(alpha).is_zero()) {
    throw std::invalid_argument("lefschetz map needs a harmonic argument");
  }
  const auto& lam = s.op(OperatorName::Lambda);
  const auto& ixi = s.op(OperatorName::i_xi);
  return lam.pow(n - p).apply(ixi.apply(alpha));
}

FigureData figure_data(const SasakianStructure& s) {
  const int n = s.n();
  FigureData out;
  for (int p = 0; p <= s.dim(); ++p) {
    for (const FamilyTag family : {FamilyTag::closed_family, FamilyTag::coclosed_family}) {
      for (const auto& [k, nu] : allowed_nu(n, p, family)) {
        if (nu < 0) continue;  // the laplacian spectrum is nonnegative
        const int dim = family_space(s, p, Rational(nu), family).cols();
        if (dim > 0) out.nodes.push_back({p, Rational(nu), family, dim});
      }
    }
  }
  std::sort(out.nodes.begin(), out.nodes.end(), [](const FigureNode& a, const FigureNode& b) {
    return std::tie(a.p, a.nu, a.family) < std::tie(b.p, b.nu, b.family);
  });

  const auto has_node = [&out](int p, const Rational& nu, FamilyTag family) {
    return std::any_of(out.nodes.begin(), out.nodes.end(), [&](const FigureNode& node) {
      return node.p == p && node.family == family && node.nu == nu;
    });
  };
  for (const FigureNode& node : out.nodes) {
    if (node.family == FamilyTag::coclosed_family && node.nu != 0 &&
        has_node(node.p + 1, node.nu, FamilyTag::closed_family)) {
      out.edges.push_back({node.p, node.nu, node.p + 1, node.nu, "d/delta"});
    }
    if (node.family == FamilyTag::closed_family) {
      const Rational target(node.nu - node.p + n);
      if (has_node(node.p + 1, target, FamilyTag::coclosed_family)) {
        out.edges.push_back({node.p, node.nu, node.p + 1, target, "eps_eta/i_xi"});
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const FigureEdge& a, const FigureEdge& b) {
    return std::tie(a.p1, a.nu1, a.p2, a.nu2, a.op) < std::tie(b.p1, b.nu1, b.p2, b.nu2, b.op);
  });
  return out;
}

}  // namespace leflab
