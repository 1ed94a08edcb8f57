#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leflab/complex.hpp"
#include "leflab/ladder.hpp"
#include "leflab/sasakian.hpp"

namespace leflab {

/// Decision data for the duality relation between H^p and H^{2n+1-p} induced
/// by the constrained representatives (closed, i_xi-flat, killed by
/// L^{n-p+1}).  The relation is the graph of a map iff well_defined and
/// domain_full; the map is encoded by `induced` on the cohomology
/// representative bases.  Metric-free throughout.
struct RelationReport {
  int degree = 0;
  Mat constraint_space;         // columns: constrained p-forms in coordinates
  Mat class_matrix;             // column j: class of constraint j in H^p
  Mat image_class_matrix;       // column j: class of its duality image
  bool well_defined = false;    // classes equal => image classes equal
  bool domain_full = false;     // every class in H^p has a constrained form
  std::optional<Mat> induced;   // present iff well_defined && domain_full
  bool bijective = false;       // induced is square and invertible
  bool graph_of_isomorphism() const { return well_defined && domain_full && bijective; }
};

/// Computes the relation at degree p <= n from the complex and the contact
/// data alone.  Throws std::invalid_argument for p outside 0..n.
RelationReport relation(const InvariantComplex& cx, const ContactData& contact, int p);

/// Constrained representatives whose classes are linearly independent in
/// H^p, greedily selected from the constraint space; spans H^p exactly when
/// the relation is domain-full.
std::vector<Form> constrained_representatives(const InvariantComplex& cx,
                                              const ContactData& contact, int p);

/// Cohomology-level duality map through harmonic projection: the matrix of
/// class -> class of eps_eta L^{n-p} (harmonic projection), in the
/// representative bases of H^p and H^{2n+1-p}.  Requires a verified
/// structure and p <= n.
Mat lef_matrix_harmonic(const SasakianStructure& s, int p);

/// Agreement of the cohomology duality map across two verified structures
/// sharing the same complex and contact form, and with the metric-free
/// relation route.
struct MetricIndependenceReport {
  int degree = 0;
  Mat first;
  Mat second;
  Mat relation_matrix;
  bool all_equal = false;
};
MetricIndependenceReport metric_independence_check(const SasakianStructure& s1,
                                                   const SasakianStructure& s2, int p);

/// Coefficient of the top-degree coordinate monomial e^{1..dim}.  Throws
/// std::invalid_argument unless omega has top degree.
Rational integrate_top(int dim, const Form& omega);
/// Same evaluation normalized by the oriented metric volume form.
Rational integrate_top(const HodgePackage& hodge, const Form& omega);

/// Gram matrix of the pairing B(w, w') = integrate_top(eta ^ Phi^{n-p} ^ w ^
/// w') over the given constrained representatives.  Satisfies
/// B = (-1)^p B^T exactly.  Throws std::invalid_argument when a
/// representative violates the constraints or degrees are mixed.
Mat bilinear_form(const InvariantComplex& cx, const ContactData& contact,
                  const std::vector<Form>& reps);

/// Betti parity certificates for odd degrees p <= n.
struct ParityReport {
  struct Entry {
    int p = 0;
    int betti = 0;
    bool even = false;
  };
  std::vector<Entry> odd_checks;
  bool all_even = true;
};
ParityReport betti_parity(const InvariantComplex& cx, const ContactData& contact);

/// Aggregate obstruction decision over all p <= n: the contact structure has
/// the duality property iff every relation is the graph of an isomorphism.
/// Parity failures are reported as independent (cheaper) certificates.
struct ObstructionVerdict {
  std::vector<RelationReport> relations;  // degrees 0..n
  ParityReport parity;
  bool lefschetz_contact = false;
  std::vector<std::string> reasons;  // empty iff lefschetz_contact
};

/// When a verified structure is supplied it must live on the same complex
/// and contact form; the harmonic route is then cross-validated against the
/// relation route, and disagreement raises InternalInvariantViolation.
ObstructionVerdict verdict(const InvariantComplex& cx, const ContactData& contact,
                           const SasakianStructure* s = nullptr);

}  // namespace leflab
