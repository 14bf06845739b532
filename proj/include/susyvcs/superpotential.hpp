#pragma once

#include <string>
#include <vector>

#include "susyvcs/weyl_element.hpp"

namespace susyvcs::weyl {

/// Planar superpotential W = (w1, w2, 0) with Laurent-polynomial components.
struct SuperpotentialSpec {
  LaurentPoly w1;
  LaurentPoly w2;
  std::string label;

  LaurentPoly divergence() const { return w1.partial_x() + w2.partial_y(); }
  // W1 depends on x only and W2 on y only.
  bool is_separable() const;
};

namespace builtin {
SuperpotentialSpec standard();           // -(x, y)/2, uniform unit field
SuperpotentialSpec divergence_free();    // (-y, x)/2
SuperpotentialSpec coupled();            // -((x+y)/2, (x+y)/2)
SuperpotentialSpec inverse_x(long kappa = -1);  // (kappa/x, 0)
SuperpotentialSpec quartic();            // (-x^2/2, 0)
std::vector<SuperpotentialSpec> all();
}  // namespace builtin

/// Shifted momenta and the ladder operators they induce.
struct OperatorBundle {
  WeylElement q, p, q_prime, p_prime;
  WeylElement e, e_dag, k, k_dag;
};

OperatorBundle build_operators(const SuperpotentialSpec& spec);

/// One exact identity lhs == rhs, stored through its residual lhs - rhs.
struct RelationEntry {
  std::string name;
  WeylElement residual;
  // Claims taken verbatim from the source text; a nonzero residual is a
  // documented discrepancy rather than a failure of the algebra.
  bool literal_claim = false;
  std::string note;

  bool holds() const { return residual.is_zero(); }
};

struct RelationReport {
  std::string label;
  std::vector<RelationEntry> entries;

  // True when every non-literal identity holds.
  bool all_hold() const;
  const RelationEntry* find(const std::string& name) const;
};

RelationReport verify_relations(const SuperpotentialSpec& spec);

struct HamiltonianSet {
  WeylElement h_b, h_f;            // e^dag e, e e^dag
  WeylElement frak_h_b, frak_h_f;  // k^dag k, k k^dag
};

HamiltonianSet hamiltonians(const SuperpotentialSpec& spec);

/// z-component of the induced magnetic field, -div W.
LaurentPoly magnetic_field(const SuperpotentialSpec& spec);

/// Canonical relations of the standard-field operators Q, P, Q', P'.
RelationReport canonical_relations();

/// Operator identities of the divergence-free superpotential (-y, x)/2.
RelationReport case1_identities(int n_max);

/// [k, e] and [k, e^dag] for superpotentials of the form (W1(x), W2(y)).
RelationReport separable_commutation(const SuperpotentialSpec& spec);

}  // namespace susyvcs::weyl
