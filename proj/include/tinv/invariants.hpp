#pragma once

#include "tinv/tensor_core.hpp"

#include <vector>

namespace tinv {

/// C_T^2 as stored in reports. Values in [-clamp_tol, 0) are reported as 0
/// with `clamped` set; the square root is only taken on presentation.
struct InvariantValue {
  PartyMask t;
  double squared = 0.0;
  bool clamped = false;

  double root() const;
};

/// Tr[rho I_T(rho)]; throws NumericalError if the imaginary residue exceeds 1e-11.
double c_t_squared(const DenseOperator& rho, PartyMask t);
InvariantValue invariant(const DenseOperator& rho, PartyMask t, double clamp_tol = 1e-9);
/// One entry per T in ascending mask order, T = {} included.
std::vector<InvariantValue> invariant_table(const DenseOperator& rho, double clamp_tol = 1e-9);

/// tau_S of a pure state, equal to the squared concurrence across S|S^c.
double bipartite_concurrence_squared(const PureState& psi, PartyMask s);
/// C_T with T = all parties.
double distributed_concurrence(const DenseOperator& rho);

}  // namespace tinv
