#include "tinv/invariants.hpp"

#include "tinv/inversion.hpp"

#include <cmath>

namespace tinv {

double InvariantValue::root() const { return std::sqrt(std::max(squared, 0.0)); }

double c_t_squared(const DenseOperator& rho, PartyMask t) {
  const DenseOperator inv = invert_sum(rho, t);
  const Complex v = rho.matrix().cwiseProduct(inv.matrix().transpose()).sum();
  if (std::abs(v.imag()) > 1e-11)
    throw NumericalError("c_t_squared: imaginary residue " + std::to_string(v.imag()) + " for T=" + t.party_list());
  return v.real();
}

InvariantValue invariant(const DenseOperator& rho, PartyMask t, double clamp_tol) {
  InvariantValue out{t, c_t_squared(rho, t), false};
  if (out.squared < 0.0 && out.squared >= -clamp_tol) {
    out.squared = 0.0;
    out.clamped = true;
  }
  return out;
}

std::vector<InvariantValue> invariant_table(const DenseOperator& rho, double clamp_tol) {
  const std::uint32_t subsets = 1u << rho.dims().party_count();
  std::vector<InvariantValue> out;
  out.reserve(subsets);
  for (std::uint32_t t = 0; t < subsets; ++t) out.push_back(invariant(rho, PartyMask(t), clamp_tol));
  return out;
}

double bipartite_concurrence_squared(const PureState& psi, PartyMask s) {
  const SubsystemDims& dims = psi.dims();
  dims.check_mask(s);
  if (s.empty() || s == dims.full_mask())
    throw InvalidInput("bipartite_concurrence_squared: S must be a nonempty proper subset");
  const Matrix r = partial_trace_matrix(psi.projector(), s);
  return 2.0 * (1.0 - r.cwiseProduct(r.transpose()).sum().real());
}

double distributed_concurrence(const DenseOperator& rho) {
  return std::sqrt(std::max(c_t_squared(rho, rho.dims().full_mask()), 0.0));
}

}  // namespace tinv
