#pragma once

#include "tinv/tensor_core.hpp"

#include <vector>

namespace tinv {

enum class GeneratorKind { identity, x, y, z };

/// Generalized Gell-Mann generators with the relabeling
/// h_0 = 1, h_{l^2+2k} = x_kl, h_{l^2+2k+1} = y_kl, h_{l^2+2l} = z_l (0 <= k < l < d),
/// normalized so that Tr(h_m h_n) = d delta_mn.
struct GellMannBasis {
  int d = 0;
  std::vector<Matrix> h;
  std::vector<GeneratorKind> kind;

  std::size_t size() const { return h.size(); }
  /// Indices of the y-type generators (the minus-sign Kraus set).
  std::vector<int> antisymmetric_indices() const;
  /// Indices of identity, x- and z-type generators (the plus-sign Kraus set).
  std::vector<int> symmetric_indices() const;
};

GellMannBasis build_basis(int d);

/// Cached basis for dimension d; safe for concurrent lookup.
const GellMannBasis& gellmann_basis(int d);

/// (1/d) sum_m h_m A h_m, which equals Tr(A) 1.
Matrix trace_resolution(const Matrix& a, const GellMannBasis& basis);
/// (1/d) sum_m h_m^T A h_m, which equals A^T.
Matrix transpose_resolution(const Matrix& a, const GellMannBasis& basis);

/// Single-party Kraus form of Tr(A) 1 -/+ A, applied to A:
/// (2/d) sum over the y-set (minus) or the identity/x/z-set (plus) of h A^* h.
Matrix local_inversion_kraus(const Matrix& a, const GellMannBasis& basis, bool minus);

}  // namespace tinv
