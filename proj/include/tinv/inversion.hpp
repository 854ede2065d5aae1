#pragma once

// Generalized T-inversion
//
//   I_T(X) = sum_{S} (-1)^{|S & T|} Tr_{S^c}(X) x 1_{S^c}
//          = prod_j [Tr_j(.) x 1_j + (-1)^{[j in T]} id] X
//          = (2^N / prod d_j) sum_{kl} h_{l^2+2k+t} X^* h_{l^2+2k+t}   (X Hermitian)
//
// The sum form is the reference; the product and Kraus forms exist so the
// three can be checked against each other. T = {} is accepted everywhere.

#include "tinv/tensor_core.hpp"

#include <vector>

namespace tinv {

DenseOperator invert_sum(const DenseOperator& x, PartyMask t);
DenseOperator invert_product(const DenseOperator& x, PartyMask t);
/// Kraus form; `x` must be Hermitian since the map acts on the conjugate.
DenseOperator invert_kraus(const DenseOperator& x, PartyMask t);

/// Ordered partition of the parties into disjoint nonempty blocks.
class Grouping {
 public:
  Grouping(std::vector<PartyMask> blocks, int party_count);
  static Grouping singletons(int party_count);

  const std::vector<PartyMask>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int party_count() const { return n_; }
  /// Fine-grained parties covered by the coarse mask (bit b <=> block b).
  PartyMask expand(PartyMask coarse) const;

 private:
  std::vector<PartyMask> blocks_;
  int n_ = 0;
};

/// Inversion of the coarse-grained operator where block b carries a minus
/// sign iff bit b of `t_coarse` is set, assembled as the average of the
/// fine-grained inversions I_T whose parity |T & block| matches each block's
/// coarse sign (weight 2^{-(n_b - 1)} per block).
DenseOperator coarse_grain_invert(const DenseOperator& x, const Grouping& grouping, PartyMask t_coarse);

/// Parameters of prod_{j in T}[Tr_j 1_j - alpha_j id] prod_{k in act_on \ T}[Tr_k 1_k + beta_k id].
/// alpha and beta are indexed by 0-based party and must have one entry per party;
/// only alpha[j] for j in T and beta[k] for k in act_on \ T are read.
struct DetectionParams {
  PartyMask t;
  PartyMask act_on;
  std::vector<double> alpha;
  std::vector<double> beta;

  /// Reduction-criterion parameters: alpha = 1 on T, beta = 1 elsewhere.
  static DetectionParams reduction(int party_count, PartyMask act_on, PartyMask t);
  void validate(int party_count) const;
};

DenseOperator apply_detection_map(const DenseOperator& x, const DetectionParams& params);

enum class MapKind { t_inversion_after_transpose, t_inversion, detection };

/// Choi matrix sum_{ij} |i><j| x Phi(|i><j|) on dims (dims, dims); Phi acts
/// on the second copy. PSD iff Phi is completely positive. For the two
/// inversion kinds only params.t is read.
DenseOperator choi_matrix(MapKind kind, const SubsystemDims& dims, const DetectionParams& params);

}  // namespace tinv
