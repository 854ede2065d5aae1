#pragma once

#include "tinv/rng.hpp"
#include "tinv/tensor_core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace tinv {

enum class StateKind {
  ghz,
  bell_phi_plus,
  w,
  product_basis,
  rho_family_S,
  psi_family_S,
  rho_II,
  rho_III,
  haar_pure,
  ginibre_mixed,
};

std::string to_string(StateKind kind);
StateKind parse_state_kind(const std::string& name);

struct StateRecipe {
  StateKind kind = StateKind::ghz;
  SubsystemDims dims;
  std::optional<PartyMask> s;
  std::optional<std::uint64_t> seed;
  std::optional<int> rank;
  /// Ensemble member; selects the RNG stream.
  std::uint64_t stream = 0;
};

using State = std::variant<PureState, DensityMatrix>;

State build(const StateRecipe& recipe);
DensityMatrix as_density(const State& state);

/// (1/sqrt d) sum_k |k...k> on dims [d,...,d].
PureState ghz_state(const SubsystemDims& dims);
PureState bell_phi_plus();
/// (|10..0> + |01..0> + ... + |0..01>)/sqrt n on qubits.
PureState w_state(int n);
/// |b_1 ... b_N> with b_j = 1 iff party j is in `ones`.
PureState product_basis_state(const SubsystemDims& dims, PartyMask ones);
/// tensor_k (|0><0| if k in S else 1/2) on n qubits.
DensityMatrix rho_family(int n, PartyMask s);
/// (1/sqrt 2)[|0>_1 |0..0>_{S^c} + |1>_1 |1..1>_{S^c}] x |0..0>_S on n qubits, S within parties 2..n.
PureState psi_family(int n, PartyMask s);
/// |Phi+>_{12}<Phi+| x 1/2 on three qubits.
DensityMatrix rho_ii();
/// |Phi+>_{13}<Phi+| x 1/2 on party 2.
DensityMatrix rho_iii();

PureState haar_pure(const SubsystemDims& dims, CounterRng& rng);
/// G G^dagger / Tr(G G^dagger) with G a D x rank complex Gaussian matrix.
DensityMatrix ginibre_mixed(const SubsystemDims& dims, CounterRng& rng, int rank = 0);
/// Haar unitary from the QR decomposition of a Ginibre matrix with phase fix.
Matrix haar_unitary(int d, CounterRng& rng);

/// Closed-form C_T^2(rho(S)): 0 if S & T nonempty, else 4^|S| 3^(n-|S|-|T|) / 2^n.
double closed_form_ct_rho_family(int n, PartyMask s, PartyMask t);
/// Closed form delta_{0,|T|} 2^(n-1) + 2^|S| (0 if S & T nonempty) for S, T within
/// parties 2..n. It equals C_T^2(psi(S)) + C_{T+{1}}^2(psi(S)), i.e. the
/// value of whichever of the two has even |T| (the odd one vanishes).
double closed_form_ct_psi_family(int n, PartyMask s, PartyMask t);

struct MonotoneScenario {
  double before = 0.0;
  double after_average = 0.0;
  double povm_completeness_defect = 0.0;
};

/// GHZ on three parties of local dimension d, T = {2,3}, two-outcome POVM
/// A_{1,2} = |+-><+-| + (1/sqrt 2) sum_{j>=2} |j><j| on party 1. Returns
/// C_T before and the probability-weighted average of C_T afterwards.
MonotoneScenario monotone_scenario(int d);
/// Qubit instance of monotone_scenario.
MonotoneScenario monotone_counterexample();

}  // namespace tinv
