#pragma once

#include "tinv/tensor_core.hpp"

#include <map>
#include <string>
#include <vector>

namespace tinv {

enum class Family { correlation, monogamy, shadow, entropy, marginal };

std::string to_string(Family f);
Family parse_family(const std::string& name);

inline constexpr double kPassTolerance = 1e-9;

/// margin = value - threshold; pass <=> margin >= -tolerance. Entries with
/// theorem == false reproduce inequalities that are known to fail and never
/// count towards a verdict.
struct ConstraintEntry {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  double margin = 0.0;
  bool pass = true;
  bool theorem = true;
};

struct ConstraintReport {
  Family family = Family::correlation;
  std::vector<ConstraintEntry> entries;
  double tolerance = kPassTolerance;
  std::vector<std::string> notes;

  void add(std::string label, double value, double threshold, bool theorem = true);
  bool theorems_pass() const;
  /// Smallest margin over theorem-backed entries (+inf if none).
  double worst_margin() const;
};

/// (1/2) sum_{S != {}} (-1)^{|S & T| + 1} tau_S. Rejects T = {}.
double correlation_constraint(const DenseOperator& rho, PartyMask t);
double correlation_constraint(const LinearEntropyVector& tau, PartyMask t);
/// sum_S (-1)^{|S & T|} Tr(rho_S^2): the same quantity expanded over purities.
double signed_purity_sum(const std::vector<double>& purities, PartyMask t);
ConstraintReport correlation_report(const DenseOperator& rho, double tol = kPassTolerance);

/// sum_{{} != S proper} (-1)^{|S & T| + 1} C^2_{S|S^c}(psi). Rejects T = {}.
double monogamy_check(const PureState& psi, PartyMask t);
/// As above for a density matrix, which must be pure (purity within 1e-10 of 1).
double monogamy_check(const DenseOperator& rho, PartyMask t);
ConstraintReport monogamy_report(const PureState& psi, double tol = kPassTolerance);

struct ShadowEvaluation {
  double value = 0.0;
  /// False if either input has an eigenvalue below -tol_psd; the value is
  /// still reported but carries no pass/fail judgement.
  bool inputs_psd = true;
};

/// sum_S (-1)^{|S & T|} Tr[Tr_{S^c}(M1) Tr_{S^c}(M2)]; no normalization required.
ShadowEvaluation shadow_value(const DenseOperator& m1, const DenseOperator& m2, PartyMask t, double tol_psd = 1e-9);
ConstraintReport shadow_report(const DenseOperator& m1, const DenseOperator& m2, double tol = kPassTolerance);

/// Linear-entropy inequalities: subadditivity and the triangle inequality
/// for every pair of disjoint nonempty subsets (N >= 2); for N = 3 also the
/// symmetrized three-party inequality, the weak-monotonicity analogue, its
/// purified relabeling, and (as non-theorem entries) the strong
/// subadditivity analogue and its reverse, each under all party relabelings.
ConstraintReport entropy_inequalities(const DenseOperator& rho, double tol = kPassTolerance);

struct MarginalWitness {
  PartyMask t;
  DenseOperator op;
  double min_eig = 0.0;
};

/// Witness sum_{S proper} (-1)^{|S & T|} rho_S x 1_{S^c} for every odd |T|,
/// i.e. I_T(rho) + rho with the global term cancelled. A negative minimum
/// eigenvalue certifies that the marginals admit no joint state.
std::vector<MarginalWitness> marginal_witnesses(const DenseOperator& rho);
/// Same, from supplied marginals keyed by party mask. Every nonempty S with
/// |S| <= N-1 must be present, each of unit trace, and nested marginals
/// must agree under partial trace within `consistency_tol`.
std::vector<MarginalWitness> marginal_witnesses_from_marginals(const std::map<PartyMask, DenseOperator>& marginals,
                                                               const SubsystemDims& dims,
                                                               double consistency_tol = 1e-8);
ConstraintReport marginal_report(const std::vector<MarginalWitness>& witnesses, int party_count,
                                 double tol = kPassTolerance);

/// Numerical rank: singular values above 1e-8 * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m);

/// M[S,T] = C_T^2(rho(S)) with rho(S) = tensor_k (|0><0| if k in S else 1/d).
Eigen::MatrixXd rho_family_invariant_matrix(int n, int d = 2);
/// Rank of rho_family_invariant_matrix; 1 <= n <= 5.
int independence_rank(int n, int d = 2);
/// M[S,T] = C_T^2(psi(S)) + C_{T+{1}}^2(psi(S)) over S, T within parties 2..n.
Eigen::MatrixXd psi_family_invariant_matrix(int n);
/// Rank of psi_family_invariant_matrix (expected 2^(n-1)); 2 <= n <= 5.
int independence_rank_pure(int n);
/// Rank of the +-1 sign patterns (-1)^{|S & T|}, odd |T| rows, proper S columns,
/// of the operator witnesses.
int witness_sign_rank(int n);

}  // namespace tinv
