#include "tinv/constraints.hpp"

#include "tinv/invariants.hpp"
#include "tinv/state_zoo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace tinv {

std::string to_string(Family f) {
  switch (f) {
    case Family::correlation: return "correlation";
    case Family::monogamy: return "monogamy";
    case Family::shadow: return "shadow";
    case Family::entropy: return "entropy";
    case Family::marginal: return "marginal";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::correlation, Family::monogamy, Family::shadow, Family::entropy, Family::marginal})
    if (to_string(f) == name) return f;
  throw InvalidInput("unknown constraint family '" + name + "'");
}

void ConstraintReport::add(std::string label, double value, double threshold, bool theorem) {
  ConstraintEntry e{std::move(label), value, threshold, value - threshold, true, theorem};
  e.pass = e.margin >= -tolerance;
  entries.push_back(std::move(e));
}

bool ConstraintReport::theorems_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ConstraintEntry& e) { return !e.theorem || e.pass; });
}

double ConstraintReport::worst_margin() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& e : entries)
    if (e.theorem) worst = std::min(worst, e.margin);
  return worst;
}

// ---------------------------------------------------------------- correlation

double correlation_constraint(const LinearEntropyVector& tau, PartyMask t) {
  if (t.empty()) throw InvalidInput("correlation_constraint: T = {} gives only a trivial constraint");
  const int n = tau.party_count();
  if (!t.fits(n)) throw InvalidInput("correlation_constraint: T references missing parties");
  double sum = 0.0;
  for (std::uint32_t s = 1; s < (1u << n); ++s) sum += -parity_sign(PartyMask(s), t) * tau[PartyMask(s)];
  return 0.5 * sum;
}

double correlation_constraint(const DenseOperator& rho, PartyMask t) {
  rho.dims().check_mask(t);
  return correlation_constraint(linear_entropies(rho), t);
}

double signed_purity_sum(const std::vector<double>& purities, PartyMask t) {
  double sum = 0.0;
  for (std::uint32_t s = 0; s < purities.size(); ++s) sum += parity_sign(PartyMask(s), t) * purities[s];
  return sum;
}

ConstraintReport correlation_report(const DenseOperator& rho, double tol) {
  ConstraintReport r;
  r.family = Family::correlation;
  r.tolerance = tol;
  const int n = rho.dims().party_count();
  const LinearEntropyVector tau = linear_entropies(rho);
  for (std::uint32_t t = 1; t < (1u << n); ++t)
    r.add(PartyMask(t).bitstring(n), correlation_constraint(tau, PartyMask(t)), 0.0);
  return r;
}

// ------------------------------------------------------------------- monogamy

namespace {

double monogamy_from_tau(const std::vector<double>& tau, int n, PartyMask t) {
  if (t.empty()) throw InvalidInput("monogamy_check: T = {} gives only a trivial constraint");
  if (!t.fits(n)) throw InvalidInput("monogamy_check: T references missing parties");
  double sum = 0.0;
  for (std::uint32_t s = 1; s + 1 < (1u << n); ++s) sum += -parity_sign(PartyMask(s), t) * tau[s];
  return sum;
}

std::vector<double> concurrences(const PureState& psi) {
  const int n = psi.dims().party_count();
  std::vector<double> tau(std::size_t{1} << n, 0.0);
  for (std::uint32_t s = 1; s + 1 < (1u << n); ++s) tau[s] = bipartite_concurrence_squared(psi, PartyMask(s));
  return tau;
}

}  // namespace

double monogamy_check(const PureState& psi, PartyMask t) {
  return monogamy_from_tau(concurrences(psi), psi.dims().party_count(), t);
}

double monogamy_check(const DenseOperator& rho, PartyMask t) {
  const double p = purity(rho);
  if (std::abs(p - 1.0) > 1e-10)
    throw InvalidInput("monogamy_check: input is mixed (purity " + std::to_string(p) +
                       "); the relation is a monogamy statement only for pure states");
  const LinearEntropyVector tau = linear_entropies(rho);
  return monogamy_from_tau(tau.values(), rho.dims().party_count(), t);
}

ConstraintReport monogamy_report(const PureState& psi, double tol) {
  ConstraintReport r;
  r.family = Family::monogamy;
  r.tolerance = tol;
  const int n = psi.dims().party_count();
  const std::vector<double> tau = concurrences(psi);
  for (std::uint32_t t = 1; t < (1u << n); ++t)
    r.add(PartyMask(t).bitstring(n), monogamy_from_tau(tau, n, PartyMask(t)), 0.0);
  return r;
}

// --------------------------------------------------------------------- shadow

ShadowEvaluation shadow_value(const DenseOperator& m1, const DenseOperator& m2, PartyMask t, double tol_psd) {
  if (!(m1.dims() == m2.dims())) throw InvalidInput("shadow_value: operands have different dims");
  const SubsystemDims& dims = m1.dims();
  dims.check_mask(t);
  ShadowEvaluation out;
  out.inputs_psd = min_eigenvalue(m1) >= -tol_psd && min_eigenvalue(m2) >= -tol_psd;
  double sum = 0.0;
  for (std::uint32_t s = 0; s < (1u << dims.party_count()); ++s) {
    const Matrix a = partial_trace_matrix(m1, PartyMask(s));
    const Matrix b = partial_trace_matrix(m2, PartyMask(s));
    sum += parity_sign(PartyMask(s), t) * a.cwiseProduct(b.transpose()).sum().real();
  }
  out.value = sum;
  return out;
}

ConstraintReport shadow_report(const DenseOperator& m1, const DenseOperator& m2, double tol) {
  ConstraintReport r;
  r.family = Family::shadow;
  r.tolerance = tol;
  const int n = m1.dims().party_count();
  for (std::uint32_t t = 0; t < (1u << n); ++t) {
    const ShadowEvaluation e = shadow_value(m1, m2, PartyMask(t));
    r.add(PartyMask(t).bitstring(n), e.value, 0.0, e.inputs_psd);
  }
  if (!r.entries.empty() && !r.entries.front().theorem)
    r.notes.push_back("input is not positive semidefinite; shadow values carry no verdict");
  return r;
}

// -------------------------------------------------------------------- entropy

namespace {

std::string tau_name(PartyMask s) {
  std::string out = "t";
  for (int p = 0; p < 32; ++p)
    if (s.has(p)) out += std::to_string(p + 1);
  return out;
}

}  // namespace

ConstraintReport entropy_inequalities(const DenseOperator& rho, double tol) {
  ConstraintReport r;
  r.family = Family::entropy;
  r.tolerance = tol;
  const int n = rho.dims().party_count();
  if (n < 2) {
    r.notes.push_back("no linear-entropy inequalities are defined for a single party");
    return r;
  }
  const LinearEntropyVector tau = linear_entropies(rho);
  const std::uint32_t subsets = 1u << n;

  // Disjoint pairs A < B (by mask value): tau_AB <= tau_A + tau_B and |tau_A - tau_B| <= tau_AB.
  for (std::uint32_t a = 1; a < subsets; ++a)
    for (std::uint32_t b = a + 1; b < subsets; ++b) {
      if (a & b) continue;
      const PartyMask A(a), B(b), AB(a | b);
      r.add("subadditivity " + tau_name(AB) + "<=" + tau_name(A) + "+" + tau_name(B), tau[A] + tau[B], tau[AB]);
      r.add("triangle |" + tau_name(A) + "-" + tau_name(B) + "|<=" + tau_name(AB), tau[AB],
            std::abs(tau[A] - tau[B]));
    }

  if (n != 3) {
    r.notes.push_back("three-party inequalities skipped for N=" + std::to_string(n) +
                      "; the correlation family covers general N");
    return r;
  }

  auto m = [](std::initializer_list<int> parties) { return PartyMask::of(parties); };
  const PartyMask all = m({0, 1, 2});
  r.add("symmetrized t12+t13+t23<=t1+t2+t3+t123", tau[m({0})] + tau[m({1})] + tau[m({2})] + tau[all],
        tau[m({0, 1})] + tau[m({0, 2})] + tau[m({1, 2})]);

  // Roles (a, b, c) run over all permutations of the parties.
  const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& p : perms) {
    const PartyMask A = PartyMask::single(p[0]), B = PartyMask::single(p[1]), C = PartyMask::single(p[2]);
    const std::string a = tau_name(A), b = tau_name(B), c = tau_name(C);
    const std::string ab = tau_name(A | B), bc = tau_name(B | C);
    // tau_a + tau_c <= tau_ab + tau_bc + 2 tau_abc; symmetric in a <-> c.
    if (p[0] < p[2])
      r.add("weak-monotonicity " + a + "+" + c + "<=" + ab + "+" + bc + "+2t123", tau[A | B] + tau[B | C] + 2 * tau[all],
            tau[A] + tau[C]);
    // tau_b + tau_abc <= tau_ab + tau_bc + 2 tau_c
    r.add("purified-relabeling " + b + "+t123<=" + ab + "+" + bc + "+2" + c, tau[A | B] + tau[B | C] + 2 * tau[C],
          tau[B] + tau[all]);
    if (p[0] < p[2]) {
      r.add("ssa-analogue " + b + "+t123<=" + ab + "+" + bc, tau[A | B] + tau[B | C], tau[B] + tau[all], false);
      r.add("ssa-reverse " + ab + "+" + bc + "<=" + b + "+t123", tau[B] + tau[all], tau[A | B] + tau[B | C], false);
    }
  }
  return r;
}

// ------------------------------------------------------------------ marginals

namespace {

std::vector<MarginalWitness> build_witnesses(const std::map<PartyMask, Matrix>& marginals, const SubsystemDims& dims) {
  const int n = dims.party_count();
  const PartyMask full = dims.full_mask();
  std::vector<MarginalWitness> out;
  for (std::uint32_t tb = 1; tb < (1u << n); ++tb) {
    const PartyMask t(tb);
    if (t.count() % 2 == 0) continue;
    DenseOperator w = DenseOperator::identity(dims);
    for (std::uint32_t s = 1; s < full.bits; ++s) {
      const PartyMask sm(s);
      w.matrix() += parity_sign(sm, t) * embed(marginals.at(sm), sm, dims).matrix();
    }
    const double lo = min_eigenvalue(w);
    out.push_back({t, std::move(w), lo});
  }
  return out;
}

}  // namespace

std::vector<MarginalWitness> marginal_witnesses(const DenseOperator& rho) {
  const SubsystemDims& dims = rho.dims();
  if (dims.party_count() < 2) throw InvalidInput("marginal_witnesses: at least two parties are required");
  std::map<PartyMask, Matrix> marginals;
  for (std::uint32_t s = 1; s < dims.full_mask().bits; ++s) marginals[PartyMask(s)] = partial_trace_matrix(rho, PartyMask(s));
  return build_witnesses(marginals, dims);
}

std::vector<MarginalWitness> marginal_witnesses_from_marginals(const std::map<PartyMask, DenseOperator>& marginals,
                                                               const SubsystemDims& dims, double consistency_tol) {
  const int n = dims.party_count();
  if (n < 2) throw InvalidInput("marginal_witnesses: at least two parties are required");
  std::map<PartyMask, Matrix> mats;
  for (std::uint32_t s = 1; s < dims.full_mask().bits; ++s) {
    const PartyMask sm(s);
    auto it = marginals.find(sm);
    if (it == marginals.end()) throw InvalidInput("marginal_witnesses: missing marginal for parties " + sm.party_list());
    if (!(it->second.dims() == dims.restrict(sm)))
      throw InvalidInput("marginal_witnesses: marginal " + sm.party_list() + " has dims " + it->second.dims().str());
    if (it->second.hermiticity_defect() > consistency_tol)
      throw InvalidInput("marginal_witnesses: marginal " + sm.party_list() + " is not Hermitian");
    if (std::abs(it->second.trace() - Complex(1.0, 0.0)) > consistency_tol)
      throw InvalidInput("marginal_witnesses: marginal " + sm.party_list() + " does not have unit trace");
    mats[sm] = it->second.matrix();
  }
  // Nested pairs: Tr_{big \ small}(rho_big) must equal rho_small.
  for (const auto& [big, op] : marginals) {
    if (!mats.count(big)) continue;
    for (const auto& [small, mat] : mats) {
      if (small == big || !small.subset_of(big)) continue;
      // Position of `small` inside the block of `big`.
      PartyMask local;
      int pos = 0;
      for (int p = 0; p < n; ++p) {
        if (!big.has(p)) continue;
        if (small.has(p)) local = local | PartyMask::single(pos);
        ++pos;
      }
      const double dev = max_abs_diff(partial_trace_matrix(op, local), mat);
      if (dev > consistency_tol)
        throw InvalidInput("marginal_witnesses: marginals " + small.party_list() + " and " + big.party_list() +
                           " disagree on their overlap by " + std::to_string(dev));
    }
  }
  return build_witnesses(mats, dims);
}

ConstraintReport marginal_report(const std::vector<MarginalWitness>& witnesses, int party_count, double tol) {
  ConstraintReport r;
  r.family = Family::marginal;
  r.tolerance = tol;
  for (const auto& w : witnesses) r.add(w.t.bitstring(party_count), w.min_eig, 0.0);
  return r;
}

// --------------------------------------------------------------- independence

int numerical_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cut = 1e-8 * sv.maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

Eigen::MatrixXd rho_family_invariant_matrix(int n, int d) {
  if (n < 1 || n > 5) throw InvalidInput("independence_rank: n must be in 1..5");
  if (d < 2) throw InvalidInput("independence_rank: d must be >= 2");
  const SubsystemDims dims(std::vector<int>(static_cast<std::size_t>(n), d));
  Matrix pure0 = Matrix::Zero(d, d);
  pure0(0, 0) = 1.0;
  const Matrix mixed = Matrix::Identity(d, d) / static_cast<double>(d);
  const std::uint32_t subsets = 1u << n;
  Eigen::MatrixXd out(subsets, subsets);
  for (std::uint32_t s = 0; s < subsets; ++s) {
    std::vector<Matrix> factors;
    for (int k = 0; k < n; ++k) factors.push_back(PartyMask(s).has(k) ? pure0 : mixed);
    const DenseOperator rho(dims, kron_all(factors));
    for (std::uint32_t t = 0; t < subsets; ++t) out(s, t) = c_t_squared(rho, PartyMask(t));
  }
  return out;
}

int independence_rank(int n, int d) { return numerical_rank(rho_family_invariant_matrix(n, d)); }

Eigen::MatrixXd psi_family_invariant_matrix(int n) {
  if (n < 2 || n > 5) throw InvalidInput("independence_rank_pure: n must be in 2..5");
  const std::uint32_t subsets = 1u << (n - 1);
  Eigen::MatrixXd out(subsets, subsets);
  for (std::uint32_t si = 0; si < subsets; ++si) {
    const DenseOperator rho = psi_family(n, PartyMask(si << 1)).projector();
    for (std::uint32_t ti = 0; ti < subsets; ++ti) {
      const PartyMask t(ti << 1);
      out(si, ti) = c_t_squared(rho, t) + c_t_squared(rho, t | PartyMask::single(0));
    }
  }
  return out;
}

int independence_rank_pure(int n) { return numerical_rank(psi_family_invariant_matrix(n)); }

int witness_sign_rank(int n) {
  if (n < 2 || n > 12) throw InvalidInput("witness_sign_rank: n must be in 2..12");
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> odd;
  for (std::uint32_t t = 1; t <= full; ++t)
    if (PartyMask(t).count() % 2) odd.push_back(t);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(odd.size()), static_cast<Eigen::Index>(full));
  for (std::size_t i = 0; i < odd.size(); ++i)
    for (std::uint32_t s = 0; s < full; ++s) m(static_cast<Eigen::Index>(i), s) = parity_sign(PartyMask(s), PartyMask(odd[i]));
  return numerical_rank(m);
}

}  // namespace tinv
