#include "tinv/state_zoo.hpp"

#include "tinv/invariants.hpp"

#include <cmath>
#include <map>

namespace tinv {

namespace {

const std::map<StateKind, std::string>& kind_names() {
  static const std::map<StateKind, std::string> names = {
      {StateKind::ghz, "ghz"},
      {StateKind::bell_phi_plus, "bell_phi_plus"},
      {StateKind::w, "w"},
      {StateKind::product_basis, "product_basis"},
      {StateKind::rho_family_S, "rho_family_S"},
      {StateKind::psi_family_S, "psi_family_S"},
      {StateKind::rho_II, "rho_II"},
      {StateKind::rho_III, "rho_III"},
      {StateKind::haar_pure, "haar_pure"},
      {StateKind::ginibre_mixed, "ginibre_mixed"},
  };
  return names;
}

bool all_qubits(const SubsystemDims& dims) {
  for (int d : dims.values())
    if (d != 2) return false;
  return true;
}

SubsystemDims qubits(int n) { return SubsystemDims(std::vector<int>(static_cast<std::size_t>(n), 2)); }

// Global index of the computational basis state with the given digits.
std::size_t basis_index(const SubsystemDims& dims, const std::vector<int>& digits) {
  std::size_t idx = 0;
  for (int p = 0; p < dims.party_count(); ++p)
    idx = idx * static_cast<std::size_t>(dims[p]) + static_cast<std::size_t>(digits[static_cast<std::size_t>(p)]);
  return idx;
}

Complex complex_normal(CounterRng& rng) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {re, im};
}

}  // namespace

std::string to_string(StateKind kind) { return kind_names().at(kind); }

StateKind parse_state_kind(const std::string& name) {
  for (const auto& [k, v] : kind_names())
    if (v == name) return k;
  throw InvalidInput("unknown state kind '" + name + "'");
}

PureState ghz_state(const SubsystemDims& dims) {
  const int d = dims[0];
  for (int x : dims.values())
    if (x != d) throw InvalidInput("ghz: all local dimensions must be equal, got " + dims.str());
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    const std::vector<int> digits(static_cast<std::size_t>(dims.party_count()), k);
    psi(static_cast<Eigen::Index>(basis_index(dims, digits))) = amp;
  }
  return {dims, psi};
}

PureState bell_phi_plus() {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return {SubsystemDims({2, 2}), psi};
}

PureState w_state(int n) {
  if (n < 2) throw InvalidInput("w: at least two parties are required");
  const SubsystemDims dims = qubits(n);
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  for (int p = 0; p < n; ++p) psi(static_cast<Eigen::Index>(dims.stride(p))) = 1.0 / std::sqrt(static_cast<double>(n));
  return {dims, psi};
}

PureState product_basis_state(const SubsystemDims& dims, PartyMask ones) {
  dims.check_mask(ones);
  std::vector<int> digits(static_cast<std::size_t>(dims.party_count()), 0);
  for (int p = 0; p < dims.party_count(); ++p)
    if (ones.has(p)) digits[static_cast<std::size_t>(p)] = 1;
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  psi(static_cast<Eigen::Index>(basis_index(dims, digits))) = 1.0;
  return {dims, psi};
}

DensityMatrix rho_family(int n, PartyMask s) {
  if (n < 1) throw InvalidInput("rho_family: n must be >= 1");
  if (!s.fits(n)) throw InvalidInput("rho_family: S exceeds the party count");
  Matrix pure0 = Matrix::Zero(2, 2);
  pure0(0, 0) = 1.0;
  const Matrix mixed = 0.5 * Matrix::Identity(2, 2);
  std::vector<Matrix> factors;
  for (int k = 0; k < n; ++k) factors.push_back(s.has(k) ? pure0 : mixed);
  return DensityMatrix(DenseOperator(qubits(n), kron_all(factors)));
}

PureState psi_family(int n, PartyMask s) {
  if (n < 2) throw InvalidInput("psi_family: n must be >= 2");
  if (!s.fits(n) || s.has(0)) throw InvalidInput("psi_family: S must lie within parties 2..n");
  const SubsystemDims dims = qubits(n);
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  for (int a = 0; a < 2; ++a) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p)
      if (!s.has(p)) digits[static_cast<std::size_t>(p)] = a;
    psi(static_cast<Eigen::Index>(basis_index(dims, digits))) = 1.0 / std::sqrt(2.0);
  }
  return {dims, psi};
}

DensityMatrix rho_ii() {
  const SubsystemDims dims({2, 2, 2});
  const DenseOperator pair = bell_phi_plus().projector();
  DenseOperator op = embed(pair.matrix(), PartyMask::of({0, 1}), dims);
  op.matrix() *= 0.5;
  return DensityMatrix(std::move(op));
}

DensityMatrix rho_iii() {
  const SubsystemDims dims({2, 2, 2});
  const DenseOperator pair = bell_phi_plus().projector();
  DenseOperator op = embed(pair.matrix(), PartyMask::of({0, 2}), dims);
  op.matrix() *= 0.5;
  return DensityMatrix(std::move(op));
}

PureState haar_pure(const SubsystemDims& dims, CounterRng& rng) {
  const auto d = static_cast<Eigen::Index>(dims.total());
  Vector psi(d);
  for (Eigen::Index i = 0; i < d; ++i) psi(i) = complex_normal(rng);
  psi /= psi.norm();
  return {dims, psi};
}

DensityMatrix ginibre_mixed(const SubsystemDims& dims, CounterRng& rng, int rank) {
  const auto d = static_cast<Eigen::Index>(dims.total());
  if (rank < 0 || rank > d) throw InvalidInput("ginibre_mixed: rank must lie in 1.." + std::to_string(d) + " (0 = full)");
  const Eigen::Index r = rank == 0 ? d : rank;
  Matrix g(d, r);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < r; ++j) g(i, j) = complex_normal(rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Remove rounding asymmetry so the Hermiticity check is exact.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(DenseOperator(dims, std::move(rho)));
}

Matrix haar_unitary(int d, CounterRng& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = complex_normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

State build(const StateRecipe& recipe) {
  const SubsystemDims& dims = recipe.dims;
  const int n = dims.party_count();
  auto need_qubits = [&](const char* what) {
    if (!all_qubits(dims)) throw InvalidInput(std::string(what) + ": requires qubit dims, got " + dims.str());
  };
  switch (recipe.kind) {
    case StateKind::ghz:
      return ghz_state(dims);
    case StateKind::bell_phi_plus:
      if (!(dims == SubsystemDims({2, 2}))) throw InvalidInput("bell_phi_plus: requires dims [2,2]");
      return bell_phi_plus();
    case StateKind::w:
      need_qubits("w");
      return w_state(n);
    case StateKind::product_basis:
      return product_basis_state(dims, recipe.s.value_or(PartyMask{}));
    case StateKind::rho_family_S:
      need_qubits("rho_family_S");
      if (!recipe.s) throw InvalidInput("rho_family_S: requires S");
      return rho_family(n, *recipe.s);
    case StateKind::psi_family_S:
      need_qubits("psi_family_S");
      if (!recipe.s) throw InvalidInput("psi_family_S: requires S");
      return psi_family(n, *recipe.s);
    case StateKind::rho_II:
      if (!(dims == SubsystemDims({2, 2, 2}))) throw InvalidInput("rho_II: requires dims [2,2,2]");
      return rho_ii();
    case StateKind::rho_III:
      if (!(dims == SubsystemDims({2, 2, 2}))) throw InvalidInput("rho_III: requires dims [2,2,2]");
      return rho_iii();
    case StateKind::haar_pure: {
      if (!recipe.seed) throw InvalidInput("haar_pure: requires a seed");
      CounterRng rng(*recipe.seed, recipe.stream);
      return haar_pure(dims, rng);
    }
    case StateKind::ginibre_mixed: {
      if (!recipe.seed) throw InvalidInput("ginibre_mixed: requires a seed");
      CounterRng rng(*recipe.seed, recipe.stream);
      return ginibre_mixed(dims, rng, recipe.rank.value_or(0));
    }
  }
  throw InvalidInput("unknown recipe kind");
}

DensityMatrix as_density(const State& state) {
  if (const auto* p = std::get_if<PureState>(&state)) return DensityMatrix(*p);
  return std::get<DensityMatrix>(state);
}

double closed_form_ct_rho_family(int n, PartyMask s, PartyMask t) {
  if (!s.fits(n) || !t.fits(n)) throw InvalidInput("closed_form_ct_rho_family: masks exceed n");
  if (!(s & t).empty()) return 0.0;
  return std::pow(4.0, s.count()) * std::pow(3.0, n - s.count() - t.count()) / std::ldexp(1.0, n);
}

double closed_form_ct_psi_family(int n, PartyMask s, PartyMask t) {
  if (!s.fits(n) || !t.fits(n) || s.has(0) || t.has(0))
    throw InvalidInput("closed_form_ct_psi_family: S and T must lie within parties 2..n");
  if (!(s & t).empty()) return 0.0;
  return (t.empty() ? std::ldexp(1.0, n - 1) : 0.0) + std::ldexp(1.0, s.count());
}

MonotoneScenario monotone_scenario(int d) {
  if (d < 2) throw InvalidInput("monotone_scenario: d must be >= 2");
  const SubsystemDims dims({d, d, d});
  const PartyMask t = PartyMask::of({1, 2});
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
  psi(static_cast<Eigen::Index>(basis_index(dims, {0, 0, 0}))) = 1.0 / std::sqrt(2.0);
  psi(static_cast<Eigen::Index>(basis_index(dims, {1, 1, 1}))) = 1.0 / std::sqrt(2.0);
  const PureState ghz(dims, psi);

  MonotoneScenario out;
  out.before = std::sqrt(std::max(c_t_squared(ghz.projector(), t), 0.0));

  std::vector<Matrix> povm;
  for (double sign : {1.0, -1.0}) {
    Matrix a = Matrix::Zero(d, d);
    a(0, 0) = 0.5;
    a(1, 1) = 0.5;
    a(0, 1) = a(1, 0) = 0.5 * sign;
    for (int j = 2; j < d; ++j) a(j, j) = 1.0 / std::sqrt(2.0);
    povm.push_back(a);
  }
  Matrix completeness = Matrix::Zero(d, d);
  for (const Matrix& a : povm) completeness += a.adjoint() * a;
  out.povm_completeness_defect = max_abs_diff(completeness, Matrix::Identity(d, d));

  const Matrix rest = Matrix::Identity(d * d, d * d);
  for (const Matrix& a : povm) {
    const Matrix full = kron_all({a, rest});
    Vector phi = full * psi;
    const double p = phi.squaredNorm();
    if (p <= 0.0) continue;
    phi /= std::sqrt(p);
    const PureState post(dims, phi);
    out.after_average += p * std::sqrt(std::max(c_t_squared(post.projector(), t), 0.0));
  }
  return out;
}

MonotoneScenario monotone_counterexample() { return monotone_scenario(2); }

}  // namespace tinv
