#include "tinv/verify.hpp"

#include "tinv/constraints.hpp"
#include "tinv/invariants.hpp"
#include "tinv/inversion.hpp"
#include "tinv/state_zoo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

namespace tinv {

namespace {

constexpr std::uint64_t kPureStreams = std::uint64_t{1} << 32;
constexpr std::uint64_t kProductStreams = std::uint64_t{2} << 32;
constexpr std::uint64_t kPairStreams = std::uint64_t{3} << 32;

constexpr double kInf = std::numeric_limits<double>::infinity();

SuiteResult upper(std::string name, double value, double threshold) {
  SuiteResult r;
  r.name = std::move(name);
  r.value = value;
  r.threshold = threshold;
  r.upper_bound = true;
  r.pass = value <= threshold;
  return r;
}

SuiteResult lower(std::string name, double value, double threshold) {
  SuiteResult r;
  r.name = std::move(name);
  r.value = value;
  r.threshold = threshold;
  r.upper_bound = false;
  r.pass = value >= threshold;
  return r;
}

SuiteResult skipped(std::string name, std::string note) {
  SuiteResult r;
  r.name = std::move(name);
  r.skipped = true;
  r.note = std::move(note);
  return r;
}

SuiteResult cross_form(const VerifyConfig& c) {
  const std::uint32_t masks = 1u << c.dims.party_count();
  double worst = 0.0;
  for (int i = 0; i < c.size; ++i) {
    const DensityMatrix rho = ensemble_mixed(c.dims, c.seed, static_cast<std::uint64_t>(i));
    for (std::uint32_t t = 0; t < masks; ++t) {
      const DenseOperator ref = invert_sum(rho, PartyMask(t));
      worst = std::max(worst, max_abs_diff(ref, invert_product(rho, PartyMask(t))));
      worst = std::max(worst, max_abs_diff(ref, invert_kraus(rho, PartyMask(t))));
    }
  }
  return upper("cross_form", worst, 1e-10);
}

SuiteResult positivity(const VerifyConfig& c) {
  const std::uint32_t masks = 1u << c.dims.party_count();
  double worst = kInf;
  for (int i = 0; i < c.size; ++i) {
    const DensityMatrix rho = ensemble_mixed(c.dims, c.seed, static_cast<std::uint64_t>(i));
    for (std::uint32_t t = 0; t < masks; ++t) worst = std::min(worst, min_eigenvalue(invert_sum(rho, PartyMask(t))));
  }
  return lower("positivity", worst, -1e-9);
}

SuiteResult parity(const VerifyConfig& c) {
  const int n = c.dims.party_count();
  const auto d = static_cast<Eigen::Index>(c.dims.total());
  const double weight = std::ldexp(1.0, 1 - n);
  double worst = 0.0;
  for (int i = 0; i < c.size; ++i) {
    const DensityMatrix rho = ensemble_mixed(c.dims, c.seed, static_cast<std::uint64_t>(i));
    Matrix odd = Matrix::Zero(d, d), even = Matrix::Zero(d, d);
    for (std::uint32_t t = 0; t < (1u << n); ++t)
      (PartyMask(t).count() % 2 ? odd : even) += invert_sum(rho, PartyMask(t)).matrix();
    const Matrix id = Matrix::Identity(d, d);
    worst = std::max(worst, max_abs_diff(weight * odd, id - rho.matrix()));
    worst = std::max(worst, max_abs_diff(weight * even, id + rho.matrix()));
  }
  return upper("parity", worst, 1e-11);
}

SuiteResult factorization(const VerifyConfig& c) {
  const int n = c.dims.party_count();
  if (n < 2) return skipped("factorization", "needs at least two parties");
  // Split after the first party: rho = rho_A x rho_B.
  const SubsystemDims da = c.dims.restrict(PartyMask::single(0));
  const SubsystemDims db = c.dims.restrict(PartyMask::single(0).complement(n));
  double worst = 0.0;
  for (int i = 0; i < c.size; ++i) {
    CounterRng rng(c.seed, kProductStreams + static_cast<std::uint64_t>(i));
    const DensityMatrix a = ginibre_mixed(da, rng);
    const DensityMatrix b = ginibre_mixed(db, rng);
    const DenseOperator prod = kron(a, b);
    for (std::uint32_t t = 0; t < (1u << n); ++t) {
      const PartyMask tm(t);
      const PartyMask ta(t & 1u);
      const PartyMask tb(t >> 1);
      const DenseOperator lhs = invert_sum(prod, tm);
      const DenseOperator rhs = kron(invert_sum(a, ta), invert_sum(b, tb));
      worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
  }
  return upper("factorization", worst, 1e-11);
}

SuiteResult correlation(const VerifyConfig& c) {
  double worst = kInf;
  for (int i = 0; i < c.size; ++i) {
    const DensityMatrix rho = ensemble_mixed(c.dims, c.seed, static_cast<std::uint64_t>(i));
    worst = std::min(worst, correlation_report(rho).worst_margin());
  }
  return lower("correlation", worst, -1e-9);
}

SuiteResult monogamy(const VerifyConfig& c) {
  const int n = c.dims.party_count();
  if (n < 2) return skipped("monogamy", "needs at least two parties");
  double worst = kInf;
  double odd_abs = 0.0;
  for (int i = 0; i < c.size; ++i) {
    const PureState psi = ensemble_pure(c.dims, c.seed, static_cast<std::uint64_t>(i));
    const ConstraintReport r = monogamy_report(psi);
    for (std::size_t k = 0; k < r.entries.size(); ++k) {
      worst = std::min(worst, r.entries[k].margin);
      if (PartyMask(static_cast<std::uint32_t>(k + 1)).count() % 2)
        odd_abs = std::max(odd_abs, std::abs(r.entries[k].value));
    }
  }
  SuiteResult res = lower("monogamy", worst, -1e-9);
  res.pass = res.pass && odd_abs < 1e-9;
  res.note = "max |odd-T value| = " + std::to_string(odd_abs);
  return res;
}

SuiteResult shadow(const VerifyConfig& c) {
  const std::uint32_t masks = 1u << c.dims.party_count();
  double worst = kInf;
  for (int i = 0; i < c.size; ++i) {
    CounterRng rng(c.seed, kPairStreams + static_cast<std::uint64_t>(i));
    DenseOperator m1 = ginibre_mixed(c.dims, rng).op();
    DenseOperator m2 = ginibre_mixed(c.dims, rng).op();
    m1 *= 10.0 * rng.uniform();
    m2 *= 10.0 * rng.uniform();
    for (std::uint32_t t = 0; t < masks; ++t) worst = std::min(worst, shadow_value(m1, m2, PartyMask(t)).value);
  }
  return lower("shadow", worst, -1e-9);
}

SuiteResult marginal(const VerifyConfig& c) {
  if (c.dims.party_count() < 2) return skipped("marginal", "needs at least two parties");
  double worst = kInf;
  for (int i = 0; i < c.size; ++i) {
    const DensityMatrix rho = ensemble_mixed(c.dims, c.seed, static_cast<std::uint64_t>(i));
    for (const auto& w : marginal_witnesses(rho)) worst = std::min(worst, w.min_eig);
  }
  return lower("marginal", worst, -1e-9);
}

SuiteResult independence(const VerifyConfig& c) {
  const int n = c.dims.party_count();
  if (n > 5) return skipped("independence", "dense rank test limited to n <= 5");
  const int want = 1 << n;
  const int rank = independence_rank(n, 2);
  SuiteResult r = lower("independence", rank, want);
  r.pass = rank == want;
  if (n >= 2) {
    const int pure_rank = independence_rank_pure(n);
    r.pass = r.pass && pure_rank == (1 << (n - 1));
    r.note = "pure-family rank " + std::to_string(pure_rank) + " of " + std::to_string(1 << (n - 1));
  }
  return r;
}

SuiteResult closed_form(const VerifyConfig& c) {
  const int n = c.dims.party_count();
  if (n > 5) return skipped("closed_form", "families evaluated for n <= 5");
  const std::uint32_t subsets = 1u << n;
  double worst = 0.0;
  for (std::uint32_t s = 0; s < subsets; ++s) {
    const DensityMatrix rho = rho_family(n, PartyMask(s));
    for (std::uint32_t t = 0; t < subsets; ++t)
      worst = std::max(worst, std::abs(c_t_squared(rho, PartyMask(t)) -
                                       closed_form_ct_rho_family(n, PartyMask(s), PartyMask(t))));
  }
  if (n >= 2) {
    const Eigen::MatrixXd m = psi_family_invariant_matrix(n);
    for (std::uint32_t si = 0; si < (subsets >> 1); ++si)
      for (std::uint32_t ti = 0; ti < (subsets >> 1); ++ti)
        worst = std::max(worst, std::abs(m(si, ti) - closed_form_ct_psi_family(n, PartyMask(si << 1), PartyMask(ti << 1))));
  }
  return upper("closed_form", worst, 1e-10);
}

using SuiteFn = std::function<SuiteResult(const VerifyConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all = {
      {"cross_form", cross_form},   {"positivity", positivity},     {"parity", parity},
      {"factorization", factorization}, {"correlation", correlation}, {"monogamy", monogamy},
      {"shadow", shadow},           {"marginal", marginal},         {"independence", independence},
      {"closed_form", closed_form},
  };
  return all;
}

}  // namespace

DensityMatrix ensemble_mixed(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t i) {
  CounterRng rng(seed, i);
  return ginibre_mixed(dims, rng);
}

PureState ensemble_pure(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t i) {
  CounterRng rng(seed, kPureStreams + i);
  return haar_pure(dims, rng);
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_verification(const VerifyConfig& config) {
  for (const auto& name : config.suites)
    if (std::find(verify_suite_names().begin(), verify_suite_names().end(), name) == verify_suite_names().end())
      throw InvalidInput("verify: unknown suite '" + name + "'");
  if (config.size < 1) throw InvalidInput("verify: ensemble size must be >= 1");
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : suites()) {
    if (!config.suites.empty() && !config.suites.count(name)) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r = fn(config);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tinv
