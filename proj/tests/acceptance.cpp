// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "tinv/constraints.hpp"
#include "tinv/invariants.hpp"
#include "tinv/inversion.hpp"
#include "tinv/rng.hpp"
#include "tinv/state_zoo.hpp"
#include "tinv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

using namespace tinv;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::vector<int>> kConfigs = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 2, 2, 2}};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::uint32_t masks_of(const SubsystemDims& d) { return 1u << d.party_count(); }

// 1 and 2 share the ensemble.
Outcome cross_form() {
  double worst = 0.0;
  for (const auto& dv : kConfigs) {
    const SubsystemDims dims(dv);
    for (std::uint64_t i = 0; i < 200; ++i) {
      const DensityMatrix rho = ensemble_mixed(dims, kSeed, i);
      for (std::uint32_t t = 0; t < masks_of(dims); ++t) {
        const DenseOperator ref = invert_sum(rho, PartyMask(t));
        worst = std::max(worst, max_abs_diff(ref, invert_product(rho, PartyMask(t))));
        worst = std::max(worst, max_abs_diff(ref, invert_kraus(rho, PartyMask(t))));
      }
    }
  }
  return {worst < 1e-10, "max deviation " + fmt(worst) + " (tol 1e-10)"};
}

Outcome positivity() {
  double worst = kInf;
  for (const auto& dv : kConfigs) {
    const SubsystemDims dims(dv);
    for (std::uint64_t i = 0; i < 200; ++i) {
      const DensityMatrix rho = ensemble_mixed(dims, kSeed, i);
      for (std::uint32_t t = 0; t < masks_of(dims); ++t) worst = std::min(worst, min_eigenvalue(invert_sum(rho, PartyMask(t))));
      // Rank-one inputs sit on the boundary of the state space.
      const DensityMatrix pure(ensemble_pure(dims, kSeed, i));
      for (std::uint32_t t = 0; t < masks_of(dims); ++t) worst = std::min(worst, min_eigenvalue(invert_sum(pure, PartyMask(t))));
    }
  }
  return {worst >= -1e-9, "min eigenvalue " + fmt(worst) + " over mixed and pure inputs (tol -1e-9)"};
}

Outcome correlation() {
  double worst = kInf;
  for (const auto& dv : kConfigs) {
    const SubsystemDims dims(dv);
    for (std::uint64_t i = 0; i < 500; ++i) {
      const DensityMatrix rho = ensemble_mixed(dims, kSeed + 1, i);
      for (std::uint32_t t = 1; t < masks_of(dims); ++t) worst = std::min(worst, correlation_constraint(rho, PartyMask(t)));
    }
  }
  return {worst >= -1e-9, "min value " + fmt(worst) + " (tol -1e-9)"};
}

Outcome monogamy() {
  double worst = kInf, odd = 0.0;
  for (const auto& dv : kConfigs) {
    const SubsystemDims dims(dv);
    for (std::uint64_t i = 0; i < 500; ++i) {
      const PureState psi = ensemble_pure(dims, kSeed, i);
      for (std::uint32_t t = 1; t < masks_of(dims); ++t) {
        const double v = monogamy_check(psi, PartyMask(t));
        worst = std::min(worst, v);
        if (PartyMask(t).count() % 2) odd = std::max(odd, std::abs(v));
      }
    }
  }
  return {worst >= -1e-9 && odd < 1e-9, "min value " + fmt(worst) + ", max |odd-T| " + fmt(odd) + " (tol 1e-9)"};
}

Outcome closed_forms() {
  double worst_rho = 0.0, worst_psi = 0.0;
  bool ranks = true;
  for (int n = 2; n <= 4; ++n) {
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      const DensityMatrix rho = rho_family(n, PartyMask(s));
      for (std::uint32_t t = 0; t < (1u << n); ++t)
        worst_rho = std::max(worst_rho, std::abs(c_t_squared(rho, PartyMask(t)) - closed_form_ct_rho_family(n, PartyMask(s), PartyMask(t))));
    }
    // psi(S) is defined for S within parties 2..n. For T within 2..n the
    // closed form is C_T^2 + C_{T+{1}}^2; exactly one of the two has even size
    // and carries the value, the odd one vanishes.
    for (std::uint32_t si = 0; si < (1u << (n - 1)); ++si) {
      const PartyMask s(si << 1);
      const DensityMatrix psi(psi_family(n, s));
      for (std::uint32_t t = 0; t < (1u << n); ++t) {
        const PartyMask tm(t);
        const double want = tm.count() % 2 ? 0.0 : closed_form_ct_psi_family(n, s, PartyMask(t & ~1u));
        worst_psi = std::max(worst_psi, std::abs(c_t_squared(psi, tm) - want));
      }
    }
  }
  for (int n = 1; n <= 4; ++n) ranks = ranks && independence_rank(n) == (1 << n);
  return {worst_rho < 1e-10 && worst_psi < 1e-10 && ranks,
          "rho(S) " + fmt(worst_rho) + ", psi(S) " + fmt(worst_psi) + " (tol 1e-10), full rank n<=4: " + (ranks ? "yes" : "no")};
}

Outcome parity() {
  double worst = 0.0;
  for (const auto& dv : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 2, 2, 2}}) {
    const SubsystemDims dims(dv);
    const int n = dims.party_count();
    const auto d = static_cast<Eigen::Index>(dims.total());
    const Matrix id = Matrix::Identity(d, d);
    for (std::uint64_t i = 0; i < 50; ++i) {
      const DensityMatrix rho = ensemble_mixed(dims, kSeed + 2, i);
      Matrix odd = Matrix::Zero(d, d), even = Matrix::Zero(d, d);
      for (std::uint32_t t = 0; t < masks_of(dims); ++t) (PartyMask(t).count() % 2 ? odd : even) += invert_sum(rho, PartyMask(t)).matrix();
      const double w = std::ldexp(1.0, 1 - n);
      worst = std::max(worst, max_abs_diff(w * odd, id - rho.matrix()));
      worst = std::max(worst, max_abs_diff(w * even, id + rho.matrix()));
    }
  }
  return {worst < 1e-11, "max deviation " + fmt(worst) + " (tol 1e-11)"};
}

Outcome coarse() {
  double worst3 = 0.0, worst4 = 0.0;
  const SubsystemDims d3({2, 2, 2});
  const Grouping g3({PartyMask(1u), PartyMask(6u)}, 3);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const DensityMatrix rho = ensemble_mixed(d3, kSeed + 3, i);
    const Matrix expect = 0.5 * (invert_sum(rho, PartyMask(2u)).matrix() + invert_sum(rho, PartyMask(4u)).matrix());
    worst3 = std::max(worst3, max_abs_diff(coarse_grain_invert(rho, g3, PartyMask(2u)).matrix(), expect));
  }
  const SubsystemDims d4({2, 2, 2, 2});
  const Grouping g4({PartyMask(3u), PartyMask(12u)}, 4);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const DensityMatrix rho = ensemble_mixed(d4, kSeed + 3, 1000 + i);
    for (std::uint32_t tc = 0; tc < 4u; ++tc) {
      const Matrix o = oracle::coarse_inversion(rho.matrix(), d4.values(), {3u, 12u}, tc);
      worst4 = std::max(worst4, max_abs_diff(coarse_grain_invert(rho, g4, PartyMask(tc)).matrix(), o));
    }
  }
  return {worst3 < 1e-11 && worst4 < 1e-11, "1|(23) " + fmt(worst3) + ", (12)(34) " + fmt(worst4) + " (tol 1e-11)"};
}

Outcome counterexamples() {
  const DensityMatrix r2 = rho_ii(), r3 = rho_iii();
  const LinearEntropyVector t = linear_entropies(r2);
  const double lhs = t[PartyMask(2u)] + t[PartyMask(7u)];
  const double rhs = t[PartyMask(3u)] + t[PartyMask(6u)];
  const bool exact = std::abs(lhs - 2.0) < 1e-12 && std::abs(rhs - 1.5) < 1e-12 && std::abs((rhs - lhs) + 0.5) < 1e-12;

  const ConstraintReport e2 = entropy_inequalities(r2), e3 = entropy_inequalities(r3);
  bool reverse = false;
  for (const auto& e : e3.entries)
    if (!e.theorem && e.label.rfind("ssa-reverse", 0) == 0 && e.margin < -1e-9) reverse = true;
  const bool theorems = e2.theorems_pass() && e3.theorems_pass();
  return {exact && reverse && theorems, "rho_II: " + fmt(lhs) + " vs " + fmt(rhs) + ", rho_III reverse violated: " +
                                            (reverse ? "yes" : "no") + ", theorem entries pass: " + (theorems ? "yes" : "no")};
}

Outcome detection() {
  const DensityMatrix bell(bell_phi_plus());
  const DetectionParams red = DetectionParams::reduction(2, PartyMask(2u), PartyMask(2u));
  const double bell_min = min_eigenvalue(apply_detection_map(bell, red));
  const bool bell_ok = std::abs(bell_min + 0.5) < 1e-10;

  double prod_min = kInf;
  for (std::uint64_t i = 0; i < 100; ++i) {
    CounterRng rng(kSeed + 4, i);
    const DenseOperator prod = kron(ginibre_mixed(SubsystemDims({2}), rng), ginibre_mixed(SubsystemDims({2}), rng));
    prod_min = std::min(prod_min, min_eigenvalue(apply_detection_map(prod, red)));
  }
  double choi_min = kInf;
  for (const auto& dv : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
    const SubsystemDims dims(dv);
    for (std::uint32_t t = 0; t < masks_of(dims); ++t) {
      DetectionParams p;
      p.t = PartyMask(t);
      choi_min = std::min(choi_min, min_eigenvalue(choi_matrix(MapKind::t_inversion_after_transpose, dims, p)));
    }
  }
  return {bell_ok && prod_min >= -1e-9 && choi_min >= -1e-9,
          "Bell " + fmt(bell_min) + ", products min " + fmt(prod_min) + ", Choi min " + fmt(choi_min)};
}

Outcome povm() {
  const MonotoneScenario s = monotone_counterexample();
  const bool ok = std::abs(s.before - 1.0) < 1e-9 && std::abs(s.after_average - std::sqrt(2.0)) < 1e-9;
  return {ok, "before " + fmt(s.before) + ", after " + fmt(s.after_average) + " (target sqrt 2, tol 1e-9)"};
}

Outcome shadow() {
  double worst = kInf, ident = 0.0;
  for (const auto& dv : kConfigs) {
    const SubsystemDims dims(dv);
    for (std::uint64_t i = 0; i < 200; ++i) {
      CounterRng rng(kSeed + 5, i);
      DenseOperator m1 = ginibre_mixed(dims, rng).op();
      DenseOperator m2 = ginibre_mixed(dims, rng).op();
      m1 *= 10.0 * rng.uniform();
      m2 *= 10.0 * rng.uniform();
      for (std::uint32_t t = 0; t < masks_of(dims); ++t) worst = std::min(worst, shadow_value(m1, m2, PartyMask(t)).value);
    }
    for (std::uint64_t i = 0; i < 20; ++i) {
      CounterRng rng(kSeed + 6, i);
      const PureState psi = haar_pure(dims, rng);
      const DensityMatrix rho = ginibre_mixed(dims, rng);
      const DensityMatrix proj(psi);
      for (std::uint32_t t = 0; t < masks_of(dims); ++t) {
        const Complex e = psi.amplitudes().adjoint() * invert_sum(rho, PartyMask(t)).matrix() * psi.amplitudes();
        ident = std::max(ident, std::abs(shadow_value(proj, rho, PartyMask(t)).value - e.real()));
      }
    }
  }
  return {worst >= -1e-9 && ident < 1e-10, "min value " + fmt(worst) + " (tol -1e-9), <psi|I_T(rho)|psi> deviation " + fmt(ident)};
}

Outcome marginals() {
  double worst = kInf;
  for (const auto& dv : kConfigs) {
    const SubsystemDims dims(dv);
    const int n = dims.party_count();
    for (std::uint64_t i = 0; i < 100; ++i) {
      const DensityMatrix rho = ensemble_mixed(dims, kSeed + 7, i);
      std::map<PartyMask, DenseOperator> m;
      for (std::uint32_t s = 1; s + 1 < (1u << n); ++s) m[PartyMask(s)] = partial_trace(rho, PartyMask(s));
      for (const auto& w : marginal_witnesses_from_marginals(m, dims)) worst = std::min(worst, w.min_eig);
    }
  }
  // Hand-built Delta (T = {1,2,3}) and its T = {1} analogue.
  double symbolic = 0.0;
  const SubsystemDims d3({2, 2, 2});
  const DensityMatrix rho = ensemble_mixed(d3, kSeed + 8, 0);
  auto r = [&](std::uint32_t s) { return oracle::embed(oracle::partial_trace(rho.matrix(), d3.values(), s), d3.values(), s); };
  const Matrix id = Matrix::Identity(8, 8);
  const Matrix delta = id - r(1) - r(2) - r(4) + r(3) + r(5) + r(6);
  const Matrix w1 = id - r(1) + r(2) + r(4) - r(3) - r(5) + r(6);
  for (const auto& w : marginal_witnesses(rho)) {
    if (w.t == PartyMask(7u)) symbolic = std::max(symbolic, max_abs_diff(w.op.matrix(), delta));
    if (w.t == PartyMask(1u)) symbolic = std::max(symbolic, max_abs_diff(w.op.matrix(), w1));
  }
  return {worst >= -1e-9 && symbolic < 1e-12, "min eigenvalue " + fmt(worst) + " (tol -1e-9), Delta deviation " + fmt(symbolic)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cross-form agreement of sum, product and Kraus forms", cross_form},
      {"positivity of I_T on random states", positivity},
      {"correlation constraints on 500 mixed states per configuration", correlation},
      {"monogamy on 500 pure states per configuration, odd T vanish", monogamy},
      {"closed forms of the product and GHZ-type families, full rank", closed_forms},
      {"parity sums give 1 - rho and 1 + rho", parity},
      {"coarse graining 1|(23) and (12)(34)", coarse},
      {"entropy counterexamples rho_II and rho_III", counterexamples},
      {"reduction criterion, product states, Choi positivity", detection},
      {"POVM non-monotonicity scenario", povm},
      {"shadow inequality on unnormalized PSD pairs", shadow},
      {"marginal witnesses PSD, Delta reproduced", marginals},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2zu: %s -- %s [%.0f ms]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), ms);
    if (!o.pass) ++failed;
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
