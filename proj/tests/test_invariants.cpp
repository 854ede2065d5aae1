#include <doctest.h>

#include "tinv/inversion.hpp"
#include "tinv/invariants.hpp"
#include "tinv/rng.hpp"
#include "tinv/state_zoo.hpp"

#include <cmath>

using namespace tinv;

TEST_CASE("Bell and pure-state examples") {
  const DensityMatrix bell(bell_phi_plus());
  CHECK(c_t_squared(bell, PartyMask(3u)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(distributed_concurrence(bell) == doctest::Approx(1.0).epsilon(1e-14));

  CounterRng rng(21, 0);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix psi(haar_pure(SubsystemDims({2, 3, 2}), rng));
    for (std::uint32_t t = 1; t < 8u; ++t)
      if (PartyMask(t).count() % 2) CHECK(std::abs(c_t_squared(psi, PartyMask(t))) < 1e-10);
  }
}

TEST_CASE("single qubit |0> and maximally mixed pair") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const DensityMatrix zero(DenseOperator(SubsystemDims({2}), p0));
  const auto table = invariant_table(zero);
  REQUIRE(table.size() == 2);
  CHECK(table[0].squared == doctest::Approx(2.0));
  CHECK(std::abs(table[1].squared) < 1e-15);

  const DenseOperator mm(SubsystemDims({2, 2}), 0.25 * Matrix::Identity(4, 4));
  CHECK(c_t_squared(mm, PartyMask(3u)) == doctest::Approx(0.25));
  CHECK(c_t_squared(mm, PartyMask(1u)) == doctest::Approx(0.75));
}

TEST_CASE("product pure state has vanishing invariants for T nonempty") {
  const DensityMatrix prod(product_basis_state(SubsystemDims({2, 2}), PartyMask(2u)));
  const auto table = invariant_table(prod);
  CHECK(table[0].squared == doctest::Approx(4.0));
  for (std::size_t t = 1; t < table.size(); ++t) CHECK(std::abs(table[t].squared) < 1e-14);
}

TEST_CASE("C_T^2 equals the signed purity sum") {
  CounterRng rng(22, 1);
  const DensityMatrix rho = ginibre_mixed(SubsystemDims({2, 3, 2}), rng);
  const auto pur = subsystem_purities(rho);
  for (std::uint32_t t = 0; t < 8u; ++t) {
    double sum = 0.0;
    for (std::uint32_t s = 0; s < 8u; ++s) sum += parity_sign(PartyMask(s), PartyMask(t)) * pur[s];
    CHECK(c_t_squared(rho, PartyMask(t)) == doctest::Approx(sum).epsilon(1e-12));
    const Complex direct = (rho.matrix() * invert_sum(rho, PartyMask(t)).matrix()).trace();
    CHECK(c_t_squared(rho, PartyMask(t)) == doctest::Approx(direct.real()).epsilon(1e-12));
  }
}

TEST_CASE("clamping of tiny negative values") {
  const DensityMatrix ghz(ghz_state(SubsystemDims({2, 2, 2})));
  for (const auto& v : invariant_table(ghz)) {
    CHECK(v.squared >= 0.0);
    CHECK(v.root() >= 0.0);
    if (v.t.count() % 2) CHECK(v.squared < 1e-10);
  }
}

TEST_CASE("local unitary invariance") {
  CounterRng rng(23, 2);
  const SubsystemDims dims({3, 2});
  const DensityMatrix rho = ginibre_mixed(dims, rng);
  const Matrix u = kron_all({haar_unitary(3, rng), haar_unitary(2, rng)});
  const DenseOperator rot(dims, u * rho.matrix() * u.adjoint());
  for (std::uint32_t t = 0; t < 4u; ++t)
    CHECK(c_t_squared(rot, PartyMask(t)) == doctest::Approx(c_t_squared(rho, PartyMask(t))).epsilon(1e-12));
}

TEST_CASE("bipartite concurrence") {
  const PureState ghz = ghz_state(SubsystemDims({2, 2, 2}));
  for (int p = 0; p < 3; ++p) CHECK(bipartite_concurrence_squared(ghz, PartyMask::single(p)) == doctest::Approx(1.0));
  const PureState prod = product_basis_state(SubsystemDims({2, 2, 2}), PartyMask(5u));
  for (std::uint32_t s = 1; s < 7u; ++s) CHECK(std::abs(bipartite_concurrence_squared(prod, PartyMask(s))) < 1e-14);
  CHECK(bipartite_concurrence_squared(w_state(3), PartyMask(1u)) == doctest::Approx(8.0 / 9.0));
  CHECK_THROWS_AS(bipartite_concurrence_squared(ghz, PartyMask()), InvalidInput);
  CHECK_THROWS_AS(bipartite_concurrence_squared(ghz, PartyMask(7u)), InvalidInput);
}
