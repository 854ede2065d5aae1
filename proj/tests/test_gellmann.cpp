#include <doctest.h>

#include "oracles.hpp"
#include "tinv/gellmann.hpp"
#include "tinv/rng.hpp"
#include "tinv/state_zoo.hpp"

using namespace tinv;

namespace {

Matrix kron2(const Matrix& a, const Matrix& b) { return kron_all({a, b}); }

}  // namespace

TEST_CASE("qubit basis is identity plus Pauli matrices") {
  const GellMannBasis b = build_basis(2);
  REQUIRE(b.size() == 4);
  const Complex i(0.0, 1.0);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  CHECK(max_abs_diff(b.h[0], Matrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs_diff(b.h[1], sx) < 1e-15);
  CHECK(max_abs_diff(b.h[2], sy) < 1e-15);
  CHECK(max_abs_diff(b.h[3], sz) < 1e-15);
  CHECK(b.antisymmetric_indices() == std::vector<int>{2});
  CHECK(b.symmetric_indices() == std::vector<int>{0, 1, 3});
}

TEST_CASE("index relabeling, hermiticity and Gram matrix") {
  for (int d = 2; d <= 5; ++d) {
    const GellMannBasis b = build_basis(d);
    REQUIRE(b.size() == static_cast<std::size_t>(d * d));
    CHECK(b.antisymmetric_indices().size() == static_cast<std::size_t>(d * (d - 1) / 2));
    CHECK(b.symmetric_indices().size() == static_cast<std::size_t>(d * (d + 1) / 2));
    for (int l = 1; l < d; ++l) {
      CHECK(b.kind[static_cast<std::size_t>(l * l + 2 * l)] == GeneratorKind::z);
      for (int k = 0; k < l; ++k) {
        CHECK(b.kind[static_cast<std::size_t>(l * l + 2 * k)] == GeneratorKind::x);
        CHECK(b.kind[static_cast<std::size_t>(l * l + 2 * k + 1)] == GeneratorKind::y);
      }
    }
    double gram = 0.0, herm = 0.0;
    for (std::size_t m = 0; m < b.size(); ++m) {
      herm = std::max(herm, max_abs_diff(b.h[m], b.h[m].adjoint()));
      // x, z and identity are real symmetric; y is imaginary antisymmetric.
      const bool y = b.kind[m] == GeneratorKind::y;
      CHECK(max_abs_diff(b.h[m].transpose(), y ? Matrix(-b.h[m]) : b.h[m]) < 1e-15);
      for (std::size_t n = 0; n < b.size(); ++n) {
        const Complex g = (b.h[m] * b.h[n]).trace();
        gram = std::max(gram, std::abs(g - Complex(m == n ? d : 0.0)));
      }
    }
    CHECK(herm < 1e-15);
    CHECK(gram < 1e-13);
  }
}

TEST_CASE("trace and transpose resolutions") {
  for (int d = 2; d <= 4; ++d) {
    const GellMannBasis& b = gellmann_basis(d);
    const Matrix id = Matrix::Identity(d, d);
    CHECK(max_abs_diff(trace_resolution(id, b), d * id) < 1e-13);
    const Matrix a = oracle::random_hermitian(d, 17u + static_cast<unsigned>(d));
    CHECK(max_abs_diff(trace_resolution(a, b), a.trace() * id) < 1e-11);
    CHECK(max_abs_diff(transpose_resolution(a, b), a.transpose()) < 1e-11);
    // A general (non-Hermitian) matrix works as well.
    const Matrix g = Matrix::Random(d, d);
    CHECK(max_abs_diff(trace_resolution(g, b), g.trace() * id) < 1e-12);
    CHECK(max_abs_diff(transpose_resolution(g, b), g.transpose()) < 1e-12);
  }
  const GellMannBasis& q = gellmann_basis(2);
  CHECK(max_abs_diff(transpose_resolution(q.h[2], q), -q.h[2]) < 1e-15);
}

TEST_CASE("completeness: sum_m h_m x h_m^* is d times the unnormalized max-entangled projector") {
  for (int d = 2; d <= 4; ++d) {
    const GellMannBasis& b = gellmann_basis(d);
    Matrix acc = Matrix::Zero(d * d, d * d);
    for (const Matrix& h : b.h) acc += kron2(h, h.conjugate());
    Vector phi = Vector::Zero(d * d);
    for (int k = 0; k < d; ++k) phi(k * d + k) = 1.0;
    CHECK(max_abs_diff(acc, d * phi * phi.adjoint()) < 1e-12);
  }
}

TEST_CASE("single-party Kraus partition: y-set gives Tr(A)1 - A, the rest gives Tr(A)1 + A") {
  for (int d = 2; d <= 4; ++d) {
    const GellMannBasis& b = gellmann_basis(d);
    const Matrix id = Matrix::Identity(d, d);
    const Matrix a = oracle::random_hermitian(d, 3u * static_cast<unsigned>(d));
    CHECK(max_abs_diff(local_inversion_kraus(a, b, true), a.trace() * id - a) < 1e-12);
    CHECK(max_abs_diff(local_inversion_kraus(a, b, false), a.trace() * id + a) < 1e-12);
  }
  // Spin flip for a qubit state: sigma_y rho^* sigma_y = 1 - rho.
  CounterRng rng(4, 0);
  const DensityMatrix rho = ginibre_mixed(SubsystemDims({2}), rng);
  const GellMannBasis& q = gellmann_basis(2);
  CHECK(max_abs_diff(q.h[2] * rho.matrix().conjugate() * q.h[2], Matrix::Identity(2, 2) - rho.matrix()) < 1e-14);
}

TEST_CASE("basis cache returns a stable instance") {
  CHECK(&gellmann_basis(3) == &gellmann_basis(3));
  CHECK_THROWS_AS(build_basis(1), InvalidInput);
}
