#include "tinv/gellmann.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace tinv {

std::vector<int> GellMannBasis::antisymmetric_indices() const {
  std::vector<int> out;
  for (std::size_t m = 0; m < kind.size(); ++m)
    if (kind[m] == GeneratorKind::y) out.push_back(static_cast<int>(m));
  return out;
}

std::vector<int> GellMannBasis::symmetric_indices() const {
  std::vector<int> out;
  for (std::size_t m = 0; m < kind.size(); ++m)
    if (kind[m] != GeneratorKind::y) out.push_back(static_cast<int>(m));
  return out;
}

GellMannBasis build_basis(int d) {
  if (d < 2) throw InvalidInput("gellmann: dimension must be >= 2, got " + std::to_string(d));
  GellMannBasis b;
  b.d = d;
  const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  b.h.assign(n, Matrix::Zero(d, d));
  b.kind.assign(n, GeneratorKind::identity);
  b.h[0] = Matrix::Identity(d, d);

  const double off = std::sqrt(d / 2.0);
  const Complex i1(0.0, 1.0);
  for (int l = 1; l < d; ++l) {
    for (int k = 0; k < l; ++k) {
      const auto xi = static_cast<std::size_t>(l * l + 2 * k);
      Matrix x = Matrix::Zero(d, d);
      x(k, l) = off;
      x(l, k) = off;
      b.h[xi] = x;
      b.kind[xi] = GeneratorKind::x;

      Matrix y = Matrix::Zero(d, d);
      y(k, l) = -i1 * off;
      y(l, k) = i1 * off;
      b.h[xi + 1] = y;
      b.kind[xi + 1] = GeneratorKind::y;
    }
    const auto zi = static_cast<std::size_t>(l * l + 2 * l);
    Matrix z = Matrix::Zero(d, d);
    const double scale = std::sqrt(static_cast<double>(d) / (l * (l + 1.0)));
    for (int k = 0; k < l; ++k) z(k, k) = scale;
    z(l, l) = -l * scale;
    b.h[zi] = z;
    b.kind[zi] = GeneratorKind::z;
  }
  return b;
}

const GellMannBasis& gellmann_basis(int d) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const GellMannBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, std::make_unique<const GellMannBasis>(build_basis(d))).first;
  return *it->second;
}

namespace {

void check_side(const Matrix& a, const GellMannBasis& basis, const char* what) {
  if (a.rows() != basis.d || a.cols() != basis.d)
    throw InvalidInput(std::string(what) + ": operator side " + std::to_string(a.rows()) +
                       " does not match basis dimension " + std::to_string(basis.d));
}

}  // namespace

Matrix trace_resolution(const Matrix& a, const GellMannBasis& basis) {
  check_side(a, basis, "trace_resolution");
  Matrix out = Matrix::Zero(basis.d, basis.d);
  for (const Matrix& h : basis.h) out += h * a * h;
  return out / static_cast<double>(basis.d);
}

Matrix transpose_resolution(const Matrix& a, const GellMannBasis& basis) {
  check_side(a, basis, "transpose_resolution");
  Matrix out = Matrix::Zero(basis.d, basis.d);
  for (const Matrix& h : basis.h) out += h.transpose() * a * h;
  return out / static_cast<double>(basis.d);
}

Matrix local_inversion_kraus(const Matrix& a, const GellMannBasis& basis, bool minus) {
  check_side(a, basis, "local_inversion_kraus");
  const Matrix ac = a.conjugate();
  Matrix out = Matrix::Zero(basis.d, basis.d);
  for (int m : minus ? basis.antisymmetric_indices() : basis.symmetric_indices()) {
    const Matrix& h = basis.h[static_cast<std::size_t>(m)];
    out += h * ac * h;
  }
  return (2.0 / basis.d) * out;
}

}  // namespace tinv
