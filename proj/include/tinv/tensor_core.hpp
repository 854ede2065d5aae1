#pragma once

// Dense complex-matrix substrate for multipartite operators.
//
// Index convention: party 1 is the leftmost (most significant) tensor
// factor, so the global index is i = sum_j i_j * prod_{k>j} d_k.
// Party indices in the C++ API are 0-based; party j of the physics
// notation is bit (j-1) of a PartyMask.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Malformed or inconsistent input (bad dims, masks, files, parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The product of local dimensions exceeds the configured cap.
class DimensionCapExceeded : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A quantity that must be real or symmetric came out corrupted.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double herm = 1e-10;
  double trace = 1e-10;
  double psd = 1e-9;
};

inline constexpr std::size_t kDefaultDimensionCap = 4096;

std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

/// Subset of parties as a bitmask; bit j <=> 0-based party j.
struct PartyMask {
  std::uint32_t bits = 0;

  constexpr PartyMask() = default;
  constexpr explicit PartyMask(std::uint32_t b) : bits(b) {}

  static constexpr PartyMask full(int n) { return PartyMask((n >= 32) ? ~0u : ((1u << n) - 1u)); }
  static constexpr PartyMask single(int party) { return PartyMask(1u << party); }
  /// Build from 0-based party indices.
  static PartyMask of(std::initializer_list<int> parties);

  constexpr bool has(int party) const { return (bits >> party) & 1u; }
  constexpr bool empty() const { return bits == 0; }
  int count() const { return __builtin_popcount(bits); }
  constexpr bool subset_of(PartyMask o) const { return (bits & ~o.bits) == 0; }
  constexpr PartyMask complement(int n) const { return PartyMask(full(n).bits & ~bits); }
  constexpr bool fits(int n) const { return subset_of(full(n)); }

  constexpr PartyMask operator|(PartyMask o) const { return PartyMask(bits | o.bits); }
  constexpr PartyMask operator&(PartyMask o) const { return PartyMask(bits & o.bits); }
  constexpr PartyMask operator^(PartyMask o) const { return PartyMask(bits ^ o.bits); }
  constexpr bool operator==(const PartyMask&) const = default;
  constexpr auto operator<=>(const PartyMask&) const = default;

  /// Zero-padded bitstring, party 1 leftmost.
  std::string bitstring(int n) const;
  /// 1-based party list, e.g. "1,3"; "{}" for the empty set.
  std::string party_list() const;
};

/// (-1)^{|a & b|}
inline double parity_sign(PartyMask a, PartyMask b) { return ((a & b).count() % 2) ? -1.0 : 1.0; }

/// Parse "1,3" (1-based parties) into a mask; "" / "{}" / "none" is the empty set.
PartyMask parse_party_list(const std::string& text, int n);

class SubsystemDims {
 public:
  SubsystemDims() = default;
  explicit SubsystemDims(std::vector<int> dims);

  int party_count() const { return static_cast<int>(dims_.size()); }
  std::size_t total() const { return total_; }
  int operator[](int party) const { return dims_[static_cast<std::size_t>(party)]; }
  const std::vector<int>& values() const { return dims_; }

  PartyMask full_mask() const { return PartyMask::full(party_count()); }
  /// Dimension of the block carried by the parties in `s`.
  std::size_t block_dim(PartyMask s) const;
  /// Dims of the parties in `s`, in party order. `s` must be nonempty.
  SubsystemDims restrict(PartyMask s) const;
  /// Row-major stride of `party` in the global index.
  std::size_t stride(int party) const;
  void check_mask(PartyMask s) const;

  SubsystemDims concat(const SubsystemDims& other) const;

  bool operator==(const SubsystemDims& o) const { return dims_ == o.dims_; }
  std::string str() const;

 private:
  std::vector<int> dims_;
  std::size_t total_ = 0;
};

class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(SubsystemDims dims, Matrix m);

  static DenseOperator identity(const SubsystemDims& dims);

  const SubsystemDims& dims() const { return dims_; }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }

  Complex trace() const { return m_.trace(); }
  DenseOperator adjoint() const { return {dims_, m_.adjoint()}; }
  DenseOperator conjugate() const { return {dims_, m_.conjugate()}; }
  DenseOperator transpose() const { return {dims_, m_.transpose()}; }
  /// Max absolute entry of op - op^dagger.
  double hermiticity_defect() const;

  DenseOperator& operator+=(const DenseOperator& o);
  DenseOperator& operator-=(const DenseOperator& o);
  DenseOperator& operator*=(Complex s) { m_ *= s; return *this; }

  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
  friend DenseOperator operator*(Complex s, DenseOperator a) { return a *= s; }

 private:
  SubsystemDims dims_;
  Matrix m_;
};

/// Max-entry norm of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);
inline double max_abs_diff(const DenseOperator& a, const DenseOperator& b) { return max_abs_diff(a.matrix(), b.matrix()); }

class PureState {
 public:
  PureState() = default;
  /// Validates the unit norm to 1e-12.
  PureState(SubsystemDims dims, Vector amplitudes);

  const SubsystemDims& dims() const { return dims_; }
  const Vector& amplitudes() const { return psi_; }
  DenseOperator projector() const;

 private:
  SubsystemDims dims_;
  Vector psi_;
};

/// A Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Throws InvalidInput naming the first violated invariant.
  explicit DensityMatrix(DenseOperator op, const Tolerances& tol = {});
  explicit DensityMatrix(const PureState& psi);

  const DenseOperator& op() const { return op_; }
  const SubsystemDims& dims() const { return op_.dims(); }
  const Matrix& matrix() const { return op_.matrix(); }
  operator const DenseOperator&() const { return op_; }

 private:
  DenseOperator op_;
};

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
/// Reduced operator on the parties in `keep` (kept in their original order).
/// An empty `keep` yields a 1x1 operator holding the trace, with empty dims.
Matrix partial_trace_matrix(const DenseOperator& op, PartyMask keep);
DenseOperator partial_trace(const DenseOperator& op, PartyMask keep);
/// op_s on the parties of `s`, tensored with identity on the rest.
DenseOperator embed(const Matrix& op_s, PartyMask s, const SubsystemDims& dims);
DenseOperator embed(const DenseOperator& op_s, PartyMask s, const SubsystemDims& dims);

/// Apply L (on party) from the left and R from the right: (1 x L x 1) X (1 x R x 1).
Matrix conjugate_local(const Matrix& x, const SubsystemDims& dims, int party, const Matrix& left, const Matrix& right);
/// c_tr * Tr_party(X) x 1_party + c_id * X, computed by direct strides.
Matrix apply_trace_factor(const Matrix& x, const SubsystemDims& dims, int party, double c_tr, double c_id);

/// U_1 x ... x U_N with party 1 leftmost.
Matrix kron_all(const std::vector<Matrix>& factors);

double purity(const DenseOperator& rho);

/// tau_S = 2[1 - Tr(rho_S^2)] indexed by mask value; entry 0 is 0.
class LinearEntropyVector {
 public:
  LinearEntropyVector() = default;
  LinearEntropyVector(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {}
  int party_count() const { return n_; }
  double operator[](PartyMask s) const { return values_[s.bits]; }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

LinearEntropyVector linear_entropies(const DenseOperator& rho);
/// Tr(rho_S^2) for every S (entry 0 is Tr(rho)^2).
std::vector<double> subsystem_purities(const DenseOperator& rho);

double min_eigenvalue(const DenseOperator& h, double tol_herm = 1e-10);
Eigen::VectorXd eigenvalues(const DenseOperator& h, double tol_herm = 1e-10);

}  // namespace tinv
