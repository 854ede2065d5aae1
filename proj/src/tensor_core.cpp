#include "tinv/tensor_core.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace tinv {

namespace {

std::atomic<std::size_t> g_dimension_cap{kDefaultDimensionCap};

// For a global index, its position within the block of `keep` parties and
// within the block of the complementary parties. Both blocks are mixed-radix
// numbers in party order.
struct SplitIndex {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
};

SplitIndex split_index(const SubsystemDims& dims, PartyMask keep) {
  SplitIndex out;
  const std::size_t total = dims.total();
  out.kept.assign(total, 0);
  out.traced.assign(total, 0);
  out.kept_dim = dims.block_dim(keep);
  out.traced_dim = total / out.kept_dim;
  const int n = dims.party_count();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    std::size_t k = 0, t = 0, kmul = 1, tmul = 1;
    for (int p = n - 1; p >= 0; --p) {
      const auto d = static_cast<std::size_t>(dims[p]);
      const std::size_t digit = rest % d;
      rest /= d;
      if (keep.has(p)) {
        k += digit * kmul;
        kmul *= d;
      } else {
        t += digit * tmul;
        tmul *= d;
      }
    }
    out.kept[i] = k;
    out.traced[i] = t;
  }
  return out;
}

}  // namespace

std::size_t dimension_cap() { return g_dimension_cap.load(std::memory_order_relaxed); }
void set_dimension_cap(std::size_t cap) { g_dimension_cap.store(cap, std::memory_order_relaxed); }

PartyMask PartyMask::of(std::initializer_list<int> parties) {
  PartyMask m;
  for (int p : parties) m.bits |= 1u << p;
  return m;
}

std::string PartyMask::bitstring(int n) const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int p = 0; p < n; ++p)
    if (has(p)) s[static_cast<std::size_t>(p)] = '1';
  return s;
}

std::string PartyMask::party_list() const {
  if (empty()) return "{}";
  std::string s;
  for (int p = 0; p < 32; ++p) {
    if (!has(p)) continue;
    if (!s.empty()) s += ',';
    s += std::to_string(p + 1);
  }
  return s;
}

PartyMask parse_party_list(const std::string& text, int n) {
  if (text.empty() || text == "{}" || text == "none") return PartyMask{};
  PartyMask m;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int party = 0;
    try {
      party = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InvalidInput("party list: '" + tok + "' is not an integer");
    }
    if (used != tok.size()) throw InvalidInput("party list: '" + tok + "' is not an integer");
    if (party < 1 || party > n)
      throw InvalidInput("party list: party " + std::to_string(party) + " outside 1.." + std::to_string(n));
    m.bits |= 1u << (party - 1);
  }
  return m;
}

SubsystemDims::SubsystemDims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidInput("dims: at least one party is required");
  if (dims_.size() > 30) throw InvalidInput("dims: at most 30 parties are supported");
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw InvalidInput("dims: every local dimension must be >= 2, got " + std::to_string(d));
    total_ *= static_cast<std::size_t>(d);
    if (total_ > dimension_cap())
      throw DimensionCapExceeded("dims: total dimension exceeds cap " + std::to_string(dimension_cap()));
  }
}

std::size_t SubsystemDims::block_dim(PartyMask s) const {
  std::size_t d = 1;
  for (int p = 0; p < party_count(); ++p)
    if (s.has(p)) d *= static_cast<std::size_t>(dims_[static_cast<std::size_t>(p)]);
  return d;
}

SubsystemDims SubsystemDims::restrict(PartyMask s) const {
  check_mask(s);
  std::vector<int> out;
  for (int p = 0; p < party_count(); ++p)
    if (s.has(p)) out.push_back(dims_[static_cast<std::size_t>(p)]);
  return SubsystemDims(std::move(out));
}

std::size_t SubsystemDims::stride(int party) const {
  std::size_t s = 1;
  for (int p = party_count() - 1; p > party; --p) s *= static_cast<std::size_t>(dims_[static_cast<std::size_t>(p)]);
  return s;
}

void SubsystemDims::check_mask(PartyMask s) const {
  if (!s.fits(party_count()))
    throw InvalidInput("mask " + s.party_list() + " references parties beyond " + std::to_string(party_count()));
}

SubsystemDims SubsystemDims::concat(const SubsystemDims& other) const {
  std::vector<int> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemDims(std::move(d));
}

std::string SubsystemDims::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(dims_[i]);
  }
  return s + "]";
}

DenseOperator::DenseOperator(SubsystemDims dims, Matrix m) : dims_(std::move(dims)), m_(std::move(m)) {
  const auto d = static_cast<Eigen::Index>(dims_.total());
  if (m_.rows() != d || m_.cols() != d)
    throw InvalidInput("operator: matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                       ", dims " + dims_.str() + " require side " + std::to_string(d));
}

DenseOperator DenseOperator::identity(const SubsystemDims& dims) {
  const auto d = static_cast<Eigen::Index>(dims.total());
  return {dims, Matrix::Identity(d, d)};
}

double DenseOperator::hermiticity_defect() const { return max_abs_diff(m_, m_.adjoint()); }

DenseOperator& DenseOperator::operator+=(const DenseOperator& o) {
  if (!(dims_ == o.dims_)) throw InvalidInput("operator sum: dims differ");
  m_ += o.m_;
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& o) {
  if (!(dims_ == o.dims_)) throw InvalidInput("operator difference: dims differ");
  m_ -= o.m_;
  return *this;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

PureState::PureState(SubsystemDims dims, Vector amplitudes) : dims_(std::move(dims)), psi_(std::move(amplitudes)) {
  if (psi_.size() != static_cast<Eigen::Index>(dims_.total()))
    throw InvalidInput("pure state: " + std::to_string(psi_.size()) + " amplitudes, dims " + dims_.str() +
                       " require " + std::to_string(dims_.total()));
  const double norm = psi_.norm();
  if (std::abs(norm - 1.0) > 1e-12)
    throw InvalidInput("pure state: norm deviates from 1 by " + std::to_string(std::abs(norm - 1.0)));
}

DenseOperator PureState::projector() const { return {dims_, psi_ * psi_.adjoint()}; }

DensityMatrix::DensityMatrix(DenseOperator op, const Tolerances& tol) : op_(std::move(op)) {
  const double herm = op_.hermiticity_defect();
  if (herm > tol.herm) throw InvalidInput("density matrix: not Hermitian (defect " + std::to_string(herm) + ")");
  const Complex tr = op_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace)
    throw InvalidInput("density matrix: trace is " + std::to_string(tr.real()) + ", expected 1");
  const double lo = min_eigenvalue(op_, tol.herm);
  if (lo < -tol.psd) throw InvalidInput("density matrix: negative eigenvalue " + std::to_string(lo));
}

DensityMatrix::DensityMatrix(const PureState& psi) : op_(psi.projector()) {}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const SubsystemDims dims = a.dims().concat(b.dims());
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return {dims, std::move(out)};
}

Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) {
    Matrix next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
    out = std::move(next);
  }
  return out;
}

Matrix partial_trace_matrix(const DenseOperator& op, PartyMask keep) {
  const SubsystemDims& dims = op.dims();
  dims.check_mask(keep);
  if (keep == dims.full_mask()) return op.matrix();
  const SplitIndex idx = split_index(dims, keep);
  // rows_by_traced[t][k] = global index with traced part t and kept part k
  std::vector<std::size_t> by_traced(dims.total());
  for (std::size_t i = 0; i < dims.total(); ++i) by_traced[idx.traced[i] * idx.kept_dim + idx.kept[i]] = i;

  const auto kd = static_cast<Eigen::Index>(idx.kept_dim);
  Matrix out = Matrix::Zero(kd, kd);
  const Matrix& m = op.matrix();
  for (std::size_t t = 0; t < idx.traced_dim; ++t) {
    const std::size_t* g = &by_traced[t * idx.kept_dim];
    for (Eigen::Index c = 0; c < kd; ++c) {
      const auto gc = static_cast<Eigen::Index>(g[c]);
      for (Eigen::Index r = 0; r < kd; ++r) out(r, c) += m(static_cast<Eigen::Index>(g[r]), gc);
    }
  }
  return out;
}

DenseOperator partial_trace(const DenseOperator& op, PartyMask keep) {
  if (keep.empty()) throw InvalidInput("partial_trace: keep mask must be nonempty (use trace())");
  return {op.dims().restrict(keep), partial_trace_matrix(op, keep)};
}

DenseOperator embed(const Matrix& op_s, PartyMask s, const SubsystemDims& dims) {
  dims.check_mask(s);
  const auto ks = static_cast<Eigen::Index>(dims.block_dim(s));
  if (op_s.rows() != ks || op_s.cols() != ks)
    throw InvalidInput("embed: operator side " + std::to_string(op_s.rows()) + " does not match block dimension " +
                       std::to_string(ks));
  const auto d = static_cast<Eigen::Index>(dims.total());
  if (s == dims.full_mask()) return {dims, op_s};
  if (s.empty()) return {dims, op_s(0, 0) * Matrix::Identity(d, d)};

  const SplitIndex idx = split_index(dims, s);
  std::vector<std::size_t> by_traced(dims.total());
  for (std::size_t i = 0; i < dims.total(); ++i) by_traced[idx.traced[i] * idx.kept_dim + idx.kept[i]] = i;
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t t = 0; t < idx.traced_dim; ++t) {
    const std::size_t* g = &by_traced[t * idx.kept_dim];
    for (Eigen::Index c = 0; c < ks; ++c)
      for (Eigen::Index r = 0; r < ks; ++r)
        out(static_cast<Eigen::Index>(g[r]), static_cast<Eigen::Index>(g[c])) = op_s(r, c);
  }
  return {dims, std::move(out)};
}

DenseOperator embed(const DenseOperator& op_s, PartyMask s, const SubsystemDims& dims) {
  if (s.empty() || !(op_s.dims() == dims.restrict(s)))
    throw InvalidInput("embed: operator dims " + op_s.dims().str() + " do not match parties " + s.party_list() +
                       " of " + dims.str());
  return embed(op_s.matrix(), s, dims);
}

Matrix conjugate_local(const Matrix& x, const SubsystemDims& dims, int party, const Matrix& left,
                       const Matrix& right) {
  const auto d = static_cast<Eigen::Index>(dims[party]);
  const auto s = static_cast<Eigen::Index>(dims.stride(party));
  const auto total = static_cast<Eigen::Index>(dims.total());
  const Eigen::Index outer = total / (d * s);
  Matrix tmp = Matrix::Zero(total, total);
  // tmp = (1 x L x 1) X
  for (Eigen::Index hi = 0; hi < outer; ++hi)
    for (Eigen::Index lo = 0; lo < s; ++lo) {
      const Eigen::Index base = hi * d * s + lo;
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
          const Complex l = left(a, b);
          if (l == Complex(0.0, 0.0)) continue;
          tmp.row(base + a * s) += l * x.row(base + b * s);
        }
    }
  Matrix out = Matrix::Zero(total, total);
  // out = tmp (1 x R x 1)
  for (Eigen::Index hi = 0; hi < outer; ++hi)
    for (Eigen::Index lo = 0; lo < s; ++lo) {
      const Eigen::Index base = hi * d * s + lo;
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
          const Complex r = right(a, b);
          if (r == Complex(0.0, 0.0)) continue;
          out.col(base + b * s) += r * tmp.col(base + a * s);
        }
    }
  return out;
}

Matrix apply_trace_factor(const Matrix& x, const SubsystemDims& dims, int party, double c_tr, double c_id) {
  const auto d = static_cast<Eigen::Index>(dims[party]);
  const auto s = static_cast<Eigen::Index>(dims.stride(party));
  const auto total = static_cast<Eigen::Index>(dims.total());
  const Eigen::Index outer = total / (d * s);
  Matrix out = c_id * x;
  if (c_tr == 0.0) return out;
  // Row/column offsets of the other parties: index = hi*d*s + digit*s + lo.
  std::vector<Eigen::Index> rest;
  rest.reserve(static_cast<std::size_t>(outer * s));
  for (Eigen::Index hi = 0; hi < outer; ++hi)
    for (Eigen::Index lo = 0; lo < s; ++lo) rest.push_back(hi * d * s + lo);
  for (Eigen::Index rb : rest)
    for (Eigen::Index cb : rest) {
      Complex acc(0.0, 0.0);
      for (Eigen::Index a = 0; a < d; ++a) acc += x(rb + a * s, cb + a * s);
      acc *= c_tr;
      for (Eigen::Index a = 0; a < d; ++a) out(rb + a * s, cb + a * s) += acc;
    }
  return out;
}

double purity(const DenseOperator& rho) {
  const Matrix& m = rho.matrix();
  return m.cwiseProduct(m.transpose()).sum().real();
}

std::vector<double> subsystem_purities(const DenseOperator& rho) {
  const int n = rho.dims().party_count();
  std::vector<double> out(std::size_t{1} << n, 0.0);
  const Complex tr = rho.trace();
  out[0] = std::norm(tr);
  for (std::uint32_t s = 1; s < out.size(); ++s) {
    const Matrix r = partial_trace_matrix(rho, PartyMask(s));
    out[s] = r.cwiseProduct(r.transpose()).sum().real();
  }
  return out;
}

LinearEntropyVector linear_entropies(const DenseOperator& rho) {
  const int n = rho.dims().party_count();
  std::vector<double> pur = subsystem_purities(rho);
  std::vector<double> tau(pur.size(), 0.0);
  for (std::size_t s = 1; s < pur.size(); ++s) tau[s] = 2.0 * (1.0 - pur[s]);
  return {n, std::move(tau)};
}

Eigen::VectorXd eigenvalues(const DenseOperator& h, double tol_herm) {
  const double defect = h.hermiticity_defect();
  if (defect > tol_herm) throw InvalidInput("eigenvalues: operator is not Hermitian (defect " + std::to_string(defect) + ")");
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues: solver did not converge");
  return solver.eigenvalues();
}

double min_eigenvalue(const DenseOperator& h, double tol_herm) { return eigenvalues(h, tol_herm).minCoeff(); }

}  // namespace tinv
