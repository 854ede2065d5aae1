#include "tinv/inversion.hpp"

#include "tinv/gellmann.hpp"

#include <cmath>

namespace tinv {

DenseOperator invert_sum(const DenseOperator& x, PartyMask t) {
  const SubsystemDims& dims = x.dims();
  dims.check_mask(t);
  const std::uint32_t subsets = 1u << dims.party_count();
  DenseOperator out = DenseOperator::identity(dims);
  out.matrix() *= parity_sign(PartyMask{}, t) * x.trace();
  for (std::uint32_t s = 1; s < subsets; ++s) {
    const PartyMask keep(s);
    DenseOperator term = embed(partial_trace_matrix(x, keep), keep, dims);
    out.matrix() += parity_sign(keep, t) * term.matrix();
  }
  return out;
}

DenseOperator invert_product(const DenseOperator& x, PartyMask t) {
  const SubsystemDims& dims = x.dims();
  dims.check_mask(t);
  Matrix m = x.matrix();
  for (int j = 0; j < dims.party_count(); ++j) m = apply_trace_factor(m, dims, j, 1.0, t.has(j) ? -1.0 : 1.0);
  return {dims, std::move(m)};
}

DenseOperator invert_kraus(const DenseOperator& x, PartyMask t) {
  const SubsystemDims& dims = x.dims();
  dims.check_mask(t);
  const double defect = x.hermiticity_defect();
  if (defect > 1e-10)
    throw InvalidInput("invert_kraus: input must be Hermitian (defect " + std::to_string(defect) + ")");
  Matrix m = x.matrix().conjugate();
  for (int j = 0; j < dims.party_count(); ++j) {
    const GellMannBasis& basis = gellmann_basis(dims[j]);
    const auto indices = t.has(j) ? basis.antisymmetric_indices() : basis.symmetric_indices();
    Matrix acc = Matrix::Zero(m.rows(), m.cols());
    for (int idx : indices) {
      const Matrix& h = basis.h[static_cast<std::size_t>(idx)];
      acc += conjugate_local(m, dims, j, h, h);
    }
    m = (2.0 / dims[j]) * acc;
  }
  return {dims, std::move(m)};
}

Grouping::Grouping(std::vector<PartyMask> blocks, int party_count) : blocks_(std::move(blocks)), n_(party_count) {
  if (blocks_.empty()) throw InvalidInput("grouping: no blocks");
  if (blocks_.size() > 31) throw InvalidInput("grouping: too many blocks");
  PartyMask seen;
  for (PartyMask b : blocks_) {
    if (b.empty()) throw InvalidInput("grouping: empty block");
    if (!b.fits(n_)) throw InvalidInput("grouping: block " + b.party_list() + " exceeds party count");
    if (!(b & seen).empty()) throw InvalidInput("grouping: blocks overlap at " + (b & seen).party_list());
    seen = seen | b;
  }
  if (seen != PartyMask::full(n_)) throw InvalidInput("grouping: blocks do not cover every party");
}

Grouping Grouping::singletons(int party_count) {
  std::vector<PartyMask> blocks;
  for (int j = 0; j < party_count; ++j) blocks.push_back(PartyMask::single(j));
  return Grouping(std::move(blocks), party_count);
}

PartyMask Grouping::expand(PartyMask coarse) const {
  PartyMask out;
  for (int b = 0; b < block_count(); ++b)
    if (coarse.has(b)) out = out | blocks_[static_cast<std::size_t>(b)];
  return out;
}

DenseOperator coarse_grain_invert(const DenseOperator& x, const Grouping& grouping, PartyMask t_coarse) {
  const SubsystemDims& dims = x.dims();
  if (grouping.party_count() != dims.party_count())
    throw InvalidInput("coarse_grain_invert: grouping covers " + std::to_string(grouping.party_count()) +
                       " parties, operator has " + std::to_string(dims.party_count()));
  if (!t_coarse.fits(grouping.block_count()))
    throw InvalidInput("coarse_grain_invert: coarse mask references a missing block");

  const int n = dims.party_count();
  DenseOperator out(dims, Matrix::Zero(static_cast<Eigen::Index>(dims.total()), static_cast<Eigen::Index>(dims.total())));
  for (std::uint32_t tb = 0; tb < (1u << n); ++tb) {
    const PartyMask t(tb);
    bool match = true;
    for (int b = 0; b < grouping.block_count() && match; ++b) {
      const int want = t_coarse.has(b) ? 1 : 0;
      match = ((t & grouping.blocks()[static_cast<std::size_t>(b)]).count() % 2) == want;
    }
    if (match) out += invert_sum(x, t);
  }
  out.matrix() *= std::ldexp(1.0, -(n - grouping.block_count()));
  return out;
}

DetectionParams DetectionParams::reduction(int party_count, PartyMask act_on, PartyMask t) {
  return {t, act_on, std::vector<double>(static_cast<std::size_t>(party_count), 1.0),
          std::vector<double>(static_cast<std::size_t>(party_count), 1.0)};
}

void DetectionParams::validate(int party_count) const {
  if (!act_on.fits(party_count)) throw InvalidInput("detection: act_on references missing parties");
  if (!t.subset_of(act_on)) throw InvalidInput("detection: T must be a subset of act_on");
  if (alpha.size() != static_cast<std::size_t>(party_count) || beta.size() != static_cast<std::size_t>(party_count))
    throw InvalidInput("detection: alpha and beta need one entry per party");
  for (int j = 0; j < party_count; ++j) {
    const double a = alpha[static_cast<std::size_t>(j)];
    const double b = beta[static_cast<std::size_t>(j)];
    if (t.has(j) && !(a >= 0.0 && a <= 1.0))
      throw InvalidInput("detection: alpha for party " + std::to_string(j + 1) + " outside [0,1]");
    if (act_on.has(j) && !t.has(j) && !(b >= 0.0 && b <= 1.0))
      throw InvalidInput("detection: beta for party " + std::to_string(j + 1) + " outside [0,1]");
  }
}

DenseOperator apply_detection_map(const DenseOperator& x, const DetectionParams& params) {
  const SubsystemDims& dims = x.dims();
  params.validate(dims.party_count());
  Matrix m = x.matrix();
  for (int j = 0; j < dims.party_count(); ++j) {
    if (!params.act_on.has(j)) continue;
    const double c_id = params.t.has(j) ? -params.alpha[static_cast<std::size_t>(j)]
                                        : params.beta[static_cast<std::size_t>(j)];
    m = apply_trace_factor(m, dims, j, 1.0, c_id);
  }
  return {dims, std::move(m)};
}

DenseOperator choi_matrix(MapKind kind, const SubsystemDims& dims, const DetectionParams& params) {
  const std::size_t d = dims.total();
  if (d * d > dimension_cap())
    throw DimensionCapExceeded("choi_matrix: side " + std::to_string(d * d) + " exceeds cap " +
                               std::to_string(dimension_cap()));
  dims.check_mask(params.t);
  const SubsystemDims big = dims.concat(dims);
  const auto di = static_cast<Eigen::Index>(d);
  Matrix out = Matrix::Zero(di * di, di * di);
  for (Eigen::Index i = 0; i < di; ++i)
    for (Eigen::Index j = 0; j < di; ++j) {
      Matrix unit = Matrix::Zero(di, di);
      unit(i, j) = 1.0;
      const DenseOperator e(dims, unit);
      DenseOperator image;
      switch (kind) {
        case MapKind::t_inversion_after_transpose: image = invert_sum(e.transpose(), params.t); break;
        case MapKind::t_inversion: image = invert_sum(e, params.t); break;
        case MapKind::detection: image = apply_detection_map(e, params); break;
      }
      out.block(i * di, j * di, di, di) = image.matrix();
    }
  return {big, std::move(out)};
}

}  // namespace tinv
