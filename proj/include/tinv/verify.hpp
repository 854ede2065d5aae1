#pragma once

// Seeded property batteries over random ensembles, shared by `tinv verify`.

#include "tinv/tensor_core.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace tinv {

struct VerifyConfig {
  SubsystemDims dims;
  int size = 100;
  std::uint64_t seed = 7;
  /// Empty means every suite.
  std::set<std::string> suites;
};

/// `value` is the worst observation; `pass` compares it against `threshold`
/// in the direction given by `upper_bound` (value <= threshold) or
/// lower bound (value >= threshold).
struct SuiteResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool upper_bound = true;
  bool pass = true;
  bool skipped = false;
  std::string note;
  double elapsed_ms = 0.0;

  double margin() const { return upper_bound ? threshold - value : value - threshold; }
};

const std::vector<std::string>& verify_suite_names();
std::vector<SuiteResult> run_verification(const VerifyConfig& config);

/// Ensemble member `i` under `seed`: stream i for mixed states; pure, product
/// and PSD-pair draws use disjoint stream ranges offset by multiples of 2^32.
DensityMatrix ensemble_mixed(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t i);
PureState ensemble_pure(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t i);

}  // namespace tinv
