#pragma once

// State files: UTF-8 JSON objects
//   {"dims": [2,2], "kind": "pure"|"mixed", "label": "...",
//    "data": [[re,im], ...]            (pure, length D)
//            [[[re,im], ...], ...]      (mixed, D rows of D entries, row-major)}
// Doubles are written in shortest round-trip form.

#include "tinv/state_zoo.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace tinv {

struct StateFile {
  State state;
  std::optional<std::string> label;

  const SubsystemDims& dims() const;
  bool is_pure() const { return std::holds_alternative<PureState>(state); }
};

std::string serialize_state(const State& state, const std::optional<std::string>& label = std::nullopt);
/// Throws InvalidInput naming the first failing invariant.
StateFile parse_state(const std::string& text);
StateFile read_state_file(const std::string& path);
void write_state_file(const std::string& path, const State& state, const std::optional<std::string>& label = std::nullopt);

}  // namespace tinv
