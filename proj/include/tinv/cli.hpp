#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tinv {

/// Entry point of the `tinv` tool. `args` excludes the program name.
/// Exit codes: 0 success / all theorem-backed checks pass, 1 a check failed,
/// 2 input error. The dimension cap may be overridden through the
/// TINV_DIMENSION_CAP environment variable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tinv
