#include "tinv/cli.hpp"

#include "tinv/constraints.hpp"
#include "tinv/invariants.hpp"
#include "tinv/inversion.hpp"
#include "tinv/state_io.hpp"
#include "tinv/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tinv {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// One JSON object per line, fixed key order.
ordered_json report_line(const std::string& command, const std::string& family, const std::string& label,
                         double value, double threshold, double margin, const ordered_json& pass, double tolerance,
                         double elapsed_ms) {
  ordered_json j;
  j["command"] = command;
  j["family"] = family;
  j["label"] = label;
  j["value"] = value;
  j["threshold"] = threshold;
  j["margin"] = margin;
  j["pass"] = pass;
  j["tolerance"] = tolerance;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump() << '\n'; }

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("dims: '" + tok + "' is not an integer");
    }
  }
  return dims;
}

void apply_cap_override() {
  if (const char* env = std::getenv("TINV_DIMENSION_CAP")) {
    try {
      const long long cap = std::stoll(env);
      if (cap > 0) set_dimension_cap(static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
      // Unparsable values leave the default in place.
    }
  }
}

struct Options {
  std::string state;
  std::vector<std::string> families;
  double tol = kPassTolerance;
  std::string out_path;
  std::vector<std::string> masks;
  std::string act_on;
  std::string t;
  bool t_given = false;
  bool seed_given = false;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::string dims;
  int size = 100;
  std::uint64_t seed = 7;
  std::vector<std::string> suites;
  std::string kind;
  std::string s;
  int rank = 0;
  std::uint64_t stream = 0;
  std::string label;
};

int emit_report(std::ostream& out, const std::string& command, const ConstraintReport& r, double elapsed_ms) {
  const std::string fam = to_string(r.family);
  for (const auto& e : r.entries)
    emit(out, report_line(command, fam, e.label, e.value, e.threshold, e.margin,
                          e.theorem ? ordered_json(e.pass) : ordered_json(nullptr), r.tolerance, elapsed_ms));
  for (const auto& note : r.notes) {
    ordered_json j;
    j["command"] = command;
    j["family"] = fam;
    j["note"] = note;
    emit(out, j);
  }
  return r.theorems_pass() ? 0 : 1;
}

int cmd_check(const Options& o, std::ostream& out) {
  const StateFile file = read_state_file(o.state);
  const DensityMatrix rho = as_density(file.state);
  const int n = rho.dims().party_count();

  std::vector<Family> families;
  if (o.families.empty()) {
    families = {Family::correlation, Family::monogamy, Family::shadow, Family::entropy, Family::marginal};
  } else {
    for (const auto& f : o.families) families.push_back(parse_family(f));
  }
  auto requested = [&](Family f) { return std::find(families.begin(), families.end(), f) != families.end(); };

  int status = 0;
  for (Family f : families) {
    const auto start = Clock::now();
    ConstraintReport r;
    switch (f) {
      case Family::correlation:
        r = correlation_report(rho, o.tol);
        break;
      case Family::monogamy:
        if (!file.is_pure()) {
          ordered_json j;
          j["command"] = "check";
          j["family"] = "monogamy";
          j["warning"] = "state is mixed; monogamy downgraded to correlation constraints";
          emit(out, j);
          if (requested(Family::correlation)) continue;
          r = correlation_report(rho, o.tol);
        } else {
          r = monogamy_report(std::get<PureState>(file.state), o.tol);
        }
        break;
      case Family::shadow:
        r = shadow_report(rho, rho, o.tol);
        break;
      case Family::entropy:
        r = entropy_inequalities(rho, o.tol);
        break;
      case Family::marginal:
        if (n < 2) {
          r.family = Family::marginal;
          r.notes.push_back("marginal witnesses need at least two parties");
        } else {
          r = marginal_report(marginal_witnesses(rho), n, o.tol);
        }
        break;
    }
    status = std::max(status, emit_report(out, "check", r, ms_since(start)));
  }
  return status;
}

// A token of exactly n binary digits is a bitstring (party 1 leftmost), as printed
// in report labels; anything else is a 1-based party list.
PartyMask parse_mask_token(const std::string& text, int n) {
  if (static_cast<int>(text.size()) == n && text.find_first_not_of("01") == std::string::npos) {
    std::uint32_t bits = 0;
    for (int p = 0; p < n; ++p)
      if (text[static_cast<std::size_t>(p)] == '1') bits |= 1u << p;
    return PartyMask(bits);
  }
  return parse_party_list(text, n);
}

int cmd_invariants(const Options& o, std::ostream& out) {
  const StateFile file = read_state_file(o.state);
  const DensityMatrix rho = as_density(file.state);
  const int n = rho.dims().party_count();
  std::vector<PartyMask> masks;
  if (o.masks.empty() || (o.masks.size() == 1 && o.masks[0] == "all")) {
    for (std::uint32_t t = 0; t < (1u << n); ++t) masks.emplace_back(t);
  } else {
    for (const auto& m : o.masks) masks.push_back(parse_mask_token(m, n));
    std::sort(masks.begin(), masks.end());
  }
  for (PartyMask t : masks) {
    const auto start = Clock::now();
    const InvariantValue v = invariant(rho, t, o.tol);
    ordered_json j = report_line("invariants", "invariant", t.bitstring(n), v.squared, 0.0, v.squared,
                                 v.squared >= -o.tol, o.tol, ms_since(start));
    j["root"] = v.root();
    j["clamped"] = v.clamped;
    emit(out, j);
  }
  return 0;
}

// Per-party weights: one value broadcasts, otherwise one per party of `parties` in ascending order.
std::vector<double> spread_weights(const std::vector<double>& given, PartyMask parties, int n, const char* what) {
  std::vector<double> out(static_cast<std::size_t>(n), 1.0);
  if (given.empty()) return out;
  const int count = parties.count();
  if (given.size() != 1 && static_cast<int>(given.size()) != count)
    throw InvalidInput(std::string("detect: expected 1 or ") + std::to_string(count) + " " + what + " values, got " +
                       std::to_string(given.size()));
  int k = 0;
  for (int p = 0; p < n; ++p) {
    if (!parties.has(p)) continue;
    out[static_cast<std::size_t>(p)] = given.size() == 1 ? given[0] : given[static_cast<std::size_t>(k)];
    ++k;
  }
  for (double v : given)
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput(std::string("detect: ") + what + " values must lie in [0,1]");
  return out;
}

int cmd_detect(const Options& o, std::ostream& out) {
  const StateFile file = read_state_file(o.state);
  const DensityMatrix rho = as_density(file.state);
  const int n = rho.dims().party_count();
  const auto start = Clock::now();
  DetectionParams params;
  params.act_on = parse_party_list(o.act_on, n);
  params.t = o.t_given ? parse_party_list(o.t, n) : params.act_on;
  params.alpha = spread_weights(o.alpha, params.t, n, "alpha");
  params.beta = spread_weights(o.beta, params.act_on & params.t.complement(n), n, "beta");
  params.validate(n);
  const double lo = min_eigenvalue(apply_detection_map(rho, params));
  const bool detected = lo < -o.tol;
  ordered_json j = report_line("detect", "detection", "act_on=" + params.act_on.bitstring(n) + ";T=" + params.t.bitstring(n),
                               lo, -o.tol, lo + o.tol, !detected, o.tol, ms_since(start));
  j["verdict"] = detected ? "detected" : "inconclusive";
  emit(out, j);
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyConfig config;
  config.dims = SubsystemDims(parse_dims(o.dims));
  config.size = o.size;
  config.seed = o.seed;
  config.suites.insert(o.suites.begin(), o.suites.end());
  const auto start = Clock::now();
  const std::vector<SuiteResult> results = run_verification(config);
  int failed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    ordered_json j;
    if (r.skipped) {
      j["command"] = "verify";
      j["family"] = r.name;
      j["label"] = config.dims.str();
      j["skipped"] = r.note;
      emit(out, j);
      continue;
    }
    if (!r.pass) ++failed;
    worst_margin = std::min(worst_margin, r.margin());
    j = report_line("verify", r.name, config.dims.str(), r.value, r.threshold, r.margin(), r.pass, r.threshold,
                    r.elapsed_ms);
    if (!r.note.empty()) j["note"] = r.note;
    emit(out, j);
  }
  ordered_json summary = report_line("verify", "summary", config.dims.str(), failed, 0.0, -failed, failed == 0, 0.0,
                                     ms_since(start));
  summary["size"] = config.size;
  summary["seed"] = config.seed;
  summary["worst_margin"] = worst_margin;
  emit(out, summary);
  return failed == 0 ? 0 : 1;
}

int cmd_make_state(const Options& o, std::ostream& out) {
  StateRecipe recipe;
  recipe.kind = parse_state_kind(o.kind);
  recipe.dims = SubsystemDims(parse_dims(o.dims));
  if (!o.s.empty()) recipe.s = parse_party_list(o.s, recipe.dims.party_count());
  if (o.seed_given) recipe.seed = o.seed;
  if (o.rank != 0) recipe.rank = o.rank;
  recipe.stream = o.stream;
  const State state = build(recipe);
  const std::optional<std::string> label = o.label.empty() ? std::nullopt : std::optional<std::string>(o.label);
  if (o.out_path.empty()) {
    out << serialize_state(state, label);
  } else {
    write_state_file(o.out_path, state, label);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_cap_override();
  Options o;
  CLI::App app{"Generalized T-inversion toolkit for multipartite density matrices", "tinv"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Evaluate constraint families on a state file");
  check->add_option("--state", o.state, "State file")->required();
  check->add_option("--families", o.families, "correlation, monogamy, shadow, entropy, marginal")->delimiter(',');
  check->add_option("--tol", o.tol, "Pass tolerance");
  check->add_option("--out", o.out_path, "Write report lines to this file");

  auto* inv = app.add_subcommand("invariants", "Local-unitary invariants C_T^2 and C_T");
  inv->add_option("--state", o.state, "State file")->required();
  inv->add_option("--masks", o.masks, "'all', 1-based party lists (1,3) or bitstrings (101); repeatable");
  inv->add_option("--tol", o.tol, "Clamp tolerance");
  inv->add_option("--out", o.out_path, "Write report lines to this file");

  auto* det = app.add_subcommand("detect", "Entanglement detection with the weighted T-inversion map");
  det->add_option("--state", o.state, "State file")->required();
  det->add_option("--act-on", o.act_on, "Parties the map acts on, e.g. 2")->required();
  det->add_option("--t", o.t, "Parties carrying the minus sign (default: all of --act-on)");
  det->add_option("--alpha", o.alpha, "alpha weights for T parties (one value broadcasts)")->delimiter(',');
  det->add_option("--beta", o.beta, "beta weights for the other acted-on parties")->delimiter(',');
  det->add_option("--tol", o.tol, "Detection threshold");
  det->add_option("--out", o.out_path, "Write report lines to this file");

  auto* ver = app.add_subcommand("verify", "Run seeded property batteries");
  ver->add_option("--dims", o.dims, "Local dimensions, e.g. 2,2,2")->required();
  ver->add_option("--size", o.size, "Ensemble size");
  ver->add_option("--seed", o.seed, "Ensemble seed");
  ver->add_option("--suites", o.suites, "Subset of suites")->delimiter(',');
  ver->add_option("--out", o.out_path, "Write report lines to this file");

  auto* mk = app.add_subcommand("make-state", "Emit a state file for a named recipe");
  mk->add_option("--kind", o.kind, "ghz, bell_phi_plus, w, product_basis, rho_family_S, psi_family_S, rho_II, "
                                   "rho_III, haar_pure, ginibre_mixed")->required();
  mk->add_option("--dims", o.dims, "Local dimensions, e.g. 2,2,2")->required();
  mk->add_option("--s", o.s, "Party subset S, e.g. 2,3");
  mk->add_option("--seed", o.seed, "Seed for random recipes");
  mk->add_option("--stream", o.stream, "Ensemble member (RNG stream)");
  mk->add_option("--rank", o.rank, "Ginibre rank (default: full)");
  mk->add_option("--label", o.label, "Label stored in the file");
  mk->add_option("--out", o.out_path, "Output path (default: stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  o.t_given = det->count("--t") > 0;
  o.seed_given = mk->count("--seed") > 0;
  if (!(o.tol >= 0.0)) {
    err << "error: --tol must be a non-negative number\n";
    return 2;
  }

  std::ofstream file_out;
  std::ostream* sink = &out;
  if (!o.out_path.empty() && !mk->parsed()) {
    file_out.open(o.out_path);
    if (!file_out) {
      err << "error: cannot write '" << o.out_path << "'\n";
      return 2;
    }
    sink = &file_out;
  }

  try {
    if (check->parsed()) return cmd_check(o, *sink);
    if (inv->parsed()) return cmd_invariants(o, *sink);
    if (det->parsed()) return cmd_detect(o, *sink);
    if (ver->parsed()) return cmd_verify(o, *sink);
    if (mk->parsed()) return cmd_make_state(o, *sink);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tinv
