#include "tinv/state_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tinv {

using nlohmann::ordered_json;

namespace {

ordered_json encode(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

Complex decode(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput("state file: " + where + " is not an [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

const SubsystemDims& StateFile::dims() const {
  return std::visit([](const auto& s) -> const SubsystemDims& { return s.dims(); }, state);
}

std::string serialize_state(const State& state, const std::optional<std::string>& label) {
  ordered_json j;
  const SubsystemDims& dims = std::visit([](const auto& s) -> const SubsystemDims& { return s.dims(); }, state);
  j["dims"] = dims.values();
  if (const auto* p = std::get_if<PureState>(&state)) {
    j["kind"] = "pure";
    ordered_json data = ordered_json::array();
    for (Eigen::Index i = 0; i < p->amplitudes().size(); ++i) data.push_back(encode(p->amplitudes()(i)));
    j["data"] = std::move(data);
  } else {
    const Matrix& m = std::get<DensityMatrix>(state).matrix();
    j["kind"] = "mixed";
    ordered_json data = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode(m(r, c)));
      data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
  }
  if (label) j["label"] = *label;
  return j.dump() + "\n";
}

StateFile parse_state(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("state file: malformed JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw InvalidInput("state file: top level must be an object");
  if (!j.contains("dims") || !j["dims"].is_array()) throw InvalidInput("state file: missing 'dims' array");
  std::vector<int> dv;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer()) throw InvalidInput("state file: 'dims' entries must be integers");
    dv.push_back(d.get<int>());
  }
  const SubsystemDims dims(dv);
  if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidInput("state file: missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (!j.contains("data") || !j["data"].is_array()) throw InvalidInput("state file: missing 'data' array");
  const ordered_json& data = j["data"];
  const auto d = static_cast<Eigen::Index>(dims.total());

  StateFile out;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InvalidInput("state file: 'label' must be a string");
    out.label = j["label"].get<std::string>();
  }
  if (kind == "pure") {
    if (static_cast<Eigen::Index>(data.size()) != d)
      throw InvalidInput("state file: pure data has " + std::to_string(data.size()) + " entries, expected " +
                         std::to_string(d));
    Vector psi(d);
    for (Eigen::Index i = 0; i < d; ++i) psi(i) = decode(data[static_cast<std::size_t>(i)], "data[" + std::to_string(i) + "]");
    out.state = PureState(dims, psi);
  } else if (kind == "mixed") {
    if (static_cast<Eigen::Index>(data.size()) != d)
      throw InvalidInput("state file: mixed data has " + std::to_string(data.size()) + " rows, expected " +
                         std::to_string(d));
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& row = data[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
        throw InvalidInput("state file: row " + std::to_string(r) + " does not have " + std::to_string(d) + " entries");
      for (Eigen::Index c = 0; c < d; ++c)
        m(r, c) = decode(row[static_cast<std::size_t>(c)], "data[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    out.state = DensityMatrix(DenseOperator(dims, std::move(m)));
  } else {
    throw InvalidInput("state file: kind must be 'pure' or 'mixed', got '" + kind + "'");
  }
  return out;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("state file: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

void write_state_file(const std::string& path, const State& state, const std::optional<std::string>& label) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << serialize_state(state, label);
}

}  // namespace tinv
