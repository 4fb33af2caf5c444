#include "fudist/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fudist/errors.hpp"

namespace fudist {

using json = nlohmann::ordered_json;

std::string state_to_json(const BipartiteState& state) {
  json j;
  j["m"] = state.dim_a();
  j["n"] = state.dim_b();
  json entries = json::array();
  for (const auto& e : state.rho().entries()) entries.push_back(json::array({e.real(), e.imag()}));
  j["rho"] = std::move(entries);
  return j.dump();
}

BipartiteState state_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("state file: top level must be an object");
  for (const char* key : {"m", "n", "rho"})
    if (!j.contains(key)) throw FormatError(std::string("state file: missing key \"") + key + "\"");
  if (!j["m"].is_number_unsigned() || !j["n"].is_number_unsigned()) {
    throw FormatError("state file: \"m\" and \"n\" must be positive integers");
  }
  const auto m = j["m"].get<std::size_t>();
  const auto n = j["n"].get<std::size_t>();
  if (m == 0 || n == 0) throw FormatError("state file: \"m\" and \"n\" must be positive integers");
  const auto& rho = j["rho"];
  const std::size_t dim = m * n;
  if (!rho.is_array() || rho.size() != dim * dim) {
    throw FormatError("state file: \"rho\" must hold " + std::to_string(dim * dim) + " [re, im] pairs");
  }
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (const auto& e : rho) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("state file: every \"rho\" entry must be a [re, im] number pair");
    }
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return BipartiteState(ComplexMatrix(dim, dim, std::move(entries)), m, n);
}

void save_state(const BipartiteState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << state_to_json(state) << '\n';
}

BipartiteState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

}  // namespace fudist
