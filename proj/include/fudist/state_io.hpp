#pragma once

#include <filesystem>
#include <string>

#include "fudist/states.hpp"

namespace fudist {

// State files are JSON objects {"m": M, "n": N, "rho": [[re, im], ...]} with
// rho flattened row-major. Keys are written in that order and doubles use a
// round-trip exact representation.

std::string state_to_json(const BipartiteState& state);

/// Throws FormatError on malformed JSON or wrong shapes, InvariantError when the
/// matrix is not a valid density matrix.
BipartiteState state_from_json(const std::string& text);

void save_state(const BipartiteState& state, const std::filesystem::path& path);
BipartiteState load_state(const std::filesystem::path& path);

}  // namespace fudist
