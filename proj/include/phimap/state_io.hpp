#pragma once

// State files: {"dims": [d1, d2], "re": [[...]], "im": [[...]]}, numbers
// written with 17 significant digits so doubles round-trip exactly.

#include <filesystem>
#include <string>

#include "phimap/criteria.hpp"
#include "phimap/linalg.hpp"

namespace phimap {

std::string serialize_state(const ComplexMatrix& m, Dims dims);

/// Throws InvalidInput on malformed JSON, wrong shapes, or a matrix that is
/// not a valid density state.
DensityState parse_state(const std::string& text);

void write_state_file(const std::filesystem::path& path, const ComplexMatrix& m, Dims dims);
DensityState read_state_file(const std::filesystem::path& path);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace phimap
