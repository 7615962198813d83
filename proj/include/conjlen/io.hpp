#pragma once

#include <string>
#include <string_view>

#include "conjlen/groups.hpp"

namespace conjlen {

// {"family": "bs"|"gamma_m"|"semidirect", "m": int, "matrix_m": [[int]],
//  "phi_gens": [[[int]]], "d": int (semidirect with no phi_gens),
//  "generator_names": [string]}
// Matrix entries may be JSON integers or decimal strings.
GroupConfig config_from_json(std::string_view text);
GroupConfig config_from_file(const std::string& path);
std::string config_to_json(const GroupConfig& cfg);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

std::string csv_quote(std::string_view field);

}  // namespace conjlen
