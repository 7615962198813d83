#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conjlen/groups.hpp"

namespace conjlen {

struct GroupConfig::Impl {
  Family family = Family::bs;
  std::size_t d = 0;
  Int m;
  IntMatrix matrix_m;
  std::vector<IntMatrix> phi;
  Spectral spectral;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, int>> aliases;

  // M^0 .. M^64 and the Smith data used for exact division by M.
  std::vector<IntMatrix> m_pows;
  IntMatrix m_snf_u;
  IntMatrix m_snf_v;
  IntVector m_snf_diag;
  // phi_pows[i][64 + e] = phi_i^e for |e| <= 64.
  std::vector<std::vector<IntMatrix>> phi_pows;

  void build_m_data();
  void build_phi_data();
};

}  // namespace conjlen
