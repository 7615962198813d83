#include "conjlen/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <json.hpp>

#include "conjlen/errors.hpp"

namespace conjlen {

using nlohmann::json;

namespace {

Int json_int(const json& v) {
  if (v.is_number_integer()) return Int(v.get<long>());
  if (v.is_string()) {
    Int r;
    if (r.set_str(v.get<std::string>(), 10) != 0) throw ConfigError("invalid integer string '" + v.get<std::string>() + "'");
    return r;
  }
  throw ConfigError("expected an integer, got " + v.dump());
}

IntMatrix json_matrix(const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("expected a nonempty matrix");
  const std::size_t rows = v.size();
  if (!v[0].is_array()) throw ConfigError("matrix rows must be arrays");
  const std::size_t cols = v[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw ConfigError("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = json_int(v[i][j]);
  }
  return m;
}

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

GroupConfig config_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_string())
    throw ConfigError("config needs a string \"family\"");
  const std::string family = doc["family"];
  GroupConfig cfg = [&] {
    if (family == "bs") {
      if (!doc.contains("m")) throw ConfigError("bs config needs \"m\"");
      const Int m = json_int(doc["m"]);
      if (!m.fits_slong_p()) throw ConfigError("m out of range");
      return GroupConfig::bs(m.get_si());
    }
    if (family == "gamma_m") {
      if (!doc.contains("matrix_m")) throw ConfigError("gamma_m config needs \"matrix_m\"");
      return GroupConfig::gamma_m(json_matrix(doc["matrix_m"]));
    }
    if (family == "semidirect") {
      std::vector<IntMatrix> phi;
      if (doc.contains("phi_gens")) {
        if (!doc["phi_gens"].is_array()) throw ConfigError("phi_gens must be an array");
        for (const auto& m : doc["phi_gens"]) phi.push_back(json_matrix(m));
      }
      std::size_t d = 0;
      if (doc.contains("d")) {
        if (!doc["d"].is_number_unsigned()) throw ConfigError("d must be a positive integer");
        d = doc["d"].get<std::size_t>();
      }
      return GroupConfig::semidirect(std::move(phi), d);
    }
    throw ConfigError("unknown family '" + family + "'");
  }();
  if (doc.contains("generator_names")) {
    if (!doc["generator_names"].is_array()) throw ConfigError("generator_names must be an array");
    std::vector<std::string> names;
    for (const auto& n : doc["generator_names"]) {
      if (!n.is_string()) throw ConfigError("generator names must be strings");
      names.push_back(n.get<std::string>());
    }
    cfg.set_generator_names(std::move(names));
  }
  return cfg;
}

GroupConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const GroupConfig& cfg) {
  json doc;
  doc["family"] = std::string(family_name(cfg.family()));
  switch (cfg.family()) {
    case Family::bs: doc["m"] = int_json(cfg.m()); break;
    case Family::gamma_m: doc["matrix_m"] = matrix_json(cfg.matrix_m()); break;
    case Family::semidirect: {
      json phis = json::array();
      for (const auto& m : cfg.phi_gens()) phis.push_back(matrix_json(m));
      doc["phi_gens"] = phis;
      if (cfg.phi_gens().empty()) doc["d"] = cfg.d();
      break;
    }
  }
  doc["generator_names"] = cfg.generator_names();
  return doc.dump();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error("write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace conjlen
