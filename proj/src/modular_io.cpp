#include "tvo/modular_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tvo/errors.hpp"

namespace tvo {

// ordered_json keeps provenance keys in file order, so a load/save round
// trip is byte-stable.
using json = nlohmann::ordered_json;

std::string modular_data_to_json_text(const ModularData& md) {
  const int r = md.rank();
  std::string out;
  out += "{\n  \"name\": " + json(md.name).dump() + ",\n";
  out += "  \"rank\": " + std::to_string(r) + ",\n";
  out += "  \"labels\": [";
  for (int i = 0; i < r; ++i) {
    if (i) out += ", ";
    out += json(md.labels.at(i)).dump();
  }
  out += "],\n  \"lambda\": " + fmt_double(md.lambda) + ",\n";
  out += "  \"tolerance\": " + fmt_double(md.tolerance) + ",\n";
  out += "  \"S\": [\n";
  for (int i = 0; i < r; ++i) {
    out += "    [";
    for (int j = 0; j < r; ++j) {
      if (j) out += ", ";
      out += "[" + fmt_double(md.S(i, j).real()) + ", " +
             fmt_double(md.S(i, j).imag()) + "]";
    }
    out += i + 1 < r ? "],\n" : "]\n";
  }
  out += "  ],\n  \"t\": [";
  for (int i = 0; i < r; ++i) {
    if (i) out += ", ";
    out += "[" + fmt_double(md.t(i).real()) + ", " +
           fmt_double(md.t(i).imag()) + "]";
  }
  out += "],\n  \"provenance\": {";
  for (size_t i = 0; i < md.provenance.size(); ++i) {
    if (i) out += ", ";
    out += json(md.provenance[i].first).dump() + ": " +
           json(md.provenance[i].second).dump();
  }
  out += "}\n}\n";
  return out;
}

ModularData modular_data_from_json_text(const std::string& text,
                                        const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::SchemaError, origin + ": not valid JSON");
  if (!j.is_object())
    throw Error(ErrorKind::SchemaError,
                origin + ": top level must be an object");
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key))
      throw Error(ErrorKind::SchemaError,
                  origin + ": missing required key '" + key + "'");
    return j.at(key);
  };
  ModularData md;
  try {
    md.name = need("name").get<std::string>();
    const int r = need("rank").get<int>();
    if (r <= 0) throw Error(ErrorKind::SchemaError, origin + ": rank <= 0");
    const json& labels = need("labels");
    if (!labels.is_array() || static_cast<int>(labels.size()) != r)
      throw Error(ErrorKind::SchemaError,
                  origin + ": 'labels' must list exactly 'rank' entries");
    for (const auto& l : labels) md.labels.push_back(l.get<std::string>());
    md.lambda = need("lambda").get<double>();
    if (j.contains("tolerance"))
      md.tolerance = j.at("tolerance").get<double>();
    const json& S = need("S");
    if (!S.is_array() || static_cast<int>(S.size()) != r)
      throw Error(ErrorKind::SchemaError, origin + ": 'S' must have rank rows");
    md.S = Mat::Zero(r, r);
    for (int i = 0; i < r; ++i) {
      if (!S[i].is_array() || static_cast<int>(S[i].size()) != r)
        throw Error(ErrorKind::SchemaError,
                    origin + ": 'S' row " + std::to_string(i) +
                        " must have rank entries");
      for (int k = 0; k < r; ++k) {
        const json& e = S[i][k];
        if (!e.is_array() || e.size() != 2)
          throw Error(ErrorKind::SchemaError,
                      origin + ": S entries must be [re, im]");
        md.S(i, k) = cd(e[0].get<double>(), e[1].get<double>());
      }
    }
    const json& t = need("t");
    if (!t.is_array() || static_cast<int>(t.size()) != r)
      throw Error(ErrorKind::SchemaError,
                  origin + ": 't' must have rank entries");
    md.t = Vec::Zero(r);
    for (int i = 0; i < r; ++i) {
      const json& e = t[i];
      if (!e.is_array() || e.size() != 2)
        throw Error(ErrorKind::SchemaError,
                    origin + ": t entries must be [re, im]");
      md.t(i) = cd(e[0].get<double>(), e[1].get<double>());
    }
    if (j.contains("provenance")) {
      const json& prov = j.at("provenance");
      if (!prov.is_object())
        throw Error(ErrorKind::SchemaError,
                    origin + ": 'provenance' must be an object");
      for (const auto& [k, v] : prov.items())
        md.provenance.emplace_back(k, v.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaError, origin + ": " + e.what());
  }
  return md;
}

ModularData load_modular_data(const std::string& path, bool strict,
                              ValidationReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ModularData md = modular_data_from_json_text(ss.str(), path);
  ValidationReport rep = validate_verlinde_axioms(md);
  if (report) *report = rep;
  if (strict && !rep.ok()) {
    std::string bad;
    for (const auto& c : rep.checks)
      if (!c.ok) bad += (bad.empty() ? "" : ", ") + c.name;
    throw Error(ErrorKind::AxiomFailure,
                path + ": modular axioms violated (" + bad + ")");
  }
  return md;
}

void save_modular_data(const ModularData& md, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadInput, "cannot write " + path);
  out << modular_data_to_json_text(md);
}

}  // namespace tvo
