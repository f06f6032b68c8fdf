#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tvo/errors.hpp"
#include "tvo/fusion_system.hpp"

namespace tvo {

using nlohmann::json;

namespace {

json parse(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::SchemaError, origin + ": not valid JSON");
  if (!j.is_object())
    throw Error(ErrorKind::SchemaError, origin + ": top level must be an object");
  return j;
}

}  // namespace

FusionSystem fusion_system_from_json_text(const std::string& text,
                                          const std::string& origin) {
  json j = parse(text, origin);
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key))
      throw Error(ErrorKind::SchemaError,
                  origin + ": missing required key '" + key + "'");
    return j.at(key);
  };

  FusionSystem fs;
  try {
    fs.ring.name = need("name").get<std::string>();
    const int rank = need("rank").get<int>();
    const json& labels = need("labels");
    if (!labels.is_array() || static_cast<int>(labels.size()) != rank)
      throw Error(ErrorKind::SchemaError,
                  origin + ": 'labels' must list exactly 'rank' entries");
    fs.ring.labels.resize(rank);
    fs.ring.dual.resize(rank);
    for (int i = 0; i < rank; ++i) {
      fs.ring.labels[i] = labels[i].at("name").get<std::string>();
      fs.ring.dual[i] = labels[i].at("dual").get<int>();
      if (fs.ring.dual[i] < 0 || fs.ring.dual[i] >= rank)
        throw Error(ErrorKind::SchemaError,
                    origin + ": dual index out of range");
    }
    fs.ring.N.assign(
        rank, std::vector<std::vector<int>>(rank, std::vector<int>(rank, 0)));
    for (const auto& row : need("N")) {
      if (!row.is_array() || row.size() != 4)
        throw Error(ErrorKind::SchemaError,
                    origin + ": N rows must be [i,j,k,value]");
      int i = row[0].get<int>(), jj = row[1].get<int>(), k = row[2].get<int>();
      if (i < 0 || i >= rank || jj < 0 || jj >= rank || k < 0 || k >= rank)
        throw Error(ErrorKind::SchemaError, origin + ": N index out of range");
      fs.ring.N[i][jj][k] = row[3].get<int>();
    }
    if (j.contains("F"))
      for (const auto& row : j.at("F")) {
        if (!row.is_array() || row.size() != 12)
          throw Error(ErrorKind::SchemaError,
                      origin +
                          ": F rows must be "
                          "[i,j,k,l,m,alpha,beta,n,gamma,delta,re,im]");
        FKey key{row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                 row[3].get<int>(), row[4].get<int>(), row[5].get<int>(),
                 row[6].get<int>(), row[7].get<int>(), row[8].get<int>(),
                 row[9].get<int>()};
        fs.F[key] = cd(row[10].get<double>(), row[11].get<double>());
      }
    if (j.contains("tolerance")) fs.tolerance = j.at("tolerance").get<double>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaError, origin + ": " + e.what());
  }

  ValidationReport ring_rep = validate_fusion_ring(fs.ring);
  if (!ring_rep.ok()) {
    std::string bad;
    for (const auto& c : ring_rep.checks)
      if (!c.ok) bad += (bad.empty() ? "" : ", ") + c.name;
    throw Error(ErrorKind::SchemaError,
                origin + ": fusion ring invariants violated (" + bad + ")");
  }
  fs.dims = quantum_dims(fs.ring);
  if (j.contains("dims")) {
    const auto& dims = j.at("dims");
    if (!dims.is_array() || static_cast<int>(dims.size()) != fs.rank())
      throw Error(ErrorKind::SchemaError, origin + ": 'dims' has wrong length");
    for (int i = 0; i < fs.rank(); ++i)
      if (std::abs(dims[i].get<double>() - fs.d(i)) > 1e-6)
        throw Error(ErrorKind::SchemaError,
                    origin + ": declared dims disagree with the fusion ring");
  }
  return fs;
}

FusionSystem load_fusion_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::MissingFixture, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fusion_system_from_json_text(ss.str(), path);
}

std::string fusion_system_to_json_text(const FusionSystem& fs) {
  std::string out;
  out += "{\n  \"name\": " + json(fs.ring.name).dump() + ",\n";
  out += "  \"rank\": " + std::to_string(fs.rank()) + ",\n";
  out += "  \"labels\": [";
  for (int i = 0; i < fs.rank(); ++i) {
    if (i) out += ", ";
    out += "{\"name\": " + json(fs.ring.labels[i]).dump() +
           ", \"dual\": " + std::to_string(fs.dual(i)) + "}";
  }
  out += "],\n  \"dims\": [";
  for (int i = 0; i < fs.rank(); ++i) {
    if (i) out += ", ";
    out += fmt_double(fs.d(i));
  }
  out += "],\n  \"N\": [\n";
  bool first = true;
  for (int i = 0; i < fs.rank(); ++i)
    for (int jj = 0; jj < fs.rank(); ++jj)
      for (int k = 0; k < fs.rank(); ++k)
        if (fs.ring.n(i, jj, k) > 0) {
          if (!first) out += ",\n";
          first = false;
          out += "    [" + std::to_string(i) + ", " + std::to_string(jj) +
                 ", " + std::to_string(k) + ", " +
                 std::to_string(fs.ring.n(i, jj, k)) + "]";
        }
  out += "\n  ],\n  \"F\": [\n";
  first = true;
  for (const auto& [key, val] : fs.F) {
    if (!first) out += ",\n";
    first = false;
    out += "    [" + std::to_string(key.i) + ", " + std::to_string(key.j) +
           ", " + std::to_string(key.k) + ", " + std::to_string(key.l) + ", " +
           std::to_string(key.m) + ", " + std::to_string(key.a) + ", " +
           std::to_string(key.b) + ", " + std::to_string(key.n) + ", " +
           std::to_string(key.c) + ", " + std::to_string(key.d) + ", " +
           fmt_double(val.real()) + ", " + fmt_double(val.imag()) + "]";
  }
  out += "\n  ],\n  \"tolerance\": " + fmt_double(fs.tolerance) + "\n}\n";
  return out;
}

void save_fusion_system(const FusionSystem& fs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadInput, "cannot write " + path);
  out << fusion_system_to_json_text(fs);
}

}  // namespace tvo
