#include "tvo/tables.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tvo/errors.hpp"
#include "tvo/exact_expr.hpp"
#include "tvo/surgery.hpp"

namespace tvo {

namespace {

using json = nlohmann::ordered_json;

void check_arity(const TableRow& row, const std::string& origin) {
  const size_t n = row.args.size();
  bool ok = false;
  if (row.op == "lens")
    ok = n == 2;
  else if (row.op == "chain")
    ok = n >= 1;
  else if (row.op == "star")
    ok = n >= 2;  // hub plus at least one leg
  else if (row.op == "brieskorn")
    ok = n == 3;
  else if (row.op == "s3" || row.op == "s2xs1")
    ok = n == 0;
  else
    throw Error(ErrorKind::SchemaError,
                origin + ": unknown op '" + row.op + "'");
  if (!ok)
    throw Error(ErrorKind::SchemaError,
                origin + ": op '" + row.op + "' got " + std::to_string(n) +
                    " arguments");
}

std::string row_presentation(const TableRow& row) {
  std::ostringstream os;
  os << row.op;
  if (!row.args.empty()) {
    os << "(";
    for (size_t i = 0; i < row.args.size(); ++i)
      os << (i ? "," : "") << row.args[i];
    os << ")";
  }
  return os.str();
}

}  // namespace

ComparisonTable comparison_table_from_json_text(const std::string& text,
                                                const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::SchemaError, origin + ": not valid JSON");
  ComparisonTable table;
  try {
    table.name = j.at("name").get<std::string>();
    if (j.contains("tolerance"))
      table.tolerance = j.at("tolerance").get<double>();
    if (j.contains("provenance"))
      for (const auto& [k, v] : j.at("provenance").items())
        table.provenance.emplace_back(k, v.get<std::string>());
    for (const json& r : j.at("rows")) {
      TableRow row;
      row.manifold = r.at("manifold").get<std::string>();
      row.op = r.at("op").get<std::string>();
      if (r.contains("args"))
        for (const json& a : r.at("args"))
          row.args.push_back(a.get<long long>());
      row.expected_text = r.at("value").get<std::string>();
      row.expected = evaluate_closed_form(row.expected_text);
      check_arity(row, origin);
      table.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaError, origin + ": " + e.what());
  }
  if (table.rows.empty())
    throw Error(ErrorKind::SchemaError, origin + ": table has no rows");
  return table;
}

ComparisonTable load_comparison_table(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw Error(ErrorKind::MissingFixture, path);
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::BadInput, "cannot read table file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return comparison_table_from_json_text(buf.str(), path);
}

cd evaluate_table_row(const ModularData& md, const TableRow& row) {
  if (row.op == "lens") return lens_invariant(md, row.args[0], row.args[1]);
  if (row.op == "chain") return chain_invariant(md, row.args);
  if (row.op == "star")
    return star_invariant(
        md, row.args[0],
        std::vector<long long>(row.args.begin() + 1, row.args.end()));
  if (row.op == "brieskorn")
    return brieskorn_invariant(md, row.args[0], row.args[1], row.args[2]);
  if (row.op == "s3") return s3_invariant(md);
  if (row.op == "s2xs1") return s2xs1_invariant(md);
  throw Error(ErrorKind::SchemaError, "unknown op '" + row.op + "'");
}

CompareResult compare_against_table(const ModularData& md,
                                    const ComparisonTable& table) {
  CompareResult res;
  res.table_name = table.name;
  res.data_name = md.name;
  res.tolerance = table.tolerance;

  std::vector<cd> direct;
  direct.reserve(table.rows.size());
  double max_direct = 0.0, max_conj = 0.0;
  for (const TableRow& row : table.rows) {
    const cd z = evaluate_table_row(md, row);
    direct.push_back(z);
    max_direct = std::max(max_direct, std::abs(z - row.expected));
    max_conj = std::max(max_conj, std::abs(std::conj(z) - row.expected));
  }
  res.conjugated = max_conj < max_direct;
  res.max_deviation = res.conjugated ? max_conj : max_direct;
  for (size_t k = 0; k < table.rows.size(); ++k) {
    RowComparison rc;
    rc.manifold = table.rows[k].manifold;
    rc.presentation = row_presentation(table.rows[k]);
    rc.computed = res.conjugated ? std::conj(direct[k]) : direct[k];
    rc.expected = table.rows[k].expected;
    rc.deviation = std::abs(rc.computed - rc.expected);
    res.rows.push_back(std::move(rc));
  }
  return res;
}

}  // namespace tvo
