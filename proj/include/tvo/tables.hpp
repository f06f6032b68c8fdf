#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tvo/modular_data.hpp"

namespace tvo {

// One row of a published-value table: a manifold name, the surgery operation
// that evaluates it, and the expected value kept as a closed-form expression
// string (parsed once at load).
struct TableRow {
  std::string manifold;
  std::string op;               // lens | chain | star | brieskorn | s3 | s2xs1
  std::vector<long long> args;  // lens p q; chain a1..an; star q p1..pr;
                                // brieskorn p q r; none for s3 / s2xs1
  std::string expected_text;
  cd expected = 0.0;
};

struct ComparisonTable {
  std::string name;
  double tolerance = 1e-8;
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<TableRow> rows;
};

// Parses {"name", "tolerance", "provenance": {...}, "rows": [{"manifold",
// "op", "args", "value"}, ...]}.  Throws Error(SchemaError) on malformed
// input (including unparseable value expressions and wrong op arity).
ComparisonTable comparison_table_from_json_text(const std::string& text,
                                                const std::string& origin);

// Loads a table file; throws Error(MissingFixture) when the file does not
// exist, so callers can report a skip instead of a failure.
ComparisonTable load_comparison_table(const std::string& path);

// Dispatches a row to the corresponding surgery evaluator.
cd evaluate_table_row(const ModularData& md, const TableRow& row);

struct RowComparison {
  std::string manifold;
  std::string presentation;
  cd computed;  // after applying the chosen orientation convention
  cd expected;
  double deviation = 0.0;
};

// Result of checking one table against one modular datum.  Externally
// sourced data may be globally conjugated relative to the table's source, so
// the comparison tries both orientations and keeps the one with the smaller
// maximum deviation, applied uniformly to every row.
struct CompareResult {
  std::string table_name;
  std::string data_name;
  bool conjugated = false;
  double max_deviation = 0.0;
  double tolerance = 1e-8;
  std::vector<RowComparison> rows;
  bool ok() const { return max_deviation <= tolerance; }
};

CompareResult compare_against_table(const ModularData& md,
                                    const ComparisonTable& table);

}  // namespace tvo
