#include "tvo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvo/errors.hpp"
#include "tvo/modular_from_tube.hpp"
#include "tvo/modular_io.hpp"
#include "tvo/surgery.hpp"
#include "tvo/tables.hpp"
#include "tvo/tube_algebra.hpp"

namespace tvo {

namespace {

std::string fmt_complex_pair(cd z) {
  return "[" + fmt_double(z.real()) + ", " + fmt_double(z.imag()) + "]";
}

// Markdown cells round to six significant digits for readability.
std::string fmt_complex_short(cd z) {
  char buf[64];
  if (std::abs(z.imag()) < 1e-12) {
    std::snprintf(buf, sizeof buf, "%.6g", z.real() + 0.0);
    return buf;
  }
  std::string out;
  std::snprintf(buf, sizeof buf, "%.6g", z.real() + 0.0);
  out = buf;
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(z.imag()));
  out += (z.imag() < 0 ? " - " : " + ") + std::string(buf) + "i";
  return out;
}

std::string read_stream_or_file(const std::string& arg, std::string* origin) {
  std::ostringstream buf;
  if (arg.empty() || arg == "-") {
    *origin = "<stdin>";
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorKind::BadInput, "cannot read " + arg);
    *origin = arg;
    buf << in.rdbuf();
  }
  return buf.str();
}

struct DataOptions {
  std::string path;  // empty or "-" reads stdin
  bool conjugate = false;
  bool strict = false;
  double tol = 1e-9;
  bool tol_set = false;
};

ModularData load_data(const DataOptions& opt) {
  std::string origin;
  const std::string text = read_stream_or_file(opt.path, &origin);
  ModularData md = modular_data_from_json_text(text, origin);
  if (opt.tol_set) md.tolerance = opt.tol;
  const ValidationReport rep = validate_verlinde_axioms(md);
  if (!rep.ok()) {
    std::ostringstream what;
    what << origin << " fails modular axioms:";
    for (const auto& c : rep.checks)
      if (!c.ok) what << " " << c.name << " (residual " << c.residual << ")";
    if (opt.strict) throw Error(ErrorKind::AxiomFailure, what.str());
    std::cerr << "warning: " << what.str() << "\n";
  }
  if (opt.conjugate) md = conjugate_data(md);
  return md;
}

void print_report(std::ostream& os, const ValidationReport& rep) {
  for (const auto& c : rep.checks) {
    os << "check " << c.name << ": " << (c.ok ? "ok" : "FAIL")
       << " (residual " << fmt_double(c.residual) << ")";
    if (!c.detail.empty()) os << " " << c.detail;
    os << "\n";
  }
}

// Integer list specs: "N", "A..B", or "A,B,C".
std::vector<long long> parse_int_spec(const std::string& spec) {
  std::vector<long long> out;
  const auto parse_one = [&](const std::string& s) {
    size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size())
      throw Error(ErrorKind::Usage, "bad integer '" + s + "' in '" + spec + "'");
    return v;
  };
  if (const size_t dots = spec.find(".."); dots != std::string::npos) {
    const long long lo = parse_one(spec.substr(0, dots));
    const long long hi = parse_one(spec.substr(dots + 2));
    if (hi < lo) throw Error(ErrorKind::Usage, "empty range '" + spec + "'");
    for (long long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_one(item));
  if (out.empty()) throw Error(ErrorKind::Usage, "empty spec '" + spec + "'");
  return out;
}

struct InvariantRecord {
  std::string data;
  std::string manifold;
  std::string presentation;
  bool conjugated = false;
  cd value;
};

void print_invariant(std::ostream& os, const InvariantRecord& rec,
                     const std::string& format) {
  const char* convention = rec.conjugated ? "conjugated" : "as-is";
  if (format == "json") {
    os << "{\n"
       << "  \"kind\": \"invariant\",\n"
       << "  \"data\": \"" << rec.data << "\",\n"
       << "  \"manifold\": \"" << rec.manifold << "\",\n"
       << "  \"presentation\": \"" << rec.presentation << "\",\n"
       << "  \"convention\": \"" << convention << "\",\n"
       << "  \"value\": " << fmt_complex_pair(rec.value) << "\n}\n";
  } else if (format == "csv") {
    os << "data,manifold,presentation,convention,re,im\n"
       << rec.data << "," << rec.manifold << "," << rec.presentation << ","
       << convention << "," << fmt_double(rec.value.real()) << ","
       << fmt_double(rec.value.imag()) << "\n";
  } else {
    os << "| manifold | presentation | value |\n|---|---|---|\n| "
       << rec.manifold << " | " << rec.presentation << " | "
       << fmt_complex_short(rec.value) << " |\n";
  }
}

std::string lens_presentation_text(long long p, long long q) {
  if (p == 1) return SurgeryPresentation::chain({1}).text();
  if (p == 0) return SurgeryPresentation::chain({0}).text();
  return SurgeryPresentation::chain(continued_fraction(p, q)).text();
}

int cmd_validate_system(const std::string& file, double tol, bool tol_set) {
  FusionSystem fs = load_fusion_system(file);
  if (tol_set) fs.tolerance = tol;
  std::ostringstream os;
  os << "system: " << fs.name() << "\n";
  os << "rank: " << fs.rank() << "\n";
  os << "lambda: " << fmt_double(fs.lambda()) << "\n";
  const ValidationReport rep = validate_pentagon(fs);
  print_report(os, rep);
  os << "result: " << (rep.ok() ? "valid" : "invalid") << "\n";
  std::cout << os.str();
  return rep.ok() ? 0 : 1;
}

int cmd_validate_modular(const DataOptions& opt) {
  std::string origin;
  const std::string text = read_stream_or_file(opt.path, &origin);
  ModularData md = modular_data_from_json_text(text, origin);
  if (opt.tol_set) md.tolerance = opt.tol;
  if (opt.conjugate) md = conjugate_data(md);
  std::ostringstream os;
  os << "data: " << md.name << "\n";
  os << "rank: " << md.rank() << "\n";
  os << "lambda: " << fmt_double(md.lambda) << "\n";
  os << "tolerance: " << fmt_double(md.tolerance) << "\n";
  const ValidationReport rep = validate_verlinde_axioms(md);
  print_report(os, rep);
  os << "result: " << (rep.ok() ? "valid" : "invalid") << "\n";
  std::cout << os.str();
  return rep.ok() ? 0 : 1;
}

int cmd_derive_modular(const std::string& file, const std::string& out,
                       unsigned long long seed, bool dump_tube) {
  const FusionSystem fs = load_fusion_system(file);
  TubeAlgebra tube(fs);
  if (dump_tube) {
    std::ostringstream os;
    os << "tube dimension: " << tube.dim() << "\n";
    os << "basis (xi, zeta, eta, p, b1, b2):\n";
    for (int k = 0; k < tube.dim(); ++k) {
      const TubeBasisElement& e = tube.basis_element(k);
      os << "  " << k << ": (" << fs.ring.labels[e.xi] << ", "
         << fs.ring.labels[e.zeta] << ", " << fs.ring.labels[e.eta] << ", "
         << fs.ring.labels[e.p] << ", " << e.b1 << ", " << e.b2 << ")\n";
    }
    long long nonzero = 0;
    for (int x = 0; x < tube.dim(); ++x)
      for (int y = 0; y < tube.dim(); ++y)
        nonzero += static_cast<long long>(tube.product(x, y).size());
    os << "structure constants: " << nonzero << " nonzero of "
       << (static_cast<long long>(tube.dim()) * tube.dim() * tube.dim())
       << "\n";
    std::cerr << os.str();
  }
  const CenterData center = compute_center(tube, seed);
  const ModularData md = modular_data_from_tube(tube, center);
  const std::string text = modular_data_to_json_text(md);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(out, std::ios::binary);
    if (!o) throw Error(ErrorKind::BadInput, "cannot write " + out);
    o << text;
  }
  return 0;
}

int cmd_invariant(const std::string& kind, const std::vector<long long>& args,
                  const DataOptions& opt, const std::string& format) {
  const ModularData md = load_data(opt);
  InvariantRecord rec;
  rec.data = md.name;
  rec.conjugated = opt.conjugate;
  if (kind == "lens") {
    if (args.size() != 2)
      throw Error(ErrorKind::Usage, "invariant lens needs P Q");
    rec.manifold =
        "L(" + std::to_string(args[0]) + "," + std::to_string(args[1]) + ")";
    rec.presentation = lens_presentation_text(args[0], args[1]);
    rec.value = lens_invariant(md, args[0], args[1]);
  } else if (kind == "brieskorn") {
    if (args.size() != 3)
      throw Error(ErrorKind::Usage, "invariant brieskorn needs P Q R");
    rec.manifold = "Sigma(" + std::to_string(args[0]) + "," +
                   std::to_string(args[1]) + "," + std::to_string(args[2]) +
                   ")";
    rec.presentation =
        SurgeryPresentation::star(1, {args[0], args[1], args[2]}).text();
    rec.value = brieskorn_invariant(md, args[0], args[1], args[2]);
  } else if (kind == "star") {
    if (args.size() < 2)
      throw Error(ErrorKind::Usage, "invariant star needs Q P1..PR");
    const std::vector<long long> legs(args.begin() + 1, args.end());
    const SurgeryPresentation p = SurgeryPresentation::star(args[0], legs);
    rec.manifold = p.text();
    rec.presentation = p.text();
    rec.value = star_invariant(md, args[0], legs);
  } else if (kind == "chain") {
    if (args.empty())
      throw Error(ErrorKind::Usage, "invariant chain needs A1..AN");
    const SurgeryPresentation p = SurgeryPresentation::chain(args);
    rec.manifold = p.text();
    rec.presentation = p.text();
    rec.value = chain_invariant(md, args);
  } else if (kind == "s3") {
    if (!args.empty()) throw Error(ErrorKind::Usage, "s3 takes no arguments");
    rec.manifold = "S^3";
    rec.presentation = "chain[1]";
    rec.value = s3_invariant(md);
  } else if (kind == "s2xs1") {
    if (!args.empty())
      throw Error(ErrorKind::Usage, "s2xs1 takes no arguments");
    rec.manifold = "S^2 x S^1";
    rec.presentation = "chain[0]";
    rec.value = s2xs1_invariant(md);
  } else {
    throw Error(ErrorKind::Usage,
                "unknown invariant kind '" + kind +
                    "' (expected lens | brieskorn | star | chain | s3 | s2xs1)");
  }
  std::ostringstream os;
  print_invariant(os, rec, format);
  std::cout << os.str();
  return 0;
}

int cmd_table_lens(const std::string& p_spec, const std::string& q_spec,
                   const DataOptions& opt, const std::string& format) {
  const ModularData md = load_data(opt);
  const std::vector<long long> ps = parse_int_spec(p_spec);
  struct Row {
    long long p, q;
    cd value;
  };
  std::vector<Row> rows;
  for (long long p : ps) {
    std::vector<long long> qs;
    if (q_spec == "all") {
      if (p <= 1)
        qs = {1};
      else
        for (long long q = 1; q < p; ++q)
          if (std::gcd(p, q) == 1) qs.push_back(q);
    } else {
      for (long long q : parse_int_spec(q_spec)) {
        const bool valid =
            p <= 1 ? q == 1 : (q >= 1 && q < p && std::gcd(p, q) == 1);
        if (valid) qs.push_back(q);
      }
    }
    for (long long q : qs) rows.push_back({p, q, lens_invariant(md, p, q)});
  }
  const char* convention = opt.conjugate ? "conjugated" : "as-is";
  std::ostringstream os;
  if (format == "json") {
    os << "{\n  \"kind\": \"lens-table\",\n  \"data\": \"" << md.name
       << "\",\n  \"convention\": \"" << convention << "\",\n  \"rows\": [\n";
    for (size_t k = 0; k < rows.size(); ++k) {
      const Row& r = rows[k];
      os << "    {\"manifold\": \"L(" << r.p << "," << r.q << ")\", \"p\": "
         << r.p << ", \"q\": " << r.q
         << ", \"value\": " << fmt_complex_pair(r.value) << "}"
         << (k + 1 < rows.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
  } else if (format == "csv") {
    os << "manifold,p,q,re,im\n";
    for (const Row& r : rows)
      os << "L(" << r.p << "," << r.q << ")," << r.p << "," << r.q << ","
         << fmt_double(r.value.real()) << "," << fmt_double(r.value.imag())
         << "\n";
  } else {
    os << "| manifold | value |\n|---|---|\n";
    for (const Row& r : rows)
      os << "| L(" << r.p << "," << r.q << ") | " << fmt_complex_short(r.value)
         << " |\n";
  }
  std::cout << os.str();
  return 0;
}

std::string resolve_fixture(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) return arg;
  if (fs::exists(arg + ".json")) return arg + ".json";
  const std::string under_tables = "data/tables/" + arg + ".json";
  if (fs::exists(under_tables)) return under_tables;
  throw Error(ErrorKind::MissingFixture, arg);
}

int cmd_compare(const DataOptions& opt, const std::string& fixture,
                const std::string& format) {
  const ModularData md = load_data(opt);
  ComparisonTable table = load_comparison_table(resolve_fixture(fixture));
  if (opt.tol_set) table.tolerance = opt.tol;
  const CompareResult res = compare_against_table(md, table);
  const char* convention = res.conjugated ? "conjugated" : "as-is";
  std::ostringstream os;
  if (format == "json") {
    os << "{\n  \"kind\": \"compare\",\n  \"table\": \"" << res.table_name
       << "\",\n  \"data\": \"" << res.data_name << "\",\n  \"convention\": \""
       << convention << "\",\n  \"tolerance\": " << fmt_double(res.tolerance)
       << ",\n  \"max_deviation\": " << fmt_double(res.max_deviation)
       << ",\n  \"ok\": " << (res.ok() ? "true" : "false")
       << ",\n  \"rows\": [\n";
    for (size_t k = 0; k < res.rows.size(); ++k) {
      const RowComparison& r = res.rows[k];
      os << "    {\"manifold\": \"" << r.manifold << "\", \"presentation\": \""
         << r.presentation
         << "\", \"computed\": " << fmt_complex_pair(r.computed)
         << ", \"expected\": " << fmt_complex_pair(r.expected)
         << ", \"deviation\": " << fmt_double(r.deviation) << "}"
         << (k + 1 < res.rows.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
  } else if (format == "csv") {
    os << "manifold,presentation,computed_re,computed_im,expected_re,"
          "expected_im,deviation\n";
    for (const RowComparison& r : res.rows)
      os << r.manifold << "," << r.presentation << ","
         << fmt_double(r.computed.real()) << "," << fmt_double(r.computed.imag())
         << "," << fmt_double(r.expected.real()) << ","
         << fmt_double(r.expected.imag()) << "," << fmt_double(r.deviation)
         << "\n";
  } else {
    os << "| manifold | computed | expected | deviation |\n|---|---|---|---|\n";
    for (const RowComparison& r : res.rows)
      os << "| " << r.manifold << " | " << fmt_complex_short(r.computed)
         << " | " << fmt_complex_short(r.expected) << " | "
         << fmt_double(r.deviation) << " |\n";
    os << "\nconvention: " << convention
       << "; max deviation: " << fmt_double(res.max_deviation) << "; "
       << (res.ok() ? "ok" : "EXCEEDS TOLERANCE") << "\n";
  }
  std::cout << os.str();
  return res.ok() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Turaev-Viro-Ocneanu invariants: derive modular data from fusion-system "
      "F-symbols via the tube algebra, and evaluate surgery presentations."};
  app.require_subcommand(1);
  app.fallthrough(false);

  double tol = 1e-9;
  bool tol_set = false;
  app.add_option("--tol", tol, "Tolerance override for validation checks")
      ->each([&](const std::string&) { tol_set = true; });

  // validate-system -----------------------------------------------------
  std::string vs_file;
  CLI::App* vs = app.add_subcommand(
      "validate-system", "Check F-symbol coherence of a fusion-system file");
  vs->add_option("file", vs_file, "fusion-system JSON file")->required();

  // validate-modular ----------------------------------------------------
  DataOptions vm_opt;
  CLI::App* vm = app.add_subcommand(
      "validate-modular", "Check the Verlinde axioms of a modular-data file");
  vm->add_option("file", vm_opt.path, "modular-data JSON file ('-' = stdin)")
      ->required();
  vm->add_flag("--conjugate", vm_opt.conjugate,
               "validate the conjugated data");

  // derive-modular ------------------------------------------------------
  std::string dm_file, dm_out;
  unsigned long long dm_seed = 17;
  bool dm_dump = false;
  CLI::App* dm = app.add_subcommand(
      "derive-modular",
      "Derive modular data from a fusion system via its tube algebra");
  dm->add_option("file", dm_file, "fusion-system JSON file")->required();
  dm->add_option("-o,--output", dm_out,
                 "output file (default: write to stdout)");
  dm->add_option("--seed", dm_seed,
                 "seed for the central-idempotent splitting");
  dm->add_flag("--dump-tube", dm_dump,
               "print the tube basis and structure-constant sparsity to "
               "stderr");

  // invariant -----------------------------------------------------------
  DataOptions inv_opt;
  std::string inv_kind, inv_format = "json";
  std::vector<long long> inv_args;
  CLI::App* inv = app.add_subcommand(
      "invariant",
      "Evaluate one surgery presentation (use '--' before negative framings)");
  inv->add_option("kind", inv_kind, "lens | brieskorn | star | chain | s3 | "
                                    "s2xs1")
      ->required();
  inv->add_option("args", inv_args, "integer arguments of the presentation");
  inv->add_option("--data", inv_opt.path,
                  "modular-data JSON file ('-' or absent = stdin)");
  inv->add_flag("--conjugate", inv_opt.conjugate,
                "evaluate on the conjugated data");
  inv->add_flag("--strict", inv_opt.strict,
                "fail instead of warning when the data violates the axioms");
  inv->add_option("--format", inv_format, "json | csv | markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));

  // table ---------------------------------------------------------------
  DataOptions tb_opt;
  std::string tb_family, tb_p = "1..12", tb_q = "all", tb_format = "json";
  CLI::App* tb = app.add_subcommand(
      "table", "Tabulate a family of invariants over a parameter range");
  tb->add_option("family", tb_family, "lens")->required();
  tb->add_option("--p", tb_p, "p values: N, A..B, or comma list");
  tb->add_option("--q", tb_q, "q values: 'all', N, A..B, or comma list");
  tb->add_option("--data", tb_opt.path,
                 "modular-data JSON file ('-' or absent = stdin)");
  tb->add_flag("--conjugate", tb_opt.conjugate,
               "evaluate on the conjugated data");
  tb->add_flag("--strict", tb_opt.strict,
               "fail instead of warning when the data violates the axioms");
  tb->add_option("--format", tb_format, "json | csv | markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));

  // compare -------------------------------------------------------------
  DataOptions cp_opt;
  std::string cp_fixture, cp_format = "json";
  CLI::App* cp = app.add_subcommand(
      "compare", "Compare computed invariants against a published-value "
                 "table, trying both orientation conventions");
  cp->add_option("--data", cp_opt.path,
                 "modular-data JSON file ('-' or absent = stdin)");
  cp->add_option("--fixture", cp_fixture,
                 "table file, or a name resolved as data/tables/NAME.json")
      ->required();
  cp->add_flag("--conjugate", cp_opt.conjugate,
               "conjugate the data before comparing");
  cp->add_option("--format", cp_format, "json | csv | markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (DataOptions* opt : {&vm_opt, &inv_opt, &tb_opt, &cp_opt}) {
      opt->tol = tol;
      opt->tol_set = tol_set;
    }
    if (vs->parsed()) return cmd_validate_system(vs_file, tol, tol_set);
    if (vm->parsed()) return cmd_validate_modular(vm_opt);
    if (dm->parsed())
      return cmd_derive_modular(dm_file, dm_out, dm_seed, dm_dump);
    if (inv->parsed())
      return cmd_invariant(inv_kind, inv_args, inv_opt, inv_format);
    if (tb->parsed()) {
      if (tb_family != "lens")
        throw Error(ErrorKind::Usage,
                    "unknown table family '" + tb_family + "' (expected lens)");
      return cmd_table_lens(tb_p, tb_q, tb_opt, tb_format);
    }
    if (cp->parsed()) return cmd_compare(cp_opt, cp_fixture, cp_format);
    throw Error(ErrorKind::Usage, "no subcommand given");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MissingFixture) {
      std::cerr << "skip: " << e.what() << "\n";
      return 3;
    }
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Usage:
      case ErrorKind::BadInput:
      case ErrorKind::BadCongruence:
      case ErrorKind::EmptyChain:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tvo
