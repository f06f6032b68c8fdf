#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tvo/errors.hpp"
#include "tvo/exact_expr.hpp"
#include "tvo/modular_from_tube.hpp"
#include "tvo/modular_io.hpp"
#include "tvo/surgery.hpp"
#include "tvo/tube_algebra.hpp"

using namespace tvo;
namespace fsys = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = TVO_CLI_PATH;
const std::string kData = TVO_DATA_DIR;

const fsys::path& work_dir() {
  static const fsys::path dir = [] {
    fsys::path d = fsys::temp_directory_path() /
                   ("tvo_cli_test_" + std::to_string(::getpid()));
    fsys::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fsys::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fsys::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs a full shell line with stdout/stderr captured; stdin reads from
// /dev/null so a misbehaving command cannot block the test.
RunResult run_shell(const std::string& line) {
  static int counter = 0;
  const fsys::path out = work_dir() / ("out" + std::to_string(counter));
  const fsys::path err = work_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = "{ " + line + " ; } >" + out.string() + " 2>" +
                          err.string() + " </dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  return res;
}

RunResult run_cli(const std::string& args) { return run_shell(kCli + " " + args); }

ModularData derive_double(const FusionSystem& fs) {
  TubeAlgebra tube(fs);
  CenterData center = compute_center(tube, 7);
  return modular_data_from_tube(tube, center);
}

const ModularData& fibonacci_double() {
  static const ModularData md = derive_double(fibonacci());
  return md;
}

// Modular data for the Fibonacci system derived through the CLI binary, so
// later tests exercise file-based --data loading.
const std::string& fib_md_path() {
  static const std::string path = [] {
    const fsys::path p = work_dir() / "fib_md.json";
    const RunResult r = run_cli("derive-modular " + kData +
                                "/systems/fibonacci.json -o " + p.string());
    REQUIRE(r.code == 0);
    REQUIRE(fsys::exists(p));
    return p.string();
  }();
  return path;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Renders a complex number as an expression string the table parser accepts.
std::string value_expr(cd z) {
  return "(" + fmt17(z.real()) + ")+(" + fmt17(z.imag()) + ")*i";
}

cd json_value(const json& pair) {
  return cd(pair.at(0).get<double>(), pair.at(1).get<double>());
}

}  // namespace

TEST_CASE("closed-form expressions evaluate exactly") {
  CHECK(evaluate_closed_form("1/2") == cd(0.5, 0.0));
  CHECK(std::abs(evaluate_closed_form("(3-sqrt(3))/12") -
                 cd((3.0 - std::sqrt(3.0)) / 12.0, 0.0)) < 1e-16);
  CHECK(std::abs(evaluate_closed_form("exp(4*i*pi/3)") -
                 std::polar(1.0, 4.0 * kPi / 3.0)) < 1e-15);
  CHECK(evaluate_closed_form("conj(1+2*i)") == cd(1.0, -2.0));
  CHECK(evaluate_closed_form("2^-2") == cd(0.25, 0.0));
  CHECK(evaluate_closed_form("i^3") == cd(0.0, -1.0));
  CHECK(evaluate_closed_form("1.5e-3") == cd(0.0015, 0.0));
  CHECK(evaluate_closed_form("2E2") == cd(200.0, 0.0));
  CHECK(std::abs(evaluate_closed_form("(1+sqrt(5))/2^2") -
                 cd((1.0 + std::sqrt(5.0)) / 4.0, 0.0)) < 1e-16);
  CHECK_THROWS_AS(evaluate_closed_form("1+"), Error);
  CHECK_THROWS_AS(evaluate_closed_form("foo(2)"), Error);
  CHECK_THROWS_AS(evaluate_closed_form("1/(2-2)"), Error);
  CHECK_THROWS_AS(evaluate_closed_form("(1"), Error);
  CHECK_THROWS_AS(evaluate_closed_form("3 x"), Error);
  CHECK_THROWS_AS(evaluate_closed_form("2^i"), Error);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("--no-such-flag validate-system x").code == 2);
  CHECK(run_cli("invariant lens 5 2 --data " + fib_md_path() +
                " --format yaml")
            .code == 2);

  const std::string data = " --data " + fib_md_path();
  CHECK(run_cli("invariant lens 5" + data).code == 2);    // missing q
  CHECK(run_cli("invariant lens 4 2" + data).code == 2);  // gcd(4,2) != 1
  CHECK(run_cli("invariant lens 4 5" + data).code == 2);  // q >= p
  CHECK(run_cli("invariant bogus 1" + data).code == 2);
  CHECK(run_cli("invariant s3 1" + data).code == 2);
  CHECK(run_cli("invariant chain" + data).code == 2);
  CHECK(run_cli("table lens --p 5..3" + data).code == 2);
  CHECK(run_cli("table nope --p 3" + data).code == 2);

  // Negative framings go after "--"; options must come first.
  const RunResult neg = run_cli("invariant" + data + " chain -- -2 3");
  CHECK(neg.code == 0);
  CHECK(neg.out.find("chain[-2,3]") != std::string::npos);
}

TEST_CASE("file errors: missing files exit 3, wrong schema exits 1") {
  const RunResult miss = run_cli("validate-system /no/such/file.json");
  CHECK(miss.code == 3);
  CHECK(miss.err.find("skip:") != std::string::npos);

  // Feeding a fusion system where modular data is expected is a schema error.
  const RunResult wrong = run_cli("invariant s3 --data " + kData +
                                  "/systems/fibonacci.json");
  CHECK(wrong.code == 1);
  CHECK(wrong.err.find("error:") != std::string::npos);
}

TEST_CASE("validate-system accepts every shipped fusion system") {
  std::vector<fsys::path> files;
  for (const auto& entry : fsys::directory_iterator(kData + "/systems"))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  CHECK(files.size() == 12);
  for (const auto& f : files) {
    const RunResult r = run_cli("validate-system " + f.string());
    CAPTURE(f.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("result: valid") != std::string::npos);
  }
}

TEST_CASE("validate-system rejects tampered F-symbols") {
  json doc = json::parse(slurp(kData + "/systems/fibonacci.json"));
  bool tampered = false;
  for (auto& row : doc.at("F")) {
    const double re = row.at(10).get<double>();
    if (std::abs(re) > 0.01 && std::abs(std::abs(re) - 1.0) > 0.01) {
      row.at(10) = re + 0.05;
      tampered = true;
      break;
    }
  }
  REQUIRE(tampered);
  const fsys::path bad = work_dir() / "bad_system.json";
  spit(bad, doc.dump(1));
  const RunResult r = run_cli("validate-system " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("result: invalid") != std::string::npos);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("validate-modular accepts derived data and rejects tampered data") {
  const RunResult good = run_cli("validate-modular " + fib_md_path());
  CHECK(good.code == 0);
  CHECK(good.out.find("result: valid") != std::string::npos);

  ModularData md = modular_data_from_json_text(slurp(fib_md_path()), "test");
  md.S(1, 1) += 1e-5;
  const fsys::path bad = work_dir() / "bad_modular.json";
  spit(bad, modular_data_to_json_text(md));
  const RunResult r = run_cli("validate-modular " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("result: invalid") != std::string::npos);
}

TEST_CASE("derive-modular output is byte-deterministic per seed") {
  const fsys::path a = work_dir() / "derive_a.json";
  const fsys::path b = work_dir() / "derive_b.json";
  const std::string sys = kData + "/systems/fibonacci.json";
  REQUIRE(run_cli("derive-modular " + sys + " -o " + a.string()).code == 0);
  REQUIRE(run_cli("derive-modular " + sys + " --seed 99 -o " + b.string())
              .code == 0);
  const std::string text_a = slurp(a);

  // Same argv must give identical bytes.
  const RunResult to_stdout = run_cli("derive-modular " + sys);
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out == text_a);

  // A different splitting seed changes only floating-point dust: the
  // canonical ordering must agree entrywise well below the data tolerance.
  const ModularData md = modular_data_from_json_text(text_a, "derived");
  const ModularData md99 = modular_data_from_json_text(slurp(b), "derived99");
  REQUIRE(md.rank() == md99.rank());
  CHECK(md.labels == md99.labels);
  CHECK((md.S - md99.S).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((md.t - md99.t).cwiseAbs().maxCoeff() < 1e-10);

  CHECK(md.rank() == 4);
  CHECK(md.lambda == doctest::Approx(2.0 + 1.6180339887498948).epsilon(1e-12));
}

TEST_CASE("derive-modular --dump-tube reports the tube dimension") {
  const fsys::path out = work_dir() / "dump_out.json";
  const RunResult r = run_cli("derive-modular " + kData +
                              "/systems/fibonacci.json --dump-tube -o " +
                              out.string());
  CHECK(r.code == 0);
  const TubeAlgebra tube(fibonacci());
  const std::string want = "tube dimension: " + std::to_string(tube.dim());
  CHECK(r.err.find(want) != std::string::npos);
  CHECK(r.err.find("structure constants:") != std::string::npos);
}

TEST_CASE("invariant matches the library and supports the stdin pipe") {
  const RunResult piped =
      run_shell(kCli + " derive-modular " + kData +
                "/systems/fibonacci.json | " + kCli +
                " invariant lens 5 2 --data -");
  REQUIRE(piped.code == 0);
  const json rec = json::parse(piped.out);
  CHECK(rec.at("kind") == "invariant");
  CHECK(rec.at("manifold") == "L(5,2)");
  CHECK(rec.at("presentation") == "chain[3,2]");
  CHECK(rec.at("convention") == "as-is");
  const cd expected = lens_invariant(fibonacci_double(), 5, 2);
  CHECK(std::abs(json_value(rec.at("value")) - expected) < 1e-12);

  const RunResult chain0 = run_cli("invariant chain 0 --data " + fib_md_path());
  REQUIRE(chain0.code == 0);
  const json c0 = json::parse(chain0.out);
  CHECK(c0.at("manifold") == "chain[0]");
  CHECK(std::abs(json_value(c0.at("value")) - cd(1.0, 0.0)) < 1e-12);

  const RunResult s3 = run_cli("invariant s3 --data " + fib_md_path());
  REQUIRE(s3.code == 0);
  const cd s3_val = json_value(json::parse(s3.out).at("value"));
  CHECK(std::abs(s3_val - fibonacci_double().S(0, 0)) < 1e-12);
}

TEST_CASE("invariant --conjugate conjugates the value") {
  const std::string base = "invariant lens 7 3 --data " + fib_md_path();
  const RunResult plain = run_cli(base);
  const RunResult conj = run_cli(base + " --conjugate");
  REQUIRE(plain.code == 0);
  REQUIRE(conj.code == 0);
  const json p = json::parse(plain.out), c = json::parse(conj.out);
  CHECK(p.at("convention") == "as-is");
  CHECK(c.at("convention") == "conjugated");
  CHECK(std::abs(json_value(c.at("value")) -
                 std::conj(json_value(p.at("value")))) < 1e-14);
}

TEST_CASE("invariant output formats are consistent") {
  const std::string base = "invariant brieskorn 2 3 5 --data " + fib_md_path();
  const RunResult js = run_cli(base + " --format json");
  const RunResult csv = run_cli(base + " --format csv");
  const RunResult md = run_cli(base + " --format markdown");
  REQUIRE(js.code == 0);
  REQUIRE(csv.code == 0);
  REQUIRE(md.code == 0);
  CHECK(json::parse(js.out).at("manifold") == "Sigma(2,3,5)");
  CHECK(csv.out.find("data,manifold,presentation,convention,re,im") !=
        std::string::npos);
  CHECK(csv.out.find("Sigma(2,3,5)") != std::string::npos);
  CHECK(md.out.find("| manifold | presentation | value |") !=
        std::string::npos);
  CHECK(md.out.find("star(1;2,3,5)") != std::string::npos);
}

TEST_CASE("table lens is deterministic and filters invalid q") {
  const std::string base = "table lens --p 1..6 --q all --data " +
                           fib_md_path() + " --format csv";
  const RunResult first = run_cli(base);
  const RunResult second = run_cli(base);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);

  const RunResult p4 = run_cli("table lens --p 4 --q all --data " +
                               fib_md_path() + " --format csv");
  CHECK(p4.out.find("L(4,1)") != std::string::npos);
  CHECK(p4.out.find("L(4,3)") != std::string::npos);
  CHECK(p4.out.find("L(4,2)") == std::string::npos);

  const RunResult js = run_cli("table lens --p 1..6 --q all --data " +
                               fib_md_path());
  REQUIRE(js.code == 0);
  const json doc = json::parse(js.out);
  CHECK(doc.at("kind") == "lens-table");
  // #{coprime q<p} per p in 1..6 is 1,1,2,2,4,2.
  CHECK(doc.at("rows").size() == 12);

  const RunResult md = run_cli("table lens --p 3 --q 1,2 --data " +
                               fib_md_path() + " --format markdown");
  CHECK(md.out.find("| manifold | value |") != std::string::npos);
}

TEST_CASE("compare exits 3 with a skip notice when the fixture is missing") {
  const RunResult r = run_cli("compare --fixture no-such-table --data " +
                              fib_md_path());
  CHECK(r.code == 3);
  CHECK(r.err.rfind("skip:", 0) == 0);
  CHECK(r.out.empty());
}

TEST_CASE("compare resolves bare fixture names under data/tables") {
  const std::string repo_root = fsys::path(kData).parent_path().string();
  const RunResult r =
      run_shell("cd " + repo_root + " && " + kCli +
                " compare --fixture d5-1 --data " + fib_md_path());
  REQUIRE(r.code == 1);  // found the table; values genuinely disagree
  CHECK(r.err.find("skip:") == std::string::npos);
  const json doc = json::parse(r.out);
  CHECK(doc.at("kind") == "compare");
  CHECK(doc.at("ok") == false);
  CHECK(doc.at("rows").size() == 6);
  CHECK(doc.at("max_deviation").get<double>() > 0.01);
}

TEST_CASE("compare passes against a table generated from the data itself") {
  const ModularData& md = fibonacci_double();
  json rows = json::array();
  const auto add = [&rows](const std::string& manifold, const std::string& op,
                           std::vector<long long> args, cd value) {
    json r;
    r["manifold"] = manifold;
    r["op"] = op;
    r["args"] = args;
    r["value"] = value_expr(value);
    rows.push_back(r);
  };
  add("S^3", "s3", {}, s3_invariant(md));
  add("S^2 x S^1", "s2xs1", {}, s2xs1_invariant(md));
  add("L(7,2)", "lens", {7, 2}, lens_invariant(md, 7, 2));
  add("chain[2,3]", "chain", {2, 3}, chain_invariant(md, {2, 3}));
  add("star(1;2,2)", "star", {1, 2, 2}, star_invariant(md, 1, {2, 2}));
  add("Sigma(2,3,5)", "brieskorn", {2, 3, 5}, brieskorn_invariant(md, 2, 3, 5));
  json table;
  table["name"] = "self-test";
  table["tolerance"] = 1e-9;
  table["rows"] = rows;
  const fsys::path path = work_dir() / "self_table.json";
  spit(path, table.dump(1));

  const RunResult r = run_cli("compare --fixture " + path.string() +
                              " --data " + fib_md_path());
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("ok") == true);
  CHECK(doc.at("max_deviation").get<double>() < 1e-10);
}

TEST_CASE("compare picks the conjugated convention when the table needs it") {
  // The twisted cyclic double has genuinely complex lens values, so the two
  // orientation conventions are distinguishable.
  const ModularData md = derive_double(vec_omega_cyclic(3, 1));
  json rows = json::array();
  for (long long q : {1LL, 2LL}) {
    json r;
    r["manifold"] = "L(3," + std::to_string(q) + ")";
    r["op"] = "lens";
    r["args"] = {3, q};
    r["value"] = value_expr(std::conj(lens_invariant(md, 3, q)));
    rows.push_back(r);
  }
  json table;
  table["name"] = "conjugated-self-test";
  table["tolerance"] = 1e-9;
  table["rows"] = rows;
  const fsys::path path = work_dir() / "conj_table.json";
  spit(path, table.dump(1));

  const fsys::path data = work_dir() / "z31_md.json";
  REQUIRE(run_cli("derive-modular " + kData + "/systems/vec_z3_1.json -o " +
                  data.string())
              .code == 0);
  const RunResult r = run_cli("compare --fixture " + path.string() +
                              " --data " + data.string());
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("ok") == true);
  CHECK(doc.at("convention") == "conjugated");
}

TEST_CASE("axiom violations warn by default, fail under --strict") {
  ModularData md = modular_data_from_json_text(slurp(fib_md_path()), "test");
  md.S(1, 1) += 1e-5;
  const fsys::path bad = work_dir() / "warn_modular.json";
  spit(bad, modular_data_to_json_text(md));

  const RunResult warn = run_cli("invariant s3 --data " + bad.string());
  CHECK(warn.code == 0);
  CHECK(warn.err.find("warning:") != std::string::npos);
  CHECK(warn.err.find("fails modular axioms") != std::string::npos);

  const RunResult strict =
      run_cli("invariant s3 --data " + bad.string() + " --strict");
  CHECK(strict.code == 1);
  CHECK(strict.err.find("error:") != std::string::npos);

  const RunResult loose =
      run_cli("--tol 1e-3 invariant s3 --data " + bad.string());
  CHECK(loose.code == 0);
  CHECK(loose.err.empty());
}
