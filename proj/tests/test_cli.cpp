// End-to-end tests driving the installed CLI binary through a shell.  The
// binary path arrives in the BLINKOBS_BIN environment variable.
#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

const std::string& binary() {
  static std::string bin = [] {
    const char* p = std::getenv("BLINKOBS_BIN");
    REQUIRE(p != nullptr);
    return std::string(p);
  }();
  return bin;
}

const fs::path& scratch() {
  static fs::path dir = [] {
    std::string tmpl = (fs::temp_directory_path() / "blkcliXXXXXX").string();
    char* got = mkdtemp(tmpl.data());
    REQUIRE(got != nullptr);
    return fs::path(got);
  }();
  return dir;
}

RunResult run(const std::string& args) {
  static int counter = 0;
  fs::path errfile = scratch() / ("stderr." + std::to_string(counter++));
  std::string cmd =
      "'" + binary() + "' " + args + " 2>'" + errfile.string() + "'";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream ef(errfile);
  std::stringstream es;
  es << ef.rdbuf();
  r.err = es.str();
  return r;
}

const fs::path& fixtures_dir() {
  static fs::path dir = [] {
    fs::path d = scratch() / "fx";
    RunResult r = run("examples --dir '" + d.string() + "'");
    REQUIRE(r.code == 0);
    return d;
  }();
  return dir;
}

std::string fx(const std::string& name) {
  return (fixtures_dir() / name).string();
}

}  // namespace

TEST_CASE("examples writes every fixture and replays the worked values",
          "[cli]") {
  fs::path d = scratch() / "fx2";
  RunResult r = run("examples --dir '" + d.string() + "'");
  CHECK(r.code == 0);
  for (const char* name :
       {"ko_10x10.json", "ko_rep.json", "example_6x6.json",
        "example_6x6_fixA.json", "example_6x6_fixB.json",
        "example_6x6_corrected.json", "example_6x6_c1.json",
        "example_12x12_doubled.json", "example_12x12_doubled_printed.json",
        "doubled_rep.json", "example_4x4.json", "example_4x4_forms.json",
        "trivial_0x0.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(d / name));
  }
  CHECK(r.out.find("computed -2 (matches recorded value)") !=
        std::string::npos);
  CHECK(r.out.find("discrepancy, see README") != std::string::npos);
}

TEST_CASE("validate accepts the 10x10 fixture with the documented line",
          "[cli]") {
  RunResult r = run("validate '" + fx("ko_10x10.json") + "'");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "valid epsilon=-1 boundary-link Seifert matrix, sizes (1,2,2)\n");

  RunResult j = run("validate '" + fx("ko_10x10.json") + "' --out json");
  CHECK(j.code == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed["valid"] == true);
  CHECK(parsed["epsilon"] == -1);
  CHECK(parsed["sizes"] == json::array({1, 2, 2}));
  CHECK(parsed["digest"].is_string());
}

TEST_CASE("validate rejects the printed 6x6 with a located violation",
          "[cli]") {
  RunResult r = run("validate '" + fx("example_6x6.json") + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("axiom violation") != std::string::npos);
  CHECK(r.err.find("(1,5)") != std::string::npos);

  RunResult j = run("validate '" + fx("example_6x6.json") + "' --out json");
  CHECK(j.code == 2);
  json parsed = json::parse(j.out);
  CHECK(parsed["valid"] == false);
  CHECK(parsed["violations"].size() == 1);
}

TEST_CASE("rho on the 10x10 fixture reports the obstruction", "[cli]") {
  RunResult r = run("rho '" + fx("ko_10x10.json") + "' --rep '" +
                    fx("ko_rep.json") + "' --epsilon -1 --mode exact");
  CHECK(r.code == 3);
  CHECK(r.out.find("rho total = -2") != std::string::npos);
  CHECK(r.out.find("not_slice") != std::string::npos);

  RunResult j = run("rho '" + fx("ko_10x10.json") + "' --rep '" +
                    fx("ko_rep.json") + "' --out json");
  CHECK(j.code == 3);
  json parsed = json::parse(j.out);
  CHECK(parsed["value"] == "-2");
  CHECK(parsed["verdict"] == "not_slice");
  CHECK(parsed["p_group_certified"] == true);
  CHECK(parsed["singular"] == true);
}

TEST_CASE("sigma alone only certifies the boundary-link verdict", "[cli]") {
  RunResult j = run("sigma '" + fx("ko_10x10.json") + "' --rep '" +
                    fx("ko_rep.json") + "' --out json");
  json parsed = json::parse(j.out);
  CHECK(parsed["value"] == "-2");
  // Singular point: the sigma invariant alone gives no verdict there.
  CHECK(parsed["singular"] == true);
  CHECK(parsed["verdict"] == "no_information");
  CHECK(j.code == 0);
}

TEST_CASE("alexander requires --relaxed for the printed matrix", "[cli]") {
  RunResult strict = run("alexander '" + fx("example_6x6.json") + "'");
  CHECK(strict.code == 2);
  CHECK(strict.err.find("--relaxed") != std::string::npos);

  RunResult ok = run("alexander '" + fx("example_6x6.json") + "' --relaxed");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("alexander raw") != std::string::npos);
  CHECK(ok.out.find("alexander normalized") != std::string::npos);

  RunResult corr =
      run("alexander '" + fx("example_6x6_corrected.json") + "' --out json");
  CHECK(corr.code == 0);
  json parsed = json::parse(corr.out);
  CHECK(parsed["zero"] == false);
}

TEST_CASE("sigma-f on the 4x4 fixture forms", "[cli]") {
  RunResult r = run("sigma-f '" + fx("example_4x4.json") + "' --forms '" +
                    fx("example_4x4_forms.json") + "' --out json");
  CHECK(r.code == 3);
  json parsed = json::parse(r.out);
  CHECK(parsed["value"] == "-2");
  CHECK(parsed["verdict"] == "not_boundary_slice");
  CHECK(parsed["p_group_certified"] == false);
}

TEST_CASE("abelian-scan emits one csv row per grid point", "[cli]") {
  RunResult r = run("abelian-scan '" + fx("example_12x12_doubled.json") +
                    "' --N 8 --out csv");
  CHECK(r.code == 0);  // every value vanishes: no obstruction
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "index,j1,j2,value,singular,verdict");
  size_t rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 64);
  CHECK(r.out.find("not_slice") == std::string::npos);
}

TEST_CASE("scan output is byte-identical across worker counts", "[cli]") {
  std::string base = "scan '" + fx("ko_10x10.json") + "' --family pdp --p 2 "
                     "--k 2 --max-order 8 --budget 40 --seed 0 --out csv";
  RunResult one = run(base + " --jobs 1");
  RunResult two = run(base + " --jobs 2");
  CHECK(one.code == two.code);
  CHECK(one.out == two.out);
  CHECK_FALSE(one.out.empty());
}

TEST_CASE("pdp scan finds a certificate that replays bit-exactly", "[cli]") {
  fs::path cert = scratch() / "cert.json";
  RunResult r = run("scan '" + fx("ko_10x10.json") + "' --family pdp --p 2 "
                    "--k 2 --max-order 8 --budget 60 --seed 0 --out csv "
                    "--cert '" + cert.string() + "'");
  CHECK(r.code == 3);  // a nonzero value certifies an obstruction
  REQUIRE(fs::exists(cert));

  // Find the first row with a nonzero value column.
  std::istringstream is(r.out);
  std::string line, nonzero_value;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    // columns: index,rep1,rep2,rep3,value,singular,verdict
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    if (cells[4] != "0") {
      nonzero_value = cells[4];
      break;
    }
  }
  REQUIRE_FALSE(nonzero_value.empty());

  RunResult replay = run("rho '" + fx("ko_10x10.json") + "' --rep '" +
                         cert.string() + "' --mode exact --out json");
  json parsed = json::parse(replay.out);
  CHECK(parsed["value"] == nonzero_value);
}

TEST_CASE("metabolic-verify search and rejection paths", "[cli]") {
  // A 2x2 matrix that is trivially metabolic.
  fs::path small = scratch() / "small.json";
  std::ofstream(small) << R"({"epsilon": -1, "sizes": [1],
                              "matrix": [[0, 1], [0, 0]]})";
  RunResult found = run("metabolic-verify '" + small.string() +
                        "' --search 500 --out json");
  CHECK(found.code == 0);
  json pf = json::parse(found.out);
  REQUIRE(pf["found"] == true);

  // Feed the found certificate back through --cert.
  fs::path cert = scratch() / "meta_cert.json";
  std::ofstream(cert) << pf["certificate"].dump();
  RunResult ver = run("metabolic-verify '" + small.string() + "' --cert '" +
                      cert.string() + "'");
  CHECK(ver.code == 0);
  CHECK(ver.out.find("verified") != std::string::npos);

  // An identity certificate on the (non-metabolic) 10x10 fixture is rejected.
  fs::path idcert = scratch() / "id_cert.json";
  std::ofstream(idcert) << R"({"blocks": [
      [[1,0],[0,1]],
      [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
      [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]]})";
  RunResult rej = run("metabolic-verify '" + fx("ko_10x10.json") +
                      "' --cert '" + idcert.string() + "'");
  CHECK(rej.code == 2);
  CHECK(rej.err.find("rejected") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1", "[cli]") {
  RunResult both = run("rho '" + fx("ko_10x10.json") + "' --rep '" +
                       fx("ko_rep.json") + "' --epsilon -1 --q 2");
  CHECK(both.code == 1);

  RunResult neither = run("metabolic-verify '" + fx("ko_10x10.json") + "'");
  CHECK(neither.code == 1);
  CHECK(neither.err.find("exactly one of") != std::string::npos);

  RunResult rex = run("scan '" + fx("ko_10x10.json") +
                      "' --family random --k 2 --budget 5 --mode exact");
  CHECK(rex.code == 1);
  CHECK(rex.err.find("error") != std::string::npos);

  RunResult help = run("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("Usage") != std::string::npos);
}

TEST_CASE("input errors exit with code 2", "[cli]") {
  RunResult missing = run("validate /nonexistent/path.json");
  CHECK(missing.code == 2);

  fs::path badjson = scratch() / "bad.json";
  std::ofstream(badjson) << "{ not json";
  RunResult bad = run("validate '" + badjson.string() + "'");
  CHECK(bad.code == 2);

  // Representation arity mismatch: the 4x4 fixture has 2 components but the
  // fixture rep provides 3 matrices.
  RunResult arity = run("rho '" + fx("example_4x4.json") + "' --rep '" +
                        fx("ko_rep.json") + "'");
  CHECK(arity.code == 2);
}

TEST_CASE("trivial empty matrix yields zero invariants", "[cli]") {
  RunResult alex = run("alexander '" + fx("trivial_0x0.json") + "' --out json");
  CHECK(alex.code == 0);
  json pa = json::parse(alex.out);
  CHECK(pa["normalized"] == "1");

  RunResult scan = run("abelian-scan '" + fx("trivial_0x0.json") +
                       "' --N 4 --out json");
  CHECK(scan.code == 0);
  json ps = json::parse(scan.out);
  CHECK(ps["summary"]["nonzero"] == 0);
  CHECK(ps["summary"]["verdict"] == "no_information");
}
