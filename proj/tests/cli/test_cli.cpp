#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "pegboard/cli.hpp"
#include "pegboard/curve_text.hpp"
#include "pegboard/pairing.hpp"
#include "pegboard/zoo.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using pegboard::cli::run;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const fs::path kGolden = PEGBOARD_GOLDEN_DIR;
const fs::path kFixtures = PEGBOARD_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Set PEGBOARD_UPDATE_GOLDEN=1 to rewrite the golden files from the current output.
void check_golden(const std::string& name, const std::string& actual) {
  const fs::path path = kGolden / name;
  if (std::getenv("PEGBOARD_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path, std::ios::binary) << actual;
  }
  REQUIRE_MESSAGE(fs::exists(path), "missing golden file " << path);
  CHECK(slurp(path) == actual);
}

long count(const std::string& hay, const std::string& needle) {
  long n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("pair emits the surgery dimension as JSON") {
  auto r = cli({"pair", "trefoil", "5/1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["total"] == 5);
  CHECK(j["total"] == pegboard::surgery_dim(pegboard::build_zoo("trefoil"), pegboard::SlopeSpec{5, 1}));
  CHECK(j["command"] == "pair");
  check_golden("pair_trefoil_5_1.json", r.out);
}

TEST_CASE("pair accepts integers and several slopes") {
  auto r = cli({"pair", "unknot", "3", "-2/3", "-f", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["reports"].size() == 2);
  CHECK(j["reports"][0]["total"] == 3);
  CHECK(j["reports"][1]["total"] == 2);
  CHECK(j["reports"][1]["slope"] == "-2/3");
}

TEST_CASE("pair flags the zero slope") {
  auto r = cli({"pair", "trefoil", "0", "-f", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["flags"].size() == 1);
}

TEST_CASE("the vertical slope is refused outside hfk") {
  CHECK(cli({"pair", "trefoil", "1/0"}).code == pegboard::cli::kInvalid);
  CHECK(cli({"diff", "trefoil", "1/0"}).code == pegboard::cli::kInvalid);
  auto r = cli({"hfk", "trefoil", "1/0", "-f", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "grading,dim\n-1,1\n0,1\n1,1\n");
}

TEST_CASE("hfk reports half-integral gradings at even p") {
  auto r = cli({"hfk", "figure-eight", "2/1", "-f", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (auto& [h, c] : j["dims"].items()) CHECK(h.find("/2") != std::string::npos);
}

TEST_CASE("invariants of the unknot") {
  auto r = cli({"invariants", "unknot", "-f", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["genus"] == 0);
  CHECK(j["tau"] == 0);
  CHECK(j["epsilon"] == 0);
  CHECK(cli({"invariants", "unknot"}).out.rfind("unknot: genus 0, tau 0, epsilon 0\n", 0) == 0);
}

TEST_CASE("diff reports ranks and passing checks") {
  auto r = cli({"diff", "trefoil", "7/1", "-f", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rank_phi"] == j["rank_psi"]);
  for (const auto& c : j["checks"]) CHECK(c["ok"] == true);
  CHECK(j["spectral"]["equality"] == true);
  CHECK(j["lspace"] == true);
  CHECK(cli({"diff", "trefoil", "0"}).code == pegboard::cli::kInvalid);
}

TEST_CASE("scan-simple tables") {
  auto fig8 = nlohmann::json::parse(cli({"scan-simple", "figure-eight", "--pmax", "8", "--qmax", "4", "-f", "json"}).out);
  CHECK(fig8["slopes"].empty());
  auto r = cli({"scan-simple", "trefoil", "-f", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("slope,dual_total,surgery,lspace,beyond_genus_bound,violation\n", 0) == 0);
  CHECK(count(r.out, ",false\n") == count(r.out, "\n") - 1);
  CHECK(cli({"scan-simple", "trefoil", "--pmax", "65"}).code == pegboard::cli::kInvalid);
}

TEST_CASE("ledger commands") {
  CHECK(cli({"ledger", "quasi-alt", "3"}).out == "Z^4 + (Z/2)^1\n");
  CHECK(cli({"ledger", "quasi-alt", "4"}).code == pegboard::cli::kInvalid);
  auto h = nlohmann::json::parse(cli({"ledger", "half-bound", "1", "3", "-f", "json"}).out);
  CHECK(h["certificate"]["lower_bound"] == 5);
  CHECK(h["certificate"]["rule"] == "half-integral-gap");
  auto g = nlohmann::json::parse(cli({"ledger", "genus-one", "1", "-1", "1", "-f", "json"}).out);
  CHECK(g["isharp1_dim"] == 3);
  auto d = cli({"ledger", "dim-seq", "V", "2", "3", "4", "5", "-f", "csv"});
  CHECK(d.out == "n,value,bundle,coefficient\n4,5,trivial,C\n5,6,trivial,C\n");
  auto nt = nlohmann::json::parse(cli({"ledger", "no-torsion", "3", "V", "1", "1", "-f", "json"}).out);
  CHECK(nt["consistent"] == true);
  CHECK(cli({"ledger", "no-torsion", "2", "V", "2", "1"}).code == pegboard::cli::kInvalid);
  CHECK(cli({"ledger", "triangle", "1", "5", "2"}).out == "false\n");
  CHECK(cli({"ledger", "propagate", "5", "--minimal"}).out.find(">= 5") != std::string::npos);
}

TEST_CASE("ledger classify reads sequence CSV files") {
  auto r = cli({"ledger", "classify", (kFixtures / "unknot_f2.csv").string(), "-f", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["shape"]["kind"] == "W");
  CHECK(j["shape"]["nu_plus"] == 1);
  CHECK(j["shape"]["nu_minus"] == -1);
  CHECK(j["shape"]["width"] == "1");
  auto bad = cli({"ledger", "classify", (kFixtures / "odd_mismatch_f2.csv").string()});
  CHECK(bad.code == pegboard::cli::kTheoremViolation);
  CHECK(bad.err.find("odd-bundle-equality") != std::string::npos);
  auto t2 = cli({"ledger", "t2", (kFixtures / "t2_increase.csv").string(), "--nu", "1"});
  CHECK(t2.code == pegboard::cli::kTheoremViolation);
  CHECK(t2.err.find("THEOREM VIOLATION: t2-monotone") != std::string::npos);
}

TEST_CASE("demo poincare") {
  auto r = cli({"demo", "poincare"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("conclusion: adjunction inequality fails over F2") != std::string::npos);
  check_golden("demo_poincare.txt", r.out);
  auto j = nlohmann::json::parse(cli({"demo", "poincare", "-f", "json"}).out);
  CHECK(j["conditional_value"] == 1);
  CHECK(j["lower_bound"] == 3);
  CHECK(j["contradiction"] == true);
}

TEST_CASE("render draws pegs, polylines and dashed overlays") {
  auto u = cli({"render", "unknot"});
  REQUIRE(u.code == 0);
  CHECK(count(u.out, "<polyline") == 1);
  CHECK(count(u.out, "class=\"peg\"") >= 3);
  CHECK(u.out.find("stroke-dasharray") == std::string::npos);

  auto t = cli({"render", "trefoil", "--overlay", "1/1"});
  REQUIRE(t.code == 0);
  CHECK(count(t.out, "<polyline") == 1);
  CHECK(count(t.out, "class=\"surgery-line\"") > 0);
  CHECK(t.out.find("stroke-dasharray") != std::string::npos);
  check_golden("render_trefoil_overlay_1_1.svg", t.out);

  auto f = cli({"render", "figure-eight", "--overlay", "2/1@1/2", "--window", "-3", "3"});
  REQUIRE(f.code == 0);
  CHECK(count(f.out, "class=\"arc\"") == 2);
  CHECK(count(f.out, "<polyline") == 3);
  CHECK(cli({"render", "trefoil", "--overlay", "2/1@1"}).code == pegboard::cli::kInvalid);
  CHECK(cli({"render", "trefoil", "-f", "json"}).code == pegboard::cli::kUsage);
}

TEST_CASE("every emission is byte-identical across runs") {
  const std::vector<std::vector<std::string>> cmds = {
      {"pair", "torus-3-4", "7/2", "-f", "json"}, {"hfk", "torus-2-5", "3/1", "-f", "json"},
      {"diff", "figure-eight", "2/1", "-f", "json"}, {"scan-simple", "torus-2-5", "-f", "csv"},
      {"render", "torus-3-4", "--overlay", "3/2"}, {"zoo", "list", "-f", "json"}};
  for (const auto& c : cmds) {
    auto a = cli(c), b = cli(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli({}).code == pegboard::cli::kUsage);
  CHECK(cli({"pair"}).code == pegboard::cli::kUsage);
  CHECK(cli({"pair", "trefoil", "1", "--format", "pdf"}).code == pegboard::cli::kUsage);
  CHECK(cli({"pair", "trefoil", "1", "-f", "svg"}).code == pegboard::cli::kUsage);
  CHECK(cli({"frobnicate"}).code == pegboard::cli::kUsage);
  CHECK(cli({"pair", "no-such-knot", "1"}).code == pegboard::cli::kInvalid);
  CHECK(cli({"pair", "trefoil", "1/x"}).code == pegboard::cli::kInvalid);
  CHECK(cli({"pair", "trefoil", "65/1"}).code == pegboard::cli::kInvalid);
}

TEST_CASE("curve files from PEGBOARD_ZOO_DIR and from paths") {
  const fs::path dir = fs::temp_directory_path() / "pegboard_cli_zoo";
  fs::create_directories(dir);
  std::ofstream(dir / "mythin.curve") << pegboard::emit_curve_text(pegboard::build_zoo("thin:1,1"));
  std::ofstream(dir / "broken.curve") << "component winding=1\nv 0 0\n";
  ::setenv("PEGBOARD_ZOO_DIR", dir.c_str(), 1);
  auto list = cli({"zoo", "list"});
  CHECK(list.out.find("mythin") != std::string::npos);
  auto by_name = cli({"pair", "mythin", "3", "-f", "json"});
  auto by_spec = cli({"pair", "thin:1,1", "3", "-f", "json"});
  REQUIRE(by_name.code == 0);
  CHECK(nlohmann::json::parse(by_name.out)["total"] == nlohmann::json::parse(by_spec.out)["total"]);
  auto by_path = cli({"invariants", (dir / "mythin.curve").string()});
  CHECK(by_path.code == 0);
  CHECK(cli({"render", "broken"}).code == pegboard::cli::kInvalid);
  ::unsetenv("PEGBOARD_ZOO_DIR");
  fs::remove_all(dir);
}

TEST_CASE("output goes to --output when given") {
  const fs::path out = fs::temp_directory_path() / "pegboard_cli_out.svg";
  auto r = cli({"render", "unknot", "-o", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out) == cli({"render", "unknot"}).out);
  fs::remove(out);
}
