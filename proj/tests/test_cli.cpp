#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SPHAVG_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "sphavg_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config(const std::string& name) { return std::string(SPHAVG_CONFIGS) + "/" + name; }

}  // namespace

TEST_CASE("version and help exit cleanly", "[cli]") {
  const Run v = run("--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("verify interp-table --bogus").code == 2);
}

TEST_CASE("verify exit codes", "[cli]") {
  const Run ok = run("verify interp-table");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\"verdict\": \"PASS\"") != std::string::npos);
  CHECK(ok.out.find("\"config_sha256\"") != std::string::npos);
  CHECK(run("verify no-such").code == 2);
}

TEST_CASE("region lookups", "[cli]") {
  const Run q = run("region --thm linearAr --d 2 --r 2 --vertex Q");
  CHECK(q.code == 0);
  CHECK(q.out.find("\"3/4\",\n    \"1/4\"") != std::string::npos);
  const Run c = run("region --thm linearAr --d 2 --r 2 --p 4/3 --q 4");
  CHECK(c.code == 0);
  CHECK(c.out.find("\"verdict\": \"restricted-weak\"") != std::string::npos);
  CHECK(run("region --thm linearAr --d 2 --r 2 --coords 1/2").code == 2);
  CHECK(run("region --thm linearAr --d 2 --r 2 --vertex Z").code == 2);
  CHECK(run("region --thm nope --coords 1/2,1/2").code == 2);
}

TEST_CASE("sweep config errors", "[cli]") {
  const fs::path dir = scratch("bad");
  CHECK(run("sweep").code == 2);
  CHECK(run("sweep --config " + (dir / "missing.cfg").string()).code == 2);
  std::ofstream(dir / "broken.cfg") << "[run\ncommand = sweep\n";
  CHECK(run("sweep --config " + (dir / "broken.cfg").string()).code == 2);
  std::ofstream(dir / "noseed.cfg") << "[run]\ncommand = sweep\n[sweep]\nkind = figA\nladder_log2 = 3,4,5,6\n";
  CHECK(run("sweep --config " + (dir / "noseed.cfg").string()).code == 2);
  std::ofstream(dir / "badkind.cfg") << "[run]\ncommand = sweep\nseed = 1\n[sweep]\nkind = nope\nladder_log2 = 3,4,5,6\n";
  CHECK(run("sweep --config " + (dir / "badkind.cfg").string() + " --out " + dir.string()).code == 2);
}

TEST_CASE("bundled row sweep passes and writes outputs", "[cli]") {
  const fs::path dir = scratch("row1");
  const Run r = run("sweep --config " + config("figA_row1_d2_r2.cfg") + " --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("\"verdict\": \"PASS\"") != std::string::npos);
  const std::string csv = slurp(dir / "figA_row1_d2_r2.csv");
  CHECK(csv.rfind("# sphavg 0.1.0\n# config_sha256 ", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(fs::exists(dir / "figA_row1_d2_r2.json"));
}

TEST_CASE("thread count does not change the bytes", "[cli]") {
  const fs::path a = scratch("t1"), b = scratch("t4");
  REQUIRE(run("sweep --config " + config("figA_row2_d2_r2.cfg") + " --threads 1 --out " + a.string()).code == 0);
  REQUIRE(run("sweep --config " + config("figA_row2_d2_r2.cfg") + " --threads 4 --out " + b.string()).code == 0);
  CHECK(slurp(a / "figA_row2_d2_r2.csv") == slurp(b / "figA_row2_d2_r2.csv"));
  CHECK(slurp(a / "figA_row2_d2_r2.json") == slurp(b / "figA_row2_d2_r2.json"));
}

TEST_CASE("table and average commands", "[cli]") {
  const fs::path dir = scratch("table");
  CHECK(run("table --out " + dir.string()).code == 0);
  CHECK(slurp(dir / "interpolation_table.csv").find("row,d,r,theta") != std::string::npos);
  const Run avg = run("average --op sphere --f one --x 0.3,0.1 --t 1.5");
  CHECK(avg.code == 0);
  CHECK(avg.out.find("\"value\": 1.0") != std::string::npos);
  CHECK(run("average --op nope").code == 2);
  CHECK(run("average --x 1").code == 2);
}
