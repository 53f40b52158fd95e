// Integration tests of the command-line tool: schema, determinism, exit
// codes, config handling. The binary path arrives in QBOUNCER_CLI.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

std::string cli_path() {
  const char* p = std::getenv("QBOUNCER_CLI");
  REQUIRE_MESSAGE(p != nullptr, "QBOUNCER_CLI must point at the binary");
  return p;
}

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/tmp/qb_cli_stderr";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string stderr_text() { return slurp("/tmp/qb_cli_stderr"); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("spectrum: schema and values") {
  const RunResult r = run("spectrum");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 6);  // comment + header + 4 levels
  CHECK(lines[0].rfind("# qbouncer", 0) == 0);
  CHECK(lines[0].find("config_hash=0x") != std::string::npos);
  CHECK(lines[1] == "n,gamma_n,E_n_peV,E_up_peV,E_down_peV,shift_up_peV");
  double n, gamma, en, eup, edn, shift;
  REQUIRE(std::sscanf(lines[2].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &n, &gamma,
                      &en, &eup, &edn, &shift) == 6);
  CHECK(n == 1.0);
  CHECK(en == doctest::Approx(1.40704).epsilon(1e-5));
  CHECK(shift / 1.3547e-15 == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("spectrum: zero field zeroes the shift column") {
  const RunResult r = run("spectrum --field-tesla 0");
  REQUIRE(r.exit_code == 0);
  for (const auto& line : lines_of(r.output)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    const auto pos = line.rfind(',');
    CHECK(line.substr(pos + 1) == "0");
  }
}

TEST_CASE("spectrum: eight levels come out ordered") {
  const RunResult r =
      run("spectrum --levels 1 --levels 2 --levels 3 --levels 4 --levels 5 "
          "--levels 6 --levels 7 --levels 8");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 10);
  double prev = 0.0;
  for (size_t i = 2; i < lines.size(); ++i) {
    double n, gamma;
    REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf", &n, &gamma) == 2);
    CHECK(gamma < prev);  // strictly decreasing Airy zeros
    prev = gamma;
  }
}

TEST_CASE("table1 matches the published grid within 2%") {
  const RunResult r = run("table1");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 5);
  const double paper[3][4] = {{1.36e-15, 2.37e-15, 3.20e-15, 3.94e-15},
                              {3.62e-14, 6.32e-14, 8.54e-14, 1.05e-13},
                              {3.01e-10, 5.27e-10, 7.12e-10, 8.75e-10}};
  for (int i = 0; i < 3; ++i) {
    double b, s1, s2, s3, s4;
    REQUIRE(std::sscanf(lines[2 + i].c_str(), "%lf,%lf,%lf,%lf,%lf", &b, &s1,
                        &s2, &s3, &s4) == 5);
    const double got[4] = {s1, s2, s3, s4};
    for (int j = 0; j < 4; ++j) {
      INFO("row ", i, " col ", j);
      CHECK(std::fabs(got[j] / paper[i][j] - 1.0) < 0.02);
    }
  }
}

TEST_CASE("deterministic output: identical config, identical bytes") {
  REQUIRE(run("table1 --out /tmp/qb_cli_a.csv").exit_code == 0);
  REQUIRE(run("table1 --out /tmp/qb_cli_b.csv").exit_code == 0);
  CHECK(slurp("/tmp/qb_cli_a.csv") == slurp("/tmp/qb_cli_b.csv"));
  CHECK(!slurp("/tmp/qb_cli_a.csv").empty());
}

TEST_CASE("interference trace: p(0) = 1 and columns in range") {
  const RunResult r = run("interference --t-max-s 1e-3 --samples 6");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 8);
  CHECK(lines[1] == "t_s,p,phase_rad,visibility");
  double t, p, ph, vis;
  REQUIRE(std::sscanf(lines[2].c_str(), "%lf,%lf,%lf,%lf", &t, &p, &ph, &vis) ==
          4);
  CHECK(t == 0.0);
  CHECK(p == 1.0);
  for (size_t i = 2; i < lines.size(); ++i) {
    REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf", &t, &p, &ph,
                        &vis) == 4);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(vis <= 1.0);
    CHECK(vis >= 0.0);
  }
}

TEST_CASE("delta override prints a prominent notice") {
  const RunResult r =
      run("interference --t-max-s 1e-3 --samples 3 --delta-override 1e-4");
  REQUIRE(r.exit_code == 0);
  CHECK(stderr_text().find("NOTICE: inflated-delta") != std::string::npos);
}

TEST_CASE("qfi: three-curve output") {
  const RunResult r = run(
      "qfi --t-max-s 4e-4 --samples 2 --models numeric,short-time,"
      "semiclassical");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find(",numeric,") != std::string::npos);
  CHECK(r.output.find(",short-time,") != std::string::npos);
  CHECK(r.output.find(",semiclassical,") != std::string::npos);
  const RunResult bad = run("qfi --models nonsense --samples 1");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("freefall columns") {
  const RunResult r =
      run("freefall --samples 3 --t-max-s 3e-2 --sigma-m 1e-5 "
          "--delta-override 1e-3");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1] == "t_s,F_Q_closed,F_Q_t6_limit,phi_g,overlap_mag");
  double t, fq, t6, phi, mag;
  REQUIRE(std::sscanf(lines[4].c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &fq, &t6,
                      &phi, &mag) == 5);
  // ratio to the t^6 law approaches 1 from above at late times
  CHECK(fq / t6 == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(fq >= t6);
  CHECK(mag <= 1.0);
}

TEST_CASE("config file: values load, flags win, unknown keys rejected") {
  {
    std::ofstream cfg("/tmp/qb_cli_cfg.json");
    cfg << "{\"field_tesla\": 1200.0, \"levels\": [1]}";
  }
  const RunResult r = run("spectrum --config /tmp/qb_cli_cfg.json");
  REQUIRE(r.exit_code == 0);
  REQUIRE(lines_of(r.output).size() == 3);  // single level
  double n, gamma, en, eup, edn, shift;
  REQUIRE(std::sscanf(lines_of(r.output)[2].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf",
                      &n, &gamma, &en, &eup, &edn, &shift) == 6);
  CHECK(shift / 3.6125e-14 == doctest::Approx(1.0).epsilon(1e-4));  // 1200 T

  // flag overrides the file
  const RunResult r2 =
      run("spectrum --config /tmp/qb_cli_cfg.json --field-tesla 45");
  double shift2;
  REQUIRE(std::sscanf(lines_of(r2.output)[2].c_str(),
                      "%lf,%lf,%lf,%lf,%lf,%lf", &n, &gamma, &en, &eup, &edn,
                      &shift2) == 6);
  CHECK(shift2 / 1.3547e-15 == doctest::Approx(1.0).epsilon(1e-4));

  {
    std::ofstream cfg("/tmp/qb_cli_bad.json");
    cfg << "{\"no_such_key\": 1}";
  }
  CHECK(run("spectrum --config /tmp/qb_cli_bad.json").exit_code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run("spectrum --field-tesla -3").exit_code == 2);       // validation
  CHECK(run("spectrum --out /no/such/dir/x.csv").exit_code == 4);  // I/O
  CHECK(run("nonsense-subcommand").exit_code == 2);             // usage
  CHECK(run("check --tighten 1e9").exit_code == 3);  // checks must fail
}

TEST_CASE("json format mirrors the csv columns") {
  const RunResult r = run("spectrum --format json --levels 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("\"E_n_peV\": [1.4070391526991304]") !=
        std::string::npos);
  CHECK(r.output.find("\"config_hash\"") != std::string::npos);
}

TEST_CASE("check subcommand passes at default tolerances") {
  const RunResult r = run("check --out /tmp/qb_cli_check.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("0 of") != std::string::npos);
  const std::string js = slurp("/tmp/qb_cli_check.json");
  CHECK(js.find("\"failed\": 0") != std::string::npos);
  // a corrupted constant fails validation up front
  CHECK(run("check --gravity-m-s2 0").exit_code == 2);
}
