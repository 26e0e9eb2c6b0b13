#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "kreinspec/io.hpp"

#ifndef KREINSPEC_CLI_PATH
#error "KREINSPEC_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(KREINSPEC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("cli_fixture_") + name;
  std::ofstream f(path);
  REQUIRE(f.good());
  f << content;
  return path;
}

const char* kFourLevelMatrix =
    "# four-level model, a0 = 1, A = 0.5+0.3i, B = 0.2-0.1i\n"
    "dim 4\n"
    "1 0 -0.1+0.2i 0.3+0.5i\n"
    "0 1 -0.3+0.5i 0.1+0.2i\n"
    "0.1+0.2i -0.3-0.5i -1 0\n"
    "0.3-0.5i -0.1+0.2i 0 -1\n";

const char* kIndefiniteMetric =
    "dim 4\n"
    "1 0 0 0\n"
    "0 -1 0 0\n"
    "0 0 -1 0\n"
    "0 0 0 1\n";

}  // namespace

TEST_CASE("analyze a four-level matrix with its indefinite metric") {
  const std::string mat = write_temp("h.mat", kFourLevelMatrix);
  const std::string met = write_temp("eta.mat", kIndefiniteMetric);
  const RunResult r = run_cli("analyze " + mat + " --metric " + met);
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Anticommute") != std::string::npos);
  CHECK(r.output.find("pt doublets (2)") != std::string::npos);
  CHECK(r.output.find("Unbroken") != std::string::npos);
  CHECK(r.output.find("krein") != std::string::npos);
}

TEST_CASE("analyze a Hermitian matrix without a metric") {
  const std::string mat = write_temp("herm.mat",
                                     "dim 2\n"
                                     "1 0.5+0.5i\n"
                                     "0.5-0.5i 2\n");
  const RunResult r = run_cli("analyze " + mat);
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("pt doublets: none") != std::string::npos);
  CHECK(r.output.find("PositiveDefinite") != std::string::npos);
}

TEST_CASE("analyze a Jordan block exits 3 naming the failure") {
  const std::string mat = write_temp("jordan.mat",
                                     "dim 2\n"
                                     "0 1\n"
                                     "0 0\n");
  const RunResult r = run_cli("analyze " + mat);
  INFO(r.output);
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("efective") != std::string::npos);  // Defective/defective
}

TEST_CASE("analyze with a malformed file exits 2") {
  const std::string mat = write_temp("bad.mat", "dim 2\n1 2\n3\n");
  const RunResult r = run_cli("analyze " + mat);
  CHECK(r.exit_code == 2);
  const RunResult missing = run_cli("analyze does_not_exist.mat");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("reports are reproducible and --out mirrors stdout") {
  const std::string mat = write_temp("h3.mat", kFourLevelMatrix);
  const std::string met = write_temp("eta3.mat", kIndefiniteMetric);
  const std::string out = "cli_fixture_report.txt";
  const RunResult a = run_cli("analyze " + mat + " --metric " + met + " --out " + out);
  const RunResult b = run_cli("analyze " + mat + " --metric " + met + " --out " + out);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);  // bit-for-bit reproducible

  std::ifstream f(out);
  REQUIRE(f.good());
  std::stringstream file_content;
  file_content << f.rdbuf();
  CHECK(file_content.str() == a.output);

  // the matrix echo at the end of the report re-reads to the same entries
  const std::size_t echo = a.output.find("dim 4");
  REQUIRE(echo != std::string::npos);
  std::istringstream echo_in(a.output.substr(echo));
  const kreinspec::ComplexMatrix round = kreinspec::read_matrix(echo_in, "<echo>");
  std::ifstream orig_in(mat);
  const kreinspec::ComplexMatrix orig = kreinspec::read_matrix(orig_in, mat);
  CHECK(round == orig);
}

TEST_CASE("json analyze output is machine readable") {
  const std::string mat = write_temp("h2.mat", kFourLevelMatrix);
  const std::string met = write_temp("eta2.mat", kIndefiniteMetric);
  const RunResult r = run_cli("analyze " + mat + " --metric " + met + " --json");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"doublets\"") != std::string::npos);
  CHECK(r.output.find("\"Anticommute\"") != std::string::npos);
}

TEST_CASE("fourlevel command: unbroken, broken, exceptional") {
  const RunResult ok = run_cli("fourlevel --a0 1 --A 0.5+0.3i --B 0.2-0.1i");
  INFO(ok.output);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("Omega") != std::string::npos);
  CHECK(ok.output.find("abnormal relations") != std::string::npos);
  CHECK(ok.output.find("[ok]") != std::string::npos);

  const RunResult broken = run_cli("fourlevel --a0 0 --A 0 --B 1");
  CHECK(broken.exit_code == 3);
  CHECK(broken.output.find("Broken") != std::string::npos);

  const RunResult ep = run_cli("fourlevel --a0 0 --A 1 --B 1");
  CHECK(ep.exit_code == 3);
  CHECK(ep.output.find("ExceptionalPoint") != std::string::npos);
}

TEST_CASE("sweep locates the phase boundary") {
  const std::string out = "cli_fixture_sweep.dat";
  const RunResult r =
      run_cli("sweep --a0 0 --A 1 --B 1 --axis absB --range 0:2 --steps 201 --out " + out);
  INFO(r.output);
  CHECK(r.exit_code == 0);

  std::ifstream f(out);
  REQUIRE(f.good());
  std::string line, ep_line;
  int rows = 0;
  while (std::getline(f, line)) {
    if (line.rfind("EP ", 0) == 0) ep_line = line;
    if (!line.empty() && line[0] != '#' && line.rfind("EP", 0) != 0) ++rows;
  }
  CHECK(rows == 201);
  REQUIRE_FALSE(ep_line.empty());
  const double loc = std::stod(ep_line.substr(3));
  CHECK(std::abs(loc - 1.0) <= 1e-8);
}

TEST_CASE("sweep rejects bad axis and empty range with exit 2") {
  CHECK(run_cli("sweep --a0 0 --A 1 --B 1 --axis bogus --range 0:2").exit_code == 2);
  CHECK(run_cli("sweep --a0 0 --A 1 --B 1 --axis absB --range 1:1").exit_code == 2);
}

TEST_CASE("argA sweep leaves the discriminant constant") {
  const RunResult r = run_cli("sweep --a0 0.5 --A 1+0.5i --B 0.3 --axis argA --range 0:6 --steps 7");
  CHECK(r.exit_code == 0);
  // every non-comment row carries the same D value (up to rounding in |A|^2)
  double first_d = 0.0;
  bool have_first = false;
  std::istringstream in(r.output);
  std::string t, d, phase, line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("EP", 0) == 0) continue;
    std::istringstream row(line);
    row >> t >> d >> phase;
    if (!have_first) {
      first_d = std::stod(d);
      have_first = true;
    } else {
      CHECK(std::abs(std::stod(d) - first_d) < 1e-12);
    }
  }
  CHECK(have_first);
}

TEST_CASE("selftest passes and honours an injected tolerance") {
  const RunResult ok = run_cli("selftest");
  INFO(ok.output);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS") != std::string::npos);
  CHECK(ok.output.find("FAIL") == std::string::npos);

  const RunResult strict = run_cli("selftest --rtol 1e-30");
  CHECK(strict.exit_code == 1);
  CHECK(strict.output.find("FAIL") != std::string::npos);

  const RunResult json = run_cli("selftest --json");
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("environment variable sets the tolerance, flag wins") {
  // env alone: absurdly tight tolerance makes selftest fail
  {
    const std::string cmd = std::string("KREINSPEC_RTOL=1e-30 ") + KREINSPEC_CLI_PATH +
                            " selftest > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
  }
  // the flag overrides the env back to a sane value (loose enough for the
  // bisection bracket, which is only refined to 1e-8)
  {
    const std::string cmd = std::string("KREINSPEC_RTOL=1e-30 ") + KREINSPEC_CLI_PATH +
                            " selftest --rtol 1e-6 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
  }
}
