#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

TEST_SUITE_BEGIN("cli");

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const char* bin = std::getenv("TMSNS_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "TMSNS_CLI must point at the built binary");
  const std::string cmd = env_prefix + std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& out) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream ss(out);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double footer_value(const std::string& out, const std::string& key) {
  const std::string needle = "# " + key + "=";
  const auto pos = out.find(needle);
  REQUIRE_MESSAGE(pos != std::string::npos, ("missing footer key " + key).c_str());
  return std::stod(out.substr(pos + needle.size()));
}

}  // namespace

TEST_CASE("schmidt rows match the squeezed-vacuum values") {
  const RunResult r = run_cli("schmidt --na 0 --nb 0 --lambda 0.5 --count 3");
  CHECK(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);  // header + 3 data rows
  CHECK(rows[0] == std::vector<std::string>{"m", "C_m", "C_m_squared"});
  CHECK(std::stod(rows[1][1]) == doctest::Approx(0.8660254037844386).epsilon(1e-15));
  CHECK(std::stod(rows[1][2]) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::stod(rows[2][2]) == doctest::Approx(0.1875).epsilon(1e-15));
  CHECK(std::stod(rows[3][2]) == doctest::Approx(0.046875).epsilon(1e-15));
  CHECK(footer_value(r.out, "tail_mass") == doctest::Approx(0.015625).epsilon(1e-12));
  CHECK(r.out.find("# schema_version=1") != std::string::npos);
}

TEST_CASE("schmidt at lambda 0 is a point mass at N_B") {
  const RunResult r = run_cli("schmidt --na 1 --nb 1 --lambda 0 --count 3");
  CHECK(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[1][2]) == 0.0);
  CHECK(std::stod(rows[2][2]) == 1.0);
  CHECK(std::stod(rows[3][2]) == 0.0);
}

TEST_CASE("json output carries the same values under schema v1") {
  const RunResult r = run_cli("schmidt --na 0 --nb 0 --lambda 0.5 --count 3 --format json");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema_version"] == "1");
  CHECK(doc["command"] == "schmidt");
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["C_m_squared"].get<double>() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(doc["footer"]["tail_mass"].get<double>() == doctest::Approx(0.015625).epsilon(1e-12));
}

TEST_CASE("output is byte-identical across runs") {
  const std::string cmd = "majorize --pair 1,0:1,1 --lambda 0.37";
  CHECK(run_cli(cmd).out == run_cli(cmd).out);
}

TEST_CASE("a margin inside the slack band exits 4") {
  // one ulp above the p10/p11 boundary at 1/sqrt(2): the first partial-sum
  // difference is a few ulp negative, far inside the slack
  const RunResult r = run_cli("majorize --pair 1,0:1,1 --lambda 0.70710678118654763");
  CHECK(r.exit_code == 4);
  CHECK(r.out.find("Undecided") != std::string::npos);
}

TEST_CASE("pair scans report their bracket") {
  const RunResult r = run_cli("scan --pair 0,0:1,0 --lambda-max 0.9 --grid 5");
  CHECK(r.exit_code == 0);
  CHECK(footer_value(r.out, "boundary_low") == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(footer_value(r.out, "boundary_high") == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(r.out.find("# method=empirical-majorization") != std::string::npos);
}

TEST_CASE("the negative-binomial check rides on the schmidt subcommand") {
  const RunResult ok = run_cli("schmidt --na 3 --nb 0 --lambda 0.6 --count 40 --nb-check");
  CHECK(ok.exit_code == 0);
  CHECK(footer_value(ok.out, "negative_binomial_max_dev") < 1e-10);
  CHECK(run_cli("schmidt --na 1 --nb 1 --lambda 0.4 --nb-check").exit_code == 2);
}

TEST_CASE("majorize exit codes follow the verdict") {
  const RunResult ok = run_cli("majorize --pair 1,0:1,1 --lambda 0.5");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("Majorizes") != std::string::npos);

  const RunResult rev = run_cli("majorize --pair 1,1:1,0 --lambda 0.5");
  CHECK(rev.exit_code == 1);
  CHECK(rev.out.find("DoesNotMajorize") != std::string::npos);

  const RunResult wider = run_cli("majorize --pair 0,0:1,1 --lambda 0.66");
  CHECK(wider.exit_code == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("majorize --pair bogus --lambda 0.5").exit_code == 2);
  CHECK(run_cli("majorize --pair 1,0:1,1 --lambda 1.0").exit_code == 2);
  CHECK(run_cli("schmidt --na 0 --nb 0").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("scan --lambda-max 0.9").exit_code == 2);  // neither family nor pair
}

TEST_CASE("numeric failures exit 3") {
  CHECK(run_cli("schmidt --na 0 --nb 0 --lambda 0.9999").exit_code == 3);
}

TEST_CASE("witness scan brackets the first threshold") {
  const RunResult r = run_cli("scan --family a10-11 --tol 1e-4");
  CHECK(r.exit_code == 0);
  CHECK(footer_value(r.out, "boundary_low") == doctest::Approx(0.54119610).epsilon(3e-4));
  CHECK(footer_value(r.out, "closed_form_threshold") ==
        doctest::Approx(0.54119610014619698).epsilon(1e-12));
}

TEST_CASE("scanning the always-stochastic family reports no sign change") {
  const RunResult r = run_cli("scan --family d --tol 1e-4");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("no-sign-change") != std::string::npos);
}

TEST_CASE("witness subcommand checks stochasticity and the identity") {
  const RunResult ok = run_cli("witness --family a-prime --lambda 0.6 --verify");
  CHECK(ok.exit_code == 0);
  CHECK(footer_value(ok.out, "max_deviation") < 1e-10);
  CHECK(ok.out.find("# identity_ok=true") != std::string::npos);
  CHECK(ok.out.find("# verify_pair=0,0:1,1") != std::string::npos);

  const RunResult bad = run_cli("witness --family a10-11 --lambda 0.6");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("# first_negative_row=1") != std::string::npos);
}

TEST_CASE("deconvolve rediscovers the chain witness") {
  const RunResult r = run_cli("deconvolve --pair 0,0:1,0 --lambda 0.5 --size 8");
  CHECK(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 9);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(std::stod(rows[2][1]) == doctest::Approx(0.1875).epsilon(1e-13));
  CHECK(footer_value(r.out, "roundtrip_max_dev") < 1e-13);
}

TEST_CASE("oracle-check passes on a mixed label") {
  const RunResult r = run_cli("oracle-check --na 2 --nb 1 --lambda 0.4 --cutoff 80");
  CHECK(r.exit_code == 0);
  CHECK(footer_value(r.out, "max_dev") < 1e-9);
  CHECK(footer_value(r.out, "off_band_max") < 1e-12);
}

TEST_CASE("config file sets defaults and flags override them") {
  const std::string path = "/tmp/tmsns_test_config.txt";
  {
    std::ofstream f(path);
    f << "# defaults for the boundary study\n";
    f << "eps_tail = 1e-6\n";
  }
  const std::string env = "TMSNS_CONFIG=" + path + " ";
  const RunResult r = run_cli("majorize --pair 1,0:1,1 --lambda 0.4", env);
  CHECK(r.exit_code == 0);
  const auto pos = r.out.find("eps_tail=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 9)) == doctest::Approx(1e-6).epsilon(1e-12));

  const RunResult over = run_cli("majorize --pair 1,0:1,1 --lambda 0.4 --eps-tail 1e-12", env);
  const auto pos2 = over.out.find("eps_tail=");
  REQUIRE(pos2 != std::string::npos);
  CHECK(std::stod(over.out.substr(pos2 + 9)) == doctest::Approx(1e-12).epsilon(1e-12));

  CHECK(run_cli("schmidt --na 0 --nb 0 --lambda 0.5",
                "TMSNS_CONFIG=/tmp/tmsns_missing_config ")
            .exit_code == 2);
  std::remove(path.c_str());
}

TEST_SUITE_END();
