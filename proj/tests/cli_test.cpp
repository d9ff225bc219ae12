#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "ivol/weighted.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(IVOL_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    result.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("volumes subcommand emits the cube sequence as CSV") {
  const RunResult r = run_cli("volumes --cube 2 1");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "i,V");
  CHECK(lines[1] == "0,1");
  CHECK(lines[2] == "1,2");
  CHECK(lines[3] == "2,1");
}

TEST_CASE("volumes JSON output round-trips the body spec") {
  const RunResult r = run_cli("volumes --ball 3 2 --kind rotation --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const ivol::BodySpec body = ivol::BodySpec::from_json(j.at("body").dump());
  CHECK(body.dimension() == 3);
  const ivol::LogSequence expect = ivol::to_rotation(ivol::intrinsic_ball(3, 2.0));
  REQUIRE(j.at("values").size() == 4);
  for (int i = 0; i <= 3; ++i) {
    const double want = std::exp(expect.log_values[i]);
    CHECK(j.at("values")[i].get<double>() == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("buffon subcommand reproduces the balanced needle") {
  const RunResult r = run_cli("buffon --ratio 0.7853981634");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("p,", 0) == 0);
  const double p = std::stod(lines[0].substr(2));
  CHECK(p == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("distribution subcommand normalizes the pmf") {
  const RunResult r = run_cli("distribution --cube 2 1 --kind rotation --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  double total = 0.0;
  for (const auto& p : j.at("pmf")) total += p.get<double>();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j.at("delta").get<double>() > 0.0);
}

TEST_CASE("phase subcommand reports location and width") {
  const RunResult r =
      run_cli("phase --functional randproj --cube 32 3.19 --alpha 0.01 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("functional") == "randproj");
  CHECK(j.at("location").get<double>() > 0.0);
  CHECK(j.at("width").get<double>() > 0.0);
  CHECK(j.at("points").size() == 33);
}

TEST_CASE("sweep emits exactly the grid rows in order") {
  const RunResult r = run_cli(
      "sweep --functional kinematic --family cube --n 4 --grid 0.5:2:4 --grid2 1:2:3 "
      "--alpha 0.1");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 1 + 4 * 3);
  CHECK(lines[0] == "functional,n,param1,param2,m,value,classification");
  // rows are sorted lexicographically by (param1, param2)
  std::vector<std::pair<double, double>> params;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream ss(lines[i]);
    std::string field;
    std::getline(ss, field, ',');
    CHECK(field == "kinematic");
    std::getline(ss, field, ',');
    CHECK(field == "4");
    double p1, p2;
    std::getline(ss, field, ',');
    p1 = std::stod(field);
    std::getline(ss, field, ',');
    p2 = std::stod(field);
    params.emplace_back(p1, p2);
  }
  CHECK(std::is_sorted(params.begin(), params.end()));
}

TEST_CASE("single-body sweep requires m and produces one row per scale") {
  const RunResult r =
      run_cli("sweep --functional randproj --family ball --n 8 --grid 0.5:4:8 --m 4");
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.out).size() == 9);
  const RunResult missing =
      run_cli("sweep --functional randproj --family ball --n 8 --grid 0.5:4:8");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("mc-verify requires a seed and is reproducible") {
  const RunResult missing = run_cli("mc-verify --n 4 --m 2 --samples 200");
  CHECK(missing.exit_code == 2);
  const RunResult a = run_cli("mc-verify --n 4 --m 2 --samples 200 --seed 42");
  const RunResult b = run_cli("mc-verify --n 4 --m 2 --samples 200 --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("samples") == 200);
  CHECK(std::abs(j.at("estimate").get<double>() - j.at("exact").get<double>()) <=
        5.0 * j.at("std_error").get<double>());
}

TEST_CASE("usage and domain failures use distinct exit codes") {
  CHECK(run_cli("volumes --cube 2").exit_code == 2);          // malformed flag arity
  CHECK(run_cli("nonsense").exit_code != 0);                  // unknown subcommand
  CHECK(run_cli("volumes --ball 0 1").exit_code == 1);        // invalid dimension
  CHECK(run_cli("volumes --cube 2 1 --kind sideways").exit_code == 2);
}
