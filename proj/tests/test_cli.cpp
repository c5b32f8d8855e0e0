#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "fixtures.hpp"

namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
};

Outcome run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(WTP_CLI) + " " + args + " 2>/dev/null";
  Outcome result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) result.out += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli exit codes and output") {
  const std::string carpet = fixtures::data_path("carpet.json");
  const std::string sofic = fixtures::data_path("sofic6.json");

  SUBCASE("check on the carpet succeeds") {
    const Outcome o = run_cli("check --config " + carpet);
    CHECK(o.exit_code == 0);
    const auto report = nlohmann::json::parse(o.out);
    CHECK(report["checks_passed"].get<bool>());
  }
  SUBCASE("dimension json") {
    const Outcome o = run_cli("dimension --config " + carpet);
    CHECK(o.exit_code == 0);
    const auto report = nlohmann::json::parse(o.out);
    CHECK(std::abs(report["closed_form"]["hausdorff_dimension"].get<double>() - 1.3497) <= 1e-4);
  }
  SUBCASE("table format") {
    const Outcome o = run_cli("estimate --config " + sofic + " --n-max 3 --format table");
    CHECK(o.exit_code == 0);
    CHECK(o.out.find("Fekete bound") != std::string::npos);
  }
  SUBCASE("validation error exits 1") {
    const std::string bad = write_temp(
        "wtp_bad.json",
        R"({"system": {"sponge": {"bases": [2, 3], "digits": [[0, 0]]}}, "exponents": [0.1, 0.2]})");
    CHECK(run_cli("entropy --config " + bad).exit_code == 1);
    CHECK(run_cli("entropy --config /nonexistent.json").exit_code == 1);
    CHECK(run_cli("frobnicate --config " + carpet).exit_code == 1);
  }
  SUBCASE("computation errors exit 2") {
    CHECK(run_cli("variational --config " + sofic).exit_code == 2);
    CHECK(run_cli("estimate --config " + sofic, "WTP_BUDGET=100").exit_code == 2);
    const std::string capped = write_temp(
        "wtp_capped.json",
        R"({"system": {"sponge": {"bases": [2, 3], "digits": [[0, 0], [1, 1], [0, 2]]}},
            "optimizer": {"max_iters": 2}})");
    const Outcome o = run_cli("variational --config " + capped);
    CHECK(o.exit_code == 2);
    // the best value found is still reported
    CHECK(nlohmann::json::parse(o.out)["variational"]["iterations"] == 2);
  }
  SUBCASE("invalid budget variable") {
    CHECK(run_cli("entropy --config " + carpet, "WTP_BUDGET=lots").exit_code == 1);
  }
}
