#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "wtp/config.hpp"
#include "wtp/report.hpp"

using namespace wtp;
using fixtures::code_of;
using json = nlohmann::json;

namespace {

const char* kCarpet = R"({"system": {"sponge": {"bases": [2, 3], "digits": [[0, 0], [1, 1], [0, 2]]}}})";

}  // namespace

TEST_CASE("carpet config parses with defaults") {
  const RunConfig c = parse_config_text(kCarpet);
  CHECK_FALSE(c.chain.is_sofic());
  CHECK(c.chain.system().size() == 3);
  CHECK(c.exponents[0] == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-15));
  CHECK(c.estimator.n_max == 12);
  CHECK(c.estimator.budget == 10'000'000);
  CHECK(c.optimizer.tolerance == 1e-12);
  CHECK_FALSE(c.potential.has_value());
}

TEST_CASE("sofic config parses and the graph is right-resolving") {
  const RunConfig c = fixtures::sofic6();
  CHECK(c.chain.is_sofic());
  CHECK(c.chain.graph()->vertices.size() == 3);
  CHECK(c.chain.graph()->edges.size() == 26);
  CHECK_NOTHROW(check_right_resolving(*c.chain.graph()));
}

TEST_CASE("config errors") {
  auto code = [](const std::string& text) { return code_of([&] { parse_config_text(text); }); };
  CHECK(code("{") == ErrorCode::ParseError);
  CHECK(code("[]") == ErrorCode::ParseError);
  CHECK(code("{}") == ErrorCode::ParseError);
  CHECK(code(R"({"system": {"sponge": {"bases": [2, 3]}}})") == ErrorCode::ParseError);
  CHECK(code(R"({"system": {"sponge": {"bases": [2, 3], "digits": [[0, "x"]]}}})") ==
        ErrorCode::ParseError);
  CHECK(code(R"({"system": {"torus": {}}})") == ErrorCode::ParseError);
  // exponent list of the wrong length
  CHECK(code(R"({"system": {"sponge": {"bases": [2, 3], "digits": [[0, 0]]}}, "exponents": [0.5, 0.5]})") ==
        ErrorCode::ValidationError);
  CHECK(code(R"({"system": {"sponge": {"bases": [2, 3], "digits": [[0, 0]]}}, "exponents": [1.5]})") ==
        ErrorCode::ValidationError);
  CHECK(code(R"({"system": {"sponge": {"bases": [3, 2], "digits": [[0, 0]]}}})") ==
        ErrorCode::ValidationError);
  CHECK(code(R"({"system": {"sofic": {"bases": [2, 2], "vertices": ["a"],
                "edges": [["a", "b", [0, 0]]]}}})") == ErrorCode::ParseError);
  CHECK(code(R"({"system": {"sofic": {"bases": [2, 2], "vertices": ["a", "b"],
                "edges": [["a", "b", [0, 0]], ["a", "a", [0, 0]], ["b", "a", [0, 0]]]}}})") ==
        ErrorCode::ValidationError);

  try {
    parse_config_text(R"({"system": {"sponge": {"bases": [2, 3], "digits": [[0, 0], [1, true]]}}})");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/system/sponge/digits/1/1") != std::string::npos);
  }
}

TEST_CASE("potential tables") {
  const RunConfig c = parse_config_text(R"({
    "system": {"sponge": {"bases": [2, 3], "digits": [[0, 0], [1, 1], [0, 2]]}},
    "potential": {"window": 1, "table": [{"word": [[0, 0]], "value": 1.0}], "default": 0.0}
  })");
  REQUIRE(c.potential.has_value());
  CHECK(c.potential->window() == 1);
  CHECK(c.potential->at(0) == 1.0);
  CHECK(c.potential->at(1) == 0.0);
  CHECK(code_of([] {
          parse_config_text(R"({
            "system": {"sponge": {"bases": [2, 3], "digits": [[0, 0], [1, 1]]}},
            "potential": {"window": 1, "table": [{"word": [[0, 0]], "value": 1.0}]}})");
        }) == ErrorCode::ValidationError);
}

TEST_CASE("report commands") {
  const RunConfig carpet = parse_config_text(kCarpet);
  SUBCASE("dimension") {
    const Report r = run(carpet, Command::Dimension);
    CHECK(std::abs(r.body["closed_form"]["hausdorff_dimension"].get<double>() - 1.3497) <= 1e-4);
    CHECK(std::abs(r.body["closed_form"]["minkowski_dimension"].get<double>() - 1.3691) <= 1e-4);
    CHECK(r.body["provenance"]["config"] == carpet.echo);
  }
  SUBCASE("entropy on the sofic chain warns about the two readings") {
    const Report r = run(fixtures::sofic6(), Command::Entropy);
    CHECK(std::abs(r.body["closed_form"]["h_a_nats"].get<double>() - 1.4598) <= 5e-5);
    CHECK(r.body["closed_form"].contains("h_over_log_m1"));
    CHECK(r.body["warnings"].size() == 1);
  }
  SUBCASE("check passes on the carpet") {
    const Report r = run(carpet, Command::Check);
    CHECK(r.status == RunStatus::Ok);
    CHECK(r.body["checks_passed"].get<bool>());
  }
  SUBCASE("variational") {
    const Report r = run(carpet, Command::Variational);
    CHECK(std::abs(r.body["variational"]["gap_to_closed_form"].get<double>()) <= 1e-6);
    CHECK(code_of([] { run(fixtures::sofic6(), Command::Variational); }) ==
          ErrorCode::UnsupportedCombination);
  }
  SUBCASE("estimate with table rendering") {
    const RunConfig c = with_estimator(carpet, {4, 10'000'000});
    const Report r = run(c, Command::Estimate);
    CHECK(r.body["estimate_series"].size() == 4);
    CHECK(r.body["provenance"]["config"]["estimator"]["n_max"] == 4);
    const std::string table = render_table(r.body);
    CHECK(table.find("Fekete bound") != std::string::npos);
  }
  SUBCASE("non-aligned sofic chain falls back to the estimator") {
    const RunConfig c = parse_config_text(R"({
      "system": {"sofic": {"bases": [2, 2], "vertices": ["a", "b"],
        "edges": [["a", "a", [0, 0]], ["b", "b", [0, 0]], ["a", "a", [1, 0]],
                  ["a", "b", [1, 1]], ["b", "b", [1, 0]]]}},
      "estimator": {"n_max": 5}})");
    const Report r = run(c, Command::Entropy);
    CHECK_FALSE(r.body.contains("closed_form"));
    CHECK(r.body["estimate_series"].size() == 5);
    CHECK(r.body["warnings"].size() == 1);
  }
}

TEST_CASE("round trip: the echo reproduces the report bit for bit") {
  for (const RunConfig& c : {parse_config_text(kCarpet), fixtures::sofic6()}) {
    const RunConfig small = with_estimator(c, {5, 10'000'000});
    for (Command cmd : {Command::Entropy, Command::Dimension, Command::Estimate}) {
      const Report first = run(small, cmd);
      const RunConfig again = parse_config(first.body["provenance"]["config"]);
      const Report second = run(again, cmd);
      CHECK(first.body.dump() == second.body.dump());
    }
  }
}

TEST_CASE("command names") {
  for (Command c : {Command::Entropy, Command::Dimension, Command::Estimate, Command::Variational,
                    Command::Check}) {
    CHECK(parse_command(to_string(c)) == c);
  }
  CHECK_FALSE(parse_command("plot").has_value());
}
