#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "idemsum/cli.hpp"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "idemsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = idemsum::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("idemsum_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("family build with verification") {
  const auto r = run_cli({"family", "build", "--kind", "su2", "--k", "3", "--sign", "minus", "--verify"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["command"] == "family build");
  CHECK(j["pass"] == true);
  CHECK(std::abs(j["family"]["lambda"][0].get<double>() - 4.0 / 3.0) < 1e-15);
  CHECK(j["family"]["params"]["lambda"] == "4/3");
  CHECK(j["seed"] == idemsum::cli::kDefaultSeed);
  CHECK(!j["checks"].empty());
}

TEST_CASE("text outputs") {
  auto r = run_cli({"lambda", "set", "--n", "5", "--kind", "cf2", "--count", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "1, 4/3, 11/8\n");
  r = run_cli({"orbit", "fundamental", "--seed", "9/4", "--depth", "8"});
  CHECK(r.out == "1/4\n");
  r = run_cli({"lambda", "member", "--value", "4/3"});
  CHECK(r.out == "member k=3 sign=minus\n");
  r = run_cli({"lambda", "member", "--value", "2"});
  CHECK(r.out == "center\n");
  r = run_cli({"orbit", "enum", "--seed", "0", "--depth", "1"});
  CHECK(r.out == "0, 1, -1\n");
  r = run_cli({"lambda", "set", "--n", "3", "--kind", "l3", "--count", "9", "--format", "json"});
  CHECK(json::parse(r.out)["terms"] == json::array({"0", "1", "3/2", "2", "3"}));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"family"}).code == 2);
  CHECK(run_cli({"family", "build"}).code == 2);
  CHECK(run_cli({"family", "build", "--kind", "nope"}).code == 2);
  CHECK(run_cli({"lambda", "set", "--kind", "zz", "--count", "3"}).code == 2);
  CHECK(run_cli({"lambda", "member", "--value", "x/y"}).code == 2);
  CHECK(run_cli({"scan", "lambda4", "--grid", "0:1"}).code == 2);
  CHECK(run_cli({"family", "build", "--kind", "su2", "--tol", "-1"}).code == 2);
  const auto r = run_cli({"orbit", "enum", "--seed", "1"});
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("library errors exit 1 with a JSON error") {
  const auto r = run_cli({"family", "build", "--kind", "su2", "--lambda", "7/5"});
  CHECK(r.code == 1);
  const auto j = json::parse(r.out);
  CHECK(j["pass"] == false);
  CHECK(j["error"]["code"] == "NotInLambda4bd");
  const auto w = run_cli({"wild", "build", "--builder", "wild2", "--lambda", "3", "--subdim", "1"});
  CHECK(w.code == 1);
  CHECK(json::parse(w.out)["error"]["code"] == "BadLambda");
}

TEST_CASE("failing checks exit 1") {
  const auto r = run_cli({"family", "build", "--kind", "su2", "--k", "5", "--verify", "--tol", "1e-30"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["pass"] == false);
}

TEST_CASE("save, verify and compare families") {
  const auto a = scratch("a"), b = scratch("b"), c = scratch("c");
  REQUIRE(run_cli({"family", "build", "--kind", "q1", "--y", "1", "--out", a.string()}).code == 0);
  REQUIRE(run_cli({"family", "build", "--kind", "q1", "--y", "2", "--out", b.string()}).code == 0);
  CHECK(std::filesystem::exists(a / "manifest.json"));
  CHECK(std::filesystem::exists(a / "q1.txt"));

  auto r = run_cli({"family", "verify", "--manifest", (a / "manifest.json").string()});
  CHECK(r.code == 0);
  r = run_cli({"equiv", "hom", "--a", a.string(), "--b", a.string(), "--star"});
  CHECK(json::parse(r.out)["dim"] == 1);
  r = run_cli({"equiv", "hom", "--a", a.string(), "--b", b.string(), "--star"});
  CHECK(json::parse(r.out)["dim"] == 0);

  REQUIRE(run_cli({"family", "build", "--kind", "diagphipsi", "--lambda", "0.7,0.3", "--blocks", "6", "--out",
                   c.string()})
              .code == 0);
  r = run_cli({"family", "verify", "--manifest", c.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["family"]["truncated"] == true);

  r = run_cli({"family", "verify", "--manifest", (a / "missing.json").string()});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["error"]["code"] == "Parse");
  for (const auto& p : {a, b, c}) std::filesystem::remove_all(p);
}

TEST_CASE("unitarize and the standard identity from saved families") {
  const auto s = scratch("s"), t = scratch("t");
  REQUIRE(run_cli({"family", "build", "--kind", "su2", "--k", "3", "--sign", "plus", "--out", s.string()}).code == 0);
  auto r = run_cli({"identity", "s4", "--manifest", s.string(), "--trials", "10", "--wordlen", "3"});
  CHECK(r.code == 1);
  REQUIRE(run_cli({"family", "build", "--kind", "su2", "--k", "2", "--sign", "minus", "--out", t.string()}).code == 0);
  r = run_cli({"equiv", "unitarize", "--a", t.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["G_min_eig"].get<double>() > 0.0);
  for (const auto& p : {s, t}) std::filesystem::remove_all(p);
}

TEST_CASE("every family kind builds") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"--kind", "q1"}, {"--kind", "p332"}, {"--kind", "q2perp", "--which", "second"},
        {"--kind", "su2", "--k", "4"}, {"--kind", "diagphipsi", "--lambda", "3/2"},
        {"--kind", "cuntz5", "--lambda", "1+2i", "--N", "16"}, {"--kind", "orbitA40", "--case", "III", "--a", "-1/2"},
        {"--kind", "sl2diff", "--lambda", "3", "--branch", "-1"}}) {
    args.insert(args.begin(), {"family", "build"});
    args.push_back("--verify");
    const auto r = run_cli(args);
    INFO(args[3]);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["pass"] == true);
  }
}

TEST_CASE("wild subcommands") {
  auto r = run_cli({"wild", "build", "--builder", "wild2", "--lambda", "5/2", "--subdim", "1"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["family"]["dim"] == 24);
  r = run_cli({"wild", "fullness", "--builder", "wild1b", "--trials", "4", "--subdim", "2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["trials"].size() == 4);
}

TEST_CASE("scan agrees with membership") {
  const auto r = run_cli({"scan", "lambda4", "--grid", "0:4:1/6"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["points"].size() == 25);
  for (const auto& p : j["points"]) CHECK(p["agree"] == true);
}

TEST_CASE("seeding and determinism") {
  const std::vector<std::string> args{"wild", "fullness", "--builder", "wild1a", "--trials", "3", "--subdim", "3",
                                      "--seed", "99"};
  const auto a = run_cli(args), b = run_cli(args);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["seed"] == 99);

  ::setenv("IDEMSUM_SEED", "1234", 1);
  auto r = run_cli({"wild", "build", "--builder", "wild1a", "--subdim", "1"});
  CHECK(json::parse(r.out)["seed"] == 1234);
  r = run_cli({"wild", "build", "--builder", "wild1a", "--subdim", "1", "--seed", "5"});
  CHECK(json::parse(r.out)["seed"] == 5);
  ::setenv("IDEMSUM_SEED", "oops", 1);
  CHECK(run_cli({"wild", "build", "--builder", "wild1a", "--subdim", "1"}).code == 2);
  ::unsetenv("IDEMSUM_SEED");
}
