#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using locglob::cli::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = locglob::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json results(const Outcome& o) { return Json::parse(o.out)["results"]; }

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

}  // namespace

TEST(Cli, H1Builtin) {
  const Outcome o = call({"h1", "--builtin", "mu8"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(results(o)["structure"], Json::array({2}));
  EXPECT_TRUE(o.err.empty());
}

TEST(Cli, H1FromFile) {
  const std::string path = temp_path("klein.json");
  write_file(path, R"({"group": "V4", "invariant_factors": [2]})");
  const Outcome o = call({"h1", "--input", path});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(results(o)["order"], 4);
  const Outcome star = call({"h1star", "--input", path});
  EXPECT_EQ(results(star)["order"], 1);
}

TEST(Cli, Hasse) {
  const Outcome o = call({"hasse", "--builtin", "mu8", "--t", "", "--t", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = results(o);
  EXPECT_EQ(r["hasse"], true);
  EXPECT_EQ(r["strong_hasse"], false);
  EXPECT_EQ(r["queries"][0]["t_singular"], false);
  EXPECT_EQ(r["queries"][1]["t_singular"], true);
  EXPECT_EQ(r["queries"][1]["witness_place"], "2");
  EXPECT_EQ(r["weak_approximation"][1]["surjective"], false);
}

TEST(Cli, GrunwaldWang) {
  const Outcome o = call({"gw", "--n", "8", "--t", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(results(o)["witness"], "16");
  EXPECT_EQ(results(call({"gw", "--n", "8", "--t", "3,5"}))["kernel_order"], 1);
}

TEST(Cli, PowerExitCodes) {
  EXPECT_EQ(call({"power", "--a", "16", "--n", "8", "--place", "17"}).code, 0);
  EXPECT_EQ(call({"power", "--a", "16", "--n", "8", "--place", "2"}).code, 1);
  EXPECT_EQ(call({"power", "--a", "-1", "--n", "2", "--place", "inf"}).code, 1);
  EXPECT_EQ(call({"power", "--a=-1", "--n", "2", "--place", "5"}).code, 0);
}

TEST(Cli, Hilbert) {
  const Outcome o = call({"hilbert", "--a", "3", "--b", "5", "--place", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(results(o)["symbol"], -1);
  EXPECT_EQ(results(o)["product"], 1);
}

TEST(Cli, EllipticDivisibility) {
  EXPECT_EQ(call({"ec-div", "--place", "3"}).code, 0);
  EXPECT_EQ(call({"ec-div", "--place", "2"}).code, 1);
  EXPECT_EQ(call({"ec-div", "--place", "inf"}).code, 0);
  EXPECT_EQ(call({"ec-div"}).code, 1);
  const Outcome halves = call({"ec-div", "--halve"});
  ASSERT_EQ(halves.code, 0);
  EXPECT_EQ(results(halves)["halves"].size(), 4U);
  EXPECT_EQ(call({"ec-div", "--point", "O", "--place", "2", "--m", "2"}).code, 0);
}

TEST(Cli, QuadRoots) {
  const std::vector<std::string> base{"quadroots", "--poly", "0,1", "--poly", "0,5", "--poly", "0,-5", "--p"};
  auto with = [&](const std::string& p) {
    auto a = base;
    a.push_back(p);
    return call(a).code;
  };
  EXPECT_EQ(with("2"), 1);
  EXPECT_EQ(with("inf"), 0);
  EXPECT_EQ(with("41"), 0);
}

TEST(Cli, InvalidInputExitsTwoWithNothingOnStdout) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"nonsense"},
           {"power", "--a", "0", "--n", "2", "--place", "3"},
           {"power", "--a", "x", "--n", "2", "--place", "3"},
           {"power", "--a", "2", "--n", "2", "--place", "6"},
           {"gw", "--n", "8", "--t", "4"},
           {"h1", "--input", "/nonexistent/file.json"},
           {"h1"},
           {"ec-div", "--point", "1,1"},
           {"hasse", "--builtin", "mu8", "--t", "7"},
           {"h1", "--builtin", "mu8", "--format", "yaml"},
       }) {
    const Outcome o = call(args);
    EXPECT_EQ(o.code, 2) << (args.empty() ? "" : args.front());
    EXPECT_TRUE(o.out.empty());
    EXPECT_FALSE(o.err.empty());
  }
  const std::string path = temp_path("bad.json");
  write_file(path, "{not json");
  EXPECT_EQ(call({"h1", "--input", path}).code, 2);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"hasse", "--builtin", "mu8", "--t", "2,inf"};
  EXPECT_EQ(call(args).out, call(args).out);
  auto text = args;
  text.insert(text.end(), {"--format", "text"});
  const Outcome t = call(text);
  EXPECT_NE(t.out.find("results.strong_hasse: false\n"), std::string::npos);
  EXPECT_EQ(t.out.find("elapsed"), std::string::npos);
  auto timed = args;
  timed.push_back("--timing");
  EXPECT_TRUE(results(call(timed)).contains("elapsed_seconds"));
}

TEST(Cli, PrecisionFlagAndEnvironment) {
  const std::vector<std::string> args{"power", "--a", "2", "--n", "2", "--place", "7"};
  auto flagged = args;
  flagged.insert(flagged.begin(), {"--precision", "40"});
  EXPECT_EQ(Json::parse(call(flagged).out)["inputs"]["precision"], 40);
  setenv("LOCGLOB_PRECISION", "96", 1);
  EXPECT_EQ(Json::parse(call(args).out)["inputs"]["precision"], 96);
  unsetenv("LOCGLOB_PRECISION");
}

TEST(Cli, ReproduceAgainstGolden) {
  const Outcome o = call({"reproduce"});
  ASSERT_EQ(o.code, 0) << o.out << o.err;
  EXPECT_EQ(Json::parse(o.out)["checks_failed"], 0);
}

TEST(Cli, OracleModeReproducesGoldenFile) {
  const Outcome o = call({"reproduce", "--oracle"});
  ASSERT_EQ(o.code, 0);
  std::ifstream f(LOCGLOB_GOLDEN_PATH);
  EXPECT_EQ(Json::parse(o.out), Json::parse(f));
}

TEST(Cli, TamperedGoldenFails) {
  std::ifstream f(LOCGLOB_GOLDEN_PATH);
  Json golden = Json::parse(f);
  golden["entries"]["mu8.h1_star_order"] = 4;
  golden["entries"].erase("quadroots.v=3");
  const std::string path = temp_path("tampered.json");
  write_file(path, golden.dump());
  const Outcome o = call({"reproduce", "--golden", path});
  EXPECT_EQ(o.code, 1);
  const Json failed = Json::parse(o.out)["failed_checks"];
  EXPECT_NE(std::find(failed.begin(), failed.end(), "golden mismatch: mu8.h1_star_order"), failed.end());
  EXPECT_NE(std::find(failed.begin(), failed.end(), "missing golden entry quadroots.v=3"), failed.end());
  write_file(path, R"({"format": 2, "entries": {}})");
  EXPECT_EQ(call({"reproduce", "--golden", path}).code, 2);
}
