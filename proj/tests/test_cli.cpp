#include <doctest.h>

#include "uqlab/cli.hpp"
#include "uqlab/palette.hpp"
#include "uqlab/purity.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace uqlab;
using namespace uqlab::cli;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "uqlab");
  return parse_config(args);
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_in_process(std::vector<std::string> args) {
  args.insert(args.begin(), "uqlab");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the installed tool binary through the shell and captures both streams.
Outcome run_binary(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / "uqlab_cli_test_out.txt";
  const auto err_path = dir / "uqlab_cli_test_err.txt";
  const std::string cmd = std::string("\"") + UQLAB_TOOL_PATH + "\" " + args + " >\"" + out_path.string() +
                          "\" 2>\"" + err_path.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out_path), slurp(err_path)};
}

std::string help_text(std::vector<std::string> args) {
  args.insert(args.begin(), "uqlab");
  try {
    parse_config(args);
  } catch (const HelpRequested& h) {
    return h.text;
  }
  return {};
}

}  // namespace

TEST_CASE("documented invocations parse") {
  const RunConfig g = parse({"game", "--rule", "chsh", "--theory", "all"});
  CHECK(g.subcommand == Subcommand::game);
  CHECK(g.game.rule == games::Rule::chsh);
  CHECK(g.game.theory == TheorySelection::all);

  const RunConfig s = parse({"steer", "--mode", "lg", "--n", "1", "--m", "0"});
  CHECK(s.subcommand == Subcommand::steer);
  CHECK(s.steer.spec.n == 1);
  CHECK(s.steer.spec.m == 0);
  CHECK(s.steer.grid.half_extent == 6.0);
  CHECK(s.steer.grid.points == 201);

  const RunConfig m = parse({"memory", "--state", "werner:0.72", "--obs-r", "sz", "--obs-s", "sx"});
  CHECK(m.subcommand == Subcommand::memory);
  REQUIRE(m.memory.state);
  CHECK((m.memory.state->matrix() - purity::werner_state(0.72).matrix()).norm() < 1e-15);
  CHECK(m.format == report::Format::json);
  CHECK_FALSE(m.seed);
}

TEST_CASE("global flags") {
  const RunConfig c = parse({"--format", "csv", "--seed", "9", "--output", "x.csv", "game"});
  CHECK(c.format == report::Format::csv);
  REQUIRE(c.seed);
  CHECK(*c.seed == 9u);
  CHECK(c.output_path == "x.csv");
  CHECK(parse({"game", "--bias", "0.7"}).game.bias.size() == 2);
  CHECK(parse({"game", "--rule", "box1", "--bias", "1/3,1/2,0.9"}).game.bias[0] == games::Rational(1, 3));
}

TEST_CASE("invalid invocations are usage errors") {
  CHECK_THROWS_AS(parse({}), UsageError);
  CHECK_THROWS_AS(parse({"game", "--bogus"}), UsageError);
  CHECK_THROWS_AS(parse({"game", "--rule", "box7"}), UsageError);
  CHECK_THROWS_AS(parse({"game", "--bias", "0.5,0.5,0.5"}), UsageError);
  CHECK_THROWS_AS(parse({"game", "--bias", "1.5"}), UsageError);
  CHECK_THROWS_AS(parse({"memory"}), UsageError);
  CHECK_THROWS_AS(parse({"memory", "--state", "werner:2"}), UsageError);
  CHECK_THROWS_AS(parse({"memory", "--state", "bell-diagonal:1,1,1"}), UsageError);
  CHECK_THROWS_AS(parse({"memory", "--state", "/nonexistent/state.json"}), UsageError);
  CHECK_THROWS_AS(parse({"steer", "--n", "5", "--m", "3"}), UsageError);
  CHECK_THROWS_AS(parse({"steer", "--grid-points", "10"}), UsageError);
  CHECK_THROWS_AS(parse({"purity", "--state", "singlet", "--sweep-werner", "5"}), UsageError);
  CHECK_THROWS_AS(parse({"purity", "--state", "nope"}), UsageError);
  CHECK_THROWS_AS(parse({"--format", "xml", "game"}), UsageError);
}

TEST_CASE("help lists every documented flag") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
      {"purity", {"--state", "--obs-a", "--obs-b", "--epsilon", "--sweep-werner"}},
      {"steer", {"--mode", "--n", "--m", "--grid-extent", "--grid-points", "--criterion", "--dump-grid"}},
      {"game", {"--rule", "--bias", "--theory", "--mc-rounds"}},
      {"memory", {"--state", "--obs-r", "--obs-s", "--scan-step"}},
  };
  for (const auto& [sub, flags] : expected) {
    const std::string text = help_text({sub, "--help"});
    REQUIRE_MESSAGE(!text.empty(), sub);
    for (const auto& f : flags) CHECK_MESSAGE(text.find(f) != std::string::npos, sub << " " << f);
  }
  const std::string top = help_text({"--help"});
  for (const char* f : {"--format", "--output", "--seed", "purity", "steer", "game", "memory"}) {
    CHECK(top.find(f) != std::string::npos);
  }
}

TEST_CASE("in-process exit codes") {
  const Outcome ok = run_in_process({"game", "--rule", "chsh", "--theory", "classical"});
  CHECK(ok.code == 0);
  const Outcome usage = run_in_process({"game", "--nope"});
  CHECK(usage.code == 2);
  CHECK(usage.err.find("--nope") != std::string::npos);
  const Outcome comp = run_in_process({"steer", "--n", "1", "--grid-extent", "1", "--grid-points", "64"});
  CHECK(comp.code == 1);
  CHECK_FALSE(comp.err.empty());
  CHECK(run_in_process({"game", "--help"}).code == 0);
}

TEST_CASE("chsh report carries three bounds") {
  const Outcome o = run_in_process({"game", "--rule", "chsh", "--theory", "all"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::ordered_json::parse(o.out);
  REQUIRE(j.contains("rhs"));
  REQUIRE(j["rhs"].size() == 3);
  CHECK(j["rhs"][0]["name"] == "classical");
  CHECK(j["rhs"][0]["value"].get<double>() == doctest::Approx(0.75));
  CHECK(j["rhs"][1]["value"].get<double>() == doctest::Approx(0.853553390593274).epsilon(1e-6));
  CHECK(j["rhs"][2]["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("memory and purity reports") {
  const Outcome m = run_in_process({"memory", "--state", "singlet", "--scan-step", "10"});
  REQUIRE(m.code == 0);
  const auto j = nlohmann::ordered_json::parse(m.out);
  CHECK(j["rhs"].size() == 5);
  CHECK(std::abs(j["lhs_value"].get<double>()) < 1e-9);

  const Outcome p = run_in_process({"--format", "table", "purity", "--state", "mixed:2"});
  REQUIRE(p.code == 0);
  CHECK(p.out.find("mixed") != std::string::npos);

  const Outcome s = run_in_process({"--format", "csv", "purity", "--sweep-werner", "5"});
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("report,kind,name,value\n", 0) == 0);
}

TEST_CASE("seeded runs are byte-identical") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--seed", "11", "game", "--rule", "chsh", "--mc-rounds", "20000"},
        std::vector<std::string>{"--seed", "11", "memory", "--state", "werner:0.5", "--scan-step", "10"},
        std::vector<std::string>{"--seed", "11", "purity", "--state", "werner:0.3"}}) {
    const Outcome a = run_in_process(args);
    const Outcome b = run_in_process(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("grid dump and output file") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto grid = dir / "uqlab_cli_grid.csv";
  const auto report = dir / "uqlab_cli_report.json";
  const Outcome o = run_in_process({"--output", report.string(), "steer", "--criterion", "entropic", "--grid-points",
                                    "64", "--dump-grid", grid.string()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  CHECK(nlohmann::ordered_json::parse(slurp(report)).contains("lhs_value"));
  std::ifstream in(grid);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 64 * 64 + 1);
  std::filesystem::remove(grid);
  std::filesystem::remove(report);
}

TEST_CASE("palette") {
  CHECK((palette::observable("sz").matrix() - pauli::z()).norm() < 1e-15);
  CHECK((palette::state("singlet").matrix() - purity::singlet().matrix()).norm() < 1e-15);
  CHECK((palette::state("ghz").matrix() - games::ghz_state().matrix()).norm() < 1e-15);
  CHECK(palette::state("mixed:3").dim() == 3);
  for (int k = 1; k <= 8; ++k) {
    const ComplexMatrix g = palette::gell_mann(k);
    CHECK(std::abs(g.trace()) < 1e-15);
    CHECK((g * g).trace().real() == doctest::Approx(2.0));
  }
  CHECK_THROWS_AS(palette::observable("sq"), palette::PaletteError);
  CHECK_THROWS_AS(palette::state("mixed:0"), palette::PaletteError);

  const auto path = std::filesystem::temp_directory_path() / "uqlab_palette_state.json";
  palette::save_matrix(purity::werner_state(0.4).matrix(), path.string());
  CHECK((palette::state(path.string()).matrix() - purity::werner_state(0.4).matrix()).norm() < 1e-15);
  std::filesystem::remove(path);
}

TEST_CASE("binary exit codes") {
  CHECK(run_binary("game --rule chsh --theory classical").code == 0);
  const Outcome usage = run_binary("game --frobnicate");
  CHECK(usage.code == 2);
  CHECK(usage.err.find("--frobnicate") != std::string::npos);
  CHECK(run_binary("steer --n 1 --grid-extent 1 --grid-points 64").code == 1);
  const Outcome a = run_binary("--seed 3 game --mc-rounds 5000");
  const Outcome b = run_binary("--seed 3 game --mc-rounds 5000");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
