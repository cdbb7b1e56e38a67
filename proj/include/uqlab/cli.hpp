#pragma once

// Command-line front end: argument parsing into a validated RunConfig and
// dispatch to the analysis modules.

#include "uqlab/games.hpp"
#include "uqlab/linalg.hpp"
#include "uqlab/phase_space.hpp"
#include "uqlab/report.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqlab::cli {

/// Bad invocation; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_config for --help; carries the rendered help text.
struct HelpRequested {
  std::string text;
};

enum class Subcommand { purity, steer, game, memory };
enum class Criterion { reid, entropic, both };
enum class TheorySelection { classical, quantum, nosignaling, all };

struct PurityOptions {
  std::string state_name;
  std::optional<DensityMatrix> state;
  std::string obs_a_name;
  std::string obs_b_name;
  std::optional<Observable> obs_a;
  std::optional<Observable> obs_b;
  double epsilon = 1e-3;
  int sweep_werner = 0;
};

struct SteerOptions {
  std::string mode = "lg";
  phase_space::LGModeSpec spec{1, 0};
  phase_space::GridParams grid;
  Criterion criterion = Criterion::both;
  std::string dump_grid;
};

struct GameOptions {
  games::Rule rule = games::Rule::chsh;
  std::vector<games::Rational> bias;  // empty: uniform
  TheorySelection theory = TheorySelection::all;
  long mc_rounds = 0;
};

struct MemoryOptions {
  std::string state_name;
  std::optional<DensityMatrix> state;
  std::string obs_r_name = "sz";
  std::string obs_s_name = "sx";
  std::optional<Observable> obs_r;
  std::optional<Observable> obs_s;
  double scan_step_deg = 2.0;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::purity;
  report::Format format = report::Format::json;
  std::string output_path;
  std::optional<std::uint64_t> seed;
  PurityOptions purity;
  SteerOptions steer;
  GameOptions game;
  MemoryOptions memory;
};

/// Includes the program name as args[0]. Throws UsageError or HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args);

std::vector<report::BoundReport> execute(const RunConfig& config);

/// Full pipeline with exit codes 0 (success), 1 (computation error) and
/// 2 (usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uqlab::cli
