#pragma once

// Fine-grained uncertainty and nonlocal retrieval games: single-qubit bound,
// (biased) CHSH and the tripartite full-correlation boxes under classical,
// quantum and no-signaling theories.

#include "uqlab/linalg.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uqlab::games {

/// Exact fraction with a positive denominator, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "3/4", "0.75", "1", "1e-1" is rejected (decimals and integers only).
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

enum class Rule { chsh, box1, box2, box3 };

std::string_view to_string(Rule r);
Rule parse_rule(std::string_view text);
int arity(Rule r);

/// Right-hand side of the winning predicate XOR(outputs) == winning_bit(inputs).
int winning_bit(Rule r, std::span<const int> inputs);

/// Output of each party for input 0 and input 1.
using DeterministicStrategy = std::vector<std::array<int, 2>>;

class GameSpec {
 public:
  /// bias[k] = probability that party k receives input 0. An empty bias
  /// means uniform inputs.
  static GameSpec make(Rule rule, std::vector<Rational> bias = {});

  Rule rule() const { return rule_; }
  int parties() const { return arity(rule_); }
  const std::vector<Rational>& bias() const { return bias_; }
  bool unbiased() const;
  Rational input_probability(std::span<const int> inputs) const;

 private:
  GameSpec(Rule rule, std::vector<Rational> bias) : rule_(rule), bias_(std::move(bias)) {}
  Rule rule_;
  std::vector<Rational> bias_;
};


std::string describe(const DeterministicStrategy& s);

/// Exact bias-weighted winning probability.
Rational classical_value(const GameSpec& spec, const DeterministicStrategy& strategy);

/// Shared state on (C^2)^{parties} and two +-1-valued observables per party.
struct QuantumStrategy {
  DensityMatrix shared_state;
  std::vector<std::array<Observable, 2>> settings;
};

enum class Theory { classical, quantum, nosignaling };
std::string_view to_string(Theory t);

struct GameValueReport {
  double value = 0.0;
  Theory theory = Theory::classical;
  std::optional<Rational> exact_value;
  std::string argmax_strategy;
  std::optional<DeterministicStrategy> classical_argmax;
  long evaluations = 0;
  double final_step = 0.0;  // optimizer step at termination (quantum only)
};

/// A0 B0 + A0 B1 + A1 B0 - A1 B1.
ComplexMatrix chsh_operator(const Observable& a0, const Observable& a1, const Observable& b0, const Observable& b1);
/// pq A0B0 + p(1-q) A0B1 + (1-p)q A1B0 - (1-p)(1-q) A1B1.
ComplexMatrix biased_chsh_operator(double p, double q, const Observable& a0, const Observable& a1,
                                   const Observable& b0, const Observable& b1);
/// The eight-term Svetlichny combination with signs (+ + + + - - - -) over
/// A0B0C0, A0B0C1, A0B1C0, A1B0C0, A0B1C1, A1B0C1, A1B1C0, A1B1C1.
Observable svetlichny_operator(const std::array<Observable, 2>& a, const std::array<Observable, 2>& b,
                               const std::array<Observable, 2>& c);

struct QuantumValue {
  double operator_form = 0.0;  // 1/2 [1 + <correlator operator>]
  double definitional = 0.0;   // sum of bias-weighted projector expectations filtered by V
};

/// Both evaluation routes. Throws DomainError when the strategy does not
/// match the game or an observable is not +-1-valued.
QuantumValue game_value_quantum_routes(const GameSpec& spec, const QuantumStrategy& strat);
/// Returns the operator-form value after checking both routes agree to 1e-10.
double game_value_quantum(const GameSpec& spec, const QuantumStrategy& strat);

/// Exhaustive search over deterministic output tables, first-found argmax in
/// lexicographic table order.
GameValueReport game_value_classical_max(const GameSpec& spec);

/// Planar-setting optimizer on a fixed maximally entangled state: the singlet
/// with cos t sz + sin t sx for two parties, GHZ with cos t sx + sin t sy for
/// three. Coarse 5 degree scan (the last party takes its exact best
/// response), then pattern-search refinement down to a 1e-8 rad step.
GameValueReport game_value_quantum_max(const GameSpec& spec);

/// Value of the box p(outputs|inputs) = 2^{1-k} on outputs satisfying the
/// rule; throws ComputationError if that box fails the no-signaling check.
GameValueReport game_value_nosignaling_max(const GameSpec& spec);

/// Conditional distribution table indexed [inputs][outputs] (bit-packed,
/// party 0 most significant).
using BoxTable = std::vector<std::vector<double>>;
BoxTable winning_box(const GameSpec& spec);
/// Max deviation of any single-party marginal across the other parties'
/// inputs.
double signaling_defect(const BoxTable& box, int parties);

/// Closed-form bounds for biased CHSH after relabeling inputs into p, q >= 1/2.
struct BiasedChshBounds {
  double p = 0.5;
  double q = 0.5;
  bool relabeled_alice = false;
  bool relabeled_bob = false;
  int region = 1;  // 1: p >= 1/(2q), quantum equals classical; 2: otherwise
  double classical = 0.75;
  double quantum = 0.75;
};
BiasedChshBounds biased_chsh_bounds(double p, double q);

struct MonteCarloResult {
  long rounds = 0;
  long wins = 0;
  double frequency = 0.0;
  double standard_error = 0.0;
};

/// Referee simulation of a deterministic strategy with seeded inputs.
MonteCarloResult simulate_referee(const GameSpec& spec, const DeterministicStrategy& strategy, long rounds,
                                  std::uint64_t seed);

struct FineGrainedQubitBound {
  double closed_form = 0.0;  // largest eigenvalue of (P_z^+ + P_x^+)/2
  BlochVector maximizer{};
  double scan_max = 0.0;     // Fibonacci-sphere scan
  BlochVector scan_argmax{};
  int scan_points = 0;
};

/// max over qubit states of 1/2 p(up|sz) + 1/2 p(up|sx).
FineGrainedQubitBound fine_grained_qubit_bound(int scan_points = 10000);

struct BoxDiscriminationRow {
  Rule rule = Rule::box1;
  double classical = 0.0;
  double quantum = 0.0;
  double nosignaling = 0.0;
  bool gap = false;  // quantum - classical > 1e-6
};

std::vector<BoxDiscriminationRow> box_discrimination_report();

/// Fixed entangled states used by the optimizer.
DensityMatrix ghz_state();
DensityMatrix phi_plus();

}  // namespace uqlab::games
