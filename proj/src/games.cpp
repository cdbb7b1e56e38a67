#include "uqlab/games.hpp"

#include "uqlab/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace uqlab::games {

// ---------------------------------------------------------------- Rational

namespace {

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ComputationError("Rational: 64-bit overflow");
  }
  return static_cast<std::int64_t>(v);
}

Rational make_reduced(__int128 num, __int128 den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    const __int128 r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked(num), checked(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw DomainError("cannot parse '" + std::string(text) + "' as a rational number");
    }
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) || frac.size() > 17) {
      throw DomainError("cannot parse '" + std::string(text) + "' as a rational number");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (w < 0 || f < 0) throw DomainError("cannot parse '" + std::string(text) + "' as a rational number");
    const __int128 num = static_cast<__int128>(w) * den + f;
    return make_reduced(negative ? -num : num, den);
  }
  return Rational(parse_int(text));
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                      static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                      static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

// ---------------------------------------------------------------- rules

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::chsh: return "chsh";
    case Rule::box1: return "box1";
    case Rule::box2: return "box2";
    case Rule::box3: return "box3";
  }
  return "?";
}

Rule parse_rule(std::string_view text) {
  for (Rule r : {Rule::chsh, Rule::box1, Rule::box2, Rule::box3}) {
    if (text == to_string(r)) return r;
  }
  throw DomainError("unknown game rule '" + std::string(text) + "'");
}

int arity(Rule r) { return r == Rule::chsh ? 2 : 3; }

int winning_bit(Rule r, std::span<const int> in) {
  if (static_cast<int>(in.size()) != arity(r)) throw DomainError("winning_bit: input count does not match the rule");
  switch (r) {
    case Rule::chsh: return in[0] & in[1];
    case Rule::box1: return (in[0] & in[1]) ^ (in[1] & in[2]) ^ (in[2] & in[0]);
    case Rule::box2: return (in[0] & in[1]) ^ (in[0] & in[2]);
    case Rule::box3: return in[0] & in[1] & in[2];
  }
  return 0;
}

std::string_view to_string(Theory t) {
  switch (t) {
    case Theory::classical: return "classical";
    case Theory::quantum: return "quantum";
    case Theory::nosignaling: return "nosignaling";
  }
  return "?";
}

GameSpec GameSpec::make(Rule rule, std::vector<Rational> bias) {
  const int k = arity(rule);
  if (bias.empty()) bias.assign(k, Rational(1, 2));
  if (static_cast<int>(bias.size()) != k) {
    throw DomainError("rule " + std::string(to_string(rule)) + " needs " + std::to_string(k) +
                      " bias values, got " + std::to_string(bias.size()));
  }
  for (const Rational& b : bias) {
    if (b < Rational(0) || Rational(1) < b) throw DomainError("bias " + b.to_string() + " is outside [0, 1]");
  }
  return GameSpec(rule, std::move(bias));
}

bool GameSpec::unbiased() const {
  return std::all_of(bias_.begin(), bias_.end(), [](const Rational& b) { return b == Rational(1, 2); });
}

Rational GameSpec::input_probability(std::span<const int> inputs) const {
  Rational p(1);
  for (std::size_t k = 0; k < bias_.size(); ++k) p = p * (inputs[k] == 0 ? bias_[k] : Rational(1) - bias_[k]);
  return p;
}

namespace {

std::vector<int> unpack(int bits, int k) {
  std::vector<int> v(k);
  for (int i = 0; i < k; ++i) v[i] = (bits >> (k - 1 - i)) & 1;
  return v;
}

int parity(std::span<const int> bits) {
  int x = 0;
  for (int b : bits) x ^= b;
  return x;
}

}  // namespace

std::string describe(const DeterministicStrategy& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ' ';
    out += static_cast<char>('A' + k);
    out += ":(" + std::to_string(s[k][0]) + "," + std::to_string(s[k][1]) + ")";
  }
  return out;
}

Rational classical_value(const GameSpec& spec, const DeterministicStrategy& strategy) {
  const int k = spec.parties();
  if (static_cast<int>(strategy.size()) != k) throw DomainError("classical_value: strategy arity mismatch");
  Rational total(0);
  for (int bits = 0; bits < (1 << k); ++bits) {
    const auto in = unpack(bits, k);
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) out[i] = strategy[i][in[i]];
    if (parity(out) == winning_bit(spec.rule(), in)) total = total + spec.input_probability(in);
  }
  return total;
}

// ---------------------------------------------------------------- operators

namespace {

ComplexMatrix kron_all(std::initializer_list<const ComplexMatrix*> ops) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const ComplexMatrix* m : ops) out = tensor(out, *m);
  return out;
}

void require_dichotomic(const Observable& o) {
  if (o.dim() != 2) throw DomainError("game observables must act on a qubit");
  const ComplexMatrix sq = o.matrix() * o.matrix();
  if ((sq - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("game observable is not +-1-valued (A^2 != I within 1e-10)");
  }
}

void validate(const GameSpec& spec, const QuantumStrategy& strat) {
  const int k = spec.parties();
  if (static_cast<int>(strat.settings.size()) != k) {
    throw DomainError("quantum strategy has " + std::to_string(strat.settings.size()) + " parties, rule " +
                      std::string(to_string(spec.rule())) + " needs " + std::to_string(k));
  }
  if (strat.shared_state.dim() != (1 << k)) throw DomainError("shared state dimension does not match the party count");
  for (const auto& pair : strat.settings) {
    require_dichotomic(pair[0]);
    require_dichotomic(pair[1]);
  }
}

// sum_inputs p(inputs) (-1)^f(inputs) (x)_k A_k[input_k]
ComplexMatrix correlator_operator(const GameSpec& spec, const QuantumStrategy& strat) {
  const int k = spec.parties();
  ComplexMatrix op = ComplexMatrix::Zero(1 << k, 1 << k);
  for (int bits = 0; bits < (1 << k); ++bits) {
    const auto in = unpack(bits, k);
    const double w = spec.input_probability(in).to_double() * (winning_bit(spec.rule(), in) ? -1.0 : 1.0);
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (int i = 0; i < k; ++i) term = tensor(term, strat.settings[i][in[i]].matrix());
    op += w * term;
  }
  return op;
}

}  // namespace

ComplexMatrix chsh_operator(const Observable& a0, const Observable& a1, const Observable& b0, const Observable& b1) {
  return tensor(a0.matrix(), b0.matrix()) + tensor(a0.matrix(), b1.matrix()) + tensor(a1.matrix(), b0.matrix()) -
         tensor(a1.matrix(), b1.matrix());
}

ComplexMatrix biased_chsh_operator(double p, double q, const Observable& a0, const Observable& a1,
                                   const Observable& b0, const Observable& b1) {
  return p * q * tensor(a0.matrix(), b0.matrix()) + p * (1 - q) * tensor(a0.matrix(), b1.matrix()) +
         (1 - p) * q * tensor(a1.matrix(), b0.matrix()) - (1 - p) * (1 - q) * tensor(a1.matrix(), b1.matrix());
}

Observable svetlichny_operator(const std::array<Observable, 2>& a, const std::array<Observable, 2>& b,
                               const std::array<Observable, 2>& c) {
  for (const auto* pair : {&a, &b, &c}) {
    if ((*pair)[0].dim() != 2 || (*pair)[1].dim() != 2) throw DomainError("svetlichny_operator: qubit observables required");
  }
  auto t = [&](int i, int j, int l) { return kron_all({&a[i].matrix(), &b[j].matrix(), &c[l].matrix()}); };
  const ComplexMatrix s = t(0, 0, 0) + t(0, 0, 1) + t(0, 1, 0) + t(1, 0, 0) - t(0, 1, 1) - t(1, 0, 1) - t(1, 1, 0) -
                          t(1, 1, 1);
  return Observable::from_matrix(s);
}

QuantumValue game_value_quantum_routes(const GameSpec& spec, const QuantumStrategy& strat) {
  validate(spec, strat);
  const int k = spec.parties();
  const auto& st = strat.settings;
  QuantumValue v;

  if (spec.rule() == Rule::chsh && spec.unbiased()) {
    v.operator_form = 0.5 * (1.0 + expectation(chsh_operator(st[0][0], st[0][1], st[1][0], st[1][1]), strat.shared_state) / 4.0);
  } else if (spec.rule() == Rule::chsh) {
    const ComplexMatrix op = biased_chsh_operator(spec.bias()[0].to_double(), spec.bias()[1].to_double(), st[0][0],
                                                  st[0][1], st[1][0], st[1][1]);
    v.operator_form = 0.5 * (1.0 + expectation(op, strat.shared_state));
  } else if (spec.rule() == Rule::box1 && spec.unbiased()) {
    v.operator_form = 0.5 * (1.0 + expectation(svetlichny_operator(st[0], st[1], st[2]), strat.shared_state) / 8.0);
  } else {
    v.operator_form = 0.5 * (1.0 + expectation(correlator_operator(spec, strat), strat.shared_state));
  }

  // Definitional route: projectors (I + (-1)^a A) / 2 on every outcome string.
  const ComplexMatrix id = pauli::identity();
  double total = 0.0;
  for (int in_bits = 0; in_bits < (1 << k); ++in_bits) {
    const auto in = unpack(in_bits, k);
    const double p_in = spec.input_probability(in).to_double();
    const int target = winning_bit(spec.rule(), in);
    for (int out_bits = 0; out_bits < (1 << k); ++out_bits) {
      const auto out = unpack(out_bits, k);
      if (parity(out) != target) continue;
      ComplexMatrix proj = ComplexMatrix::Identity(1, 1);
      for (int i = 0; i < k; ++i) {
        const double sign = out[i] ? -1.0 : 1.0;
        proj = tensor(proj, ComplexMatrix(0.5 * (id + sign * st[i][in[i]].matrix())));
      }
      total += p_in * expectation(proj, strat.shared_state);
    }
  }
  v.definitional = total;
  return v;
}

double game_value_quantum(const GameSpec& spec, const QuantumStrategy& strat) {
  const QuantumValue v = game_value_quantum_routes(spec, strat);
  if (std::abs(v.operator_form - v.definitional) > 1e-10) {
    throw ComputationError("game value routes disagree: operator " + std::to_string(v.operator_form) +
                           " vs definitional " + std::to_string(v.definitional));
  }
  return v.operator_form;
}

// ---------------------------------------------------------------- classical

GameValueReport game_value_classical_max(const GameSpec& spec) {
  const int k = spec.parties();
  const int tables = 1 << (2 * k);
  GameValueReport rep;
  rep.theory = Theory::classical;
  std::optional<Rational> best;
  DeterministicStrategy best_s;
  for (int code = 0; code < tables; ++code) {
    DeterministicStrategy s(k);
    for (int i = 0; i < k; ++i) {
      s[i][0] = (code >> (2 * (k - 1 - i) + 1)) & 1;
      s[i][1] = (code >> (2 * (k - 1 - i))) & 1;
    }
    const Rational v = classical_value(spec, s);
    if (!best || *best < v) {
      best = v;
      best_s = s;
    }
  }
  rep.exact_value = best;
  rep.value = best->to_double();
  rep.argmax_strategy = describe(best_s);
  rep.classical_argmax = best_s;
  rep.evaluations = tables;
  return rep;
}

// ---------------------------------------------------------------- quantum

DensityMatrix ghz_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi(0) = psi(7) = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::from_pure(psi);
}

DensityMatrix phi_plus() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::from_pure(psi);
}

namespace {

DensityMatrix singlet_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0 / std::numbers::sqrt2;
  psi(2) = -1.0 / std::numbers::sqrt2;
  return DensityMatrix::from_pure(psi);
}

using Vec2 = std::array<double, 2>;

Vec2 unit(double a) { return {std::cos(a), std::sin(a)}; }

// Game objective restricted to planar settings cos a P0 + sin a P1 per
// observable, as a multilinear form over the correlation tensor of the
// fixed state in the (P0, P1) basis.
class PlanarProblem {
 public:
  PlanarProblem(const GameSpec& spec, DensityMatrix state, ComplexMatrix p0, ComplexMatrix p1, std::string state_name)
      : k_(spec.parties()), state_(std::move(state)), p0_(std::move(p0)), p1_(std::move(p1)),
        state_name_(std::move(state_name)) {
    const int n = 1 << k_;
    tensor_.resize(n);
    for (int idx = 0; idx < n; ++idx) {
      const auto bits = unpack(idx, k_);
      ComplexMatrix op = ComplexMatrix::Identity(1, 1);
      for (int i = 0; i < k_; ++i) op = tensor(op, bits[i] ? p1_ : p0_);
      tensor_[idx] = expectation(op, state_);
    }
    weight_.resize(n);
    for (int in_bits = 0; in_bits < n; ++in_bits) {
      const auto in = unpack(in_bits, k_);
      weight_[in_bits] = spec.input_probability(in).to_double() * (winning_bit(spec.rule(), in) ? -1.0 : 1.0);
    }
  }

  int parties() const { return k_; }
  double tensor_at(int idx) const { return tensor_[idx]; }
  double weight(int in_bits) const { return weight_[in_bits]; }

  // angles[2 i + x] is party i's setting for input x.
  double value(std::span<const double> angles) const {
    const int n = 1 << k_;
    double corr = 0.0;
    for (int in_bits = 0; in_bits < n; ++in_bits) {
      const auto in = unpack(in_bits, k_);
      double c = 0.0;
      for (int idx = 0; idx < n; ++idx) {
        double prod = tensor_[idx];
        for (int i = 0; i < k_; ++i) {
          const Vec2 u = unit(angles[2 * i + in[i]]);
          prod *= u[(idx >> (k_ - 1 - i)) & 1];
        }
        c += prod;
      }
      corr += weight_[in_bits] * c;
    }
    return 0.5 * (1.0 + corr);
  }

  // Exact maximizer of party `who`'s two angles with the others fixed: the
  // objective is linear in each of that party's unit vectors.
  void best_response(std::vector<double>& angles, int who) const {
    const int n = 1 << k_;
    std::array<Vec2, 2> c{};
    for (int in_bits = 0; in_bits < n; ++in_bits) {
      const auto in = unpack(in_bits, k_);
      for (int idx = 0; idx < n; ++idx) {
        double prod = weight_[in_bits] * tensor_[idx];
        for (int i = 0; i < k_; ++i) {
          if (i == who) continue;
          const Vec2 u = unit(angles[2 * i + in[i]]);
          prod *= u[(idx >> (k_ - 1 - i)) & 1];
        }
        c[in[who]][(idx >> (k_ - 1 - who)) & 1] += prod;
      }
    }
    for (int x = 0; x < 2; ++x) {
      if (std::hypot(c[x][0], c[x][1]) > 0.0) angles[2 * who + x] = std::atan2(c[x][1], c[x][0]);
    }
  }

  QuantumStrategy strategy(std::span<const double> angles) const {
    QuantumStrategy s{state_, {}};
    for (int i = 0; i < k_; ++i) {
      const ComplexMatrix a0 = std::cos(angles[2 * i]) * p0_ + std::sin(angles[2 * i]) * p1_;
      const ComplexMatrix a1 = std::cos(angles[2 * i + 1]) * p0_ + std::sin(angles[2 * i + 1]) * p1_;
      s.settings.push_back({Observable::from_matrix(a0), Observable::from_matrix(a1)});
    }
    return s;
  }

  const std::string& state_name() const { return state_name_; }

 private:
  int k_;
  DensityMatrix state_;
  ComplexMatrix p0_;
  ComplexMatrix p1_;
  std::string state_name_;
  std::vector<double> tensor_;
  std::vector<double> weight_;
};

constexpr int kCoarseSteps = 72;  // 5 degrees
constexpr double kCoarseStep = 2.0 * std::numbers::pi / kCoarseSteps;

double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }

// Coarse scan over all angles but the last party's; the last party's
// contribution |c_0| + |c_1| is its exact best response.
std::vector<double> coarse_scan(const PlanarProblem& prob, long& evaluations) {
  const int k = prob.parties();
  std::vector<Vec2> grid(kCoarseSteps);
  for (int i = 0; i < kCoarseSteps; ++i) grid[i] = unit(i * kCoarseStep);

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<int> idx;
  };

  const int outer = kCoarseSteps * kCoarseSteps;
  std::vector<Best> per_outer(outer);
  const int last = k - 1;

  parallel_for(static_cast<std::size_t>(outer), [&](std::size_t o) {
    const int a0 = static_cast<int>(o) / kCoarseSteps;
    const int a1 = static_cast<int>(o) % kCoarseSteps;
    const std::array<Vec2, 2> ua{grid[a0], grid[a1]};
    Best& best = per_outer[o];
    if (k == 2) {
      // c_x[j] = sum_s w(s,x) sum_i T[i j] ua_s[i]
      std::array<Vec2, 2> c{};
      for (int s = 0; s < 2; ++s) {
        for (int x = 0; x < 2; ++x) {
          const double w = prob.weight((s << 1) | x);
          for (int j = 0; j < 2; ++j) {
            c[x][j] += w * (prob.tensor_at((0 << 1) | j) * ua[s][0] + prob.tensor_at((1 << 1) | j) * ua[s][1]);
          }
        }
      }
      best.value = 0.5 * (1.0 + norm2(c[0]) + norm2(c[1]));
      best.idx = {a0, a1};
      return;
    }
    // Three parties: M_s[j][l] = sum_i T[i j l] ua_s[i], then V[s][b][l] = sum_j M_s[j][l] u_b[j].
    std::array<std::array<Vec2, 2>, 2> m{};
    for (int s = 0; s < 2; ++s) {
      for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
          m[s][j][l] = prob.tensor_at((0 << 2) | (j << 1) | l) * ua[s][0] + prob.tensor_at((1 << 2) | (j << 1) | l) * ua[s][1];
        }
      }
    }
    std::vector<std::array<Vec2, 2>> v(kCoarseSteps);
    for (int b = 0; b < kCoarseSteps; ++b) {
      for (int s = 0; s < 2; ++s) {
        for (int l = 0; l < 2; ++l) v[b][s][l] = m[s][0][l] * grid[b][0] + m[s][1][l] * grid[b][1];
      }
    }
    for (int b0 = 0; b0 < kCoarseSteps; ++b0) {
      for (int b1 = 0; b1 < kCoarseSteps; ++b1) {
        const int bt[2] = {b0, b1};
        std::array<Vec2, 2> c{};
        for (int s = 0; s < 2; ++s) {
          for (int t = 0; t < 2; ++t) {
            const Vec2& vv = v[bt[t]][s];
            for (int x = 0; x < 2; ++x) {
              const double w = prob.weight((s << 2) | (t << 1) | x);
              c[x][0] += w * vv[0];
              c[x][1] += w * vv[1];
            }
          }
        }
        const double val = 0.5 * (1.0 + norm2(c[0]) + norm2(c[1]));
        if (val > best.value) {
          best.value = val;
          best.idx = {a0, a1, b0, b1};
        }
      }
    }
  });

  const Best* winner = &per_outer.front();
  for (const Best& b : per_outer) {
    if (b.value > winner->value) winner = &b;
  }
  evaluations += (k == 2) ? outer : static_cast<long>(outer) * outer;

  std::vector<double> angles(2 * k, 0.0);
  for (std::size_t i = 0; i < winner->idx.size(); ++i) angles[i] = winner->idx[i] * kCoarseStep;
  prob.best_response(angles, last);
  return angles;
}

std::string describe_angles(const std::string& state, std::span<const double> angles) {
  std::string out = state + ";";
  char buf[64];
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double deg = std::remainder(angles[i], 2.0 * std::numbers::pi) * 180.0 / std::numbers::pi;
    if (std::abs(deg) < 5e-10) deg = 0.0;
    std::snprintf(buf, sizeof buf, " %c%zu=%.6fdeg", static_cast<char>('A' + i / 2), i % 2, deg);
    out += buf;
  }
  return out;
}

}  // namespace

GameValueReport game_value_quantum_max(const GameSpec& spec) {
  const bool bipartite = spec.parties() == 2;
  const PlanarProblem prob = bipartite ? PlanarProblem(spec, singlet_state(), pauli::z(), pauli::x(), "singlet, zx-plane")
                                       : PlanarProblem(spec, ghz_state(), pauli::x(), pauli::y(), "ghz, xy-plane");
  GameValueReport rep;
  rep.theory = Theory::quantum;

  std::vector<double> angles = coarse_scan(prob, rep.evaluations);
  double value = prob.value(angles);
  ++rep.evaluations;

  // Block coordinate ascent with exact per-party responses.
  for (int cycle = 0; cycle < 500; ++cycle) {
    for (int who = 0; who < prob.parties(); ++who) prob.best_response(angles, who);
    const double next = prob.value(angles);
    rep.evaluations += prob.parties() + 1;
    const bool stalled = next - value <= 1e-15;
    value = std::max(value, next);
    if (stalled) break;
  }

  // Pattern search polish, step halving down to 1e-8 rad.
  double step = kCoarseStep;
  while (step >= 1e-8) {
    bool improved = false;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      for (double dir : {1.0, -1.0}) {
        const double keep = angles[i];
        angles[i] = keep + dir * step;
        const double trial = prob.value(angles);
        ++rep.evaluations;
        if (trial > value + 1e-16) {
          value = trial;
          improved = true;
          break;
        }
        angles[i] = keep;
      }
    }
    if (!improved) step *= 0.5;
  }
  rep.final_step = step;

  const QuantumStrategy strat = prob.strategy(angles);
  const double checked_value = game_value_quantum(spec, strat);
  if (std::abs(checked_value - value) > 1e-9) {
    throw ComputationError("planar objective and matrix evaluation disagree");
  }
  rep.value = checked_value;
  rep.argmax_strategy = describe_angles(prob.state_name(), angles);
  return rep;
}

// ---------------------------------------------------------------- no-signaling

BoxTable winning_box(const GameSpec& spec) {
  const int k = spec.parties();
  const double mass = 1.0 / static_cast<double>(1 << (k - 1));
  BoxTable box(1 << k, std::vector<double>(1 << k, 0.0));
  for (int in_bits = 0; in_bits < (1 << k); ++in_bits) {
    const auto in = unpack(in_bits, k);
    const int target = winning_bit(spec.rule(), in);
    for (int out_bits = 0; out_bits < (1 << k); ++out_bits) {
      if (parity(unpack(out_bits, k)) == target) box[in_bits][out_bits] = mass;
    }
  }
  return box;
}

double signaling_defect(const BoxTable& box, int parties) {
  const int n = 1 << parties;
  if (static_cast<int>(box.size()) != n) throw DomainError("signaling_defect: box shape mismatch");
  double worst = 0.0;
  // Marginal of every nonempty subset of parties must not depend on the
  // inputs of the complement.
  for (int subset = 1; subset < n - 1; ++subset) {
    for (int in_a = 0; in_a < n; ++in_a) {
      for (int in_b = 0; in_b < n; ++in_b) {
        if ((in_a & subset) != (in_b & subset)) continue;
        for (int out_sub = 0; out_sub < n; ++out_sub) {
          if ((out_sub & ~subset) != 0) continue;
          double ma = 0.0;
          double mb = 0.0;
          for (int out = 0; out < n; ++out) {
            if ((out & subset) != out_sub) continue;
            ma += box[in_a][out];
            mb += box[in_b][out];
          }
          worst = std::max(worst, std::abs(ma - mb));
        }
      }
    }
  }
  return worst;
}

GameValueReport game_value_nosignaling_max(const GameSpec& spec) {
  const int k = spec.parties();
  const BoxTable box = winning_box(spec);
  const double defect = signaling_defect(box, k);
  if (defect > 1e-12) throw ComputationError("winning box signals (defect " + std::to_string(defect) + ")");
  double value = 0.0;
  for (int in_bits = 0; in_bits < (1 << k); ++in_bits) {
    const auto in = unpack(in_bits, k);
    const int target = winning_bit(spec.rule(), in);
    double win = 0.0;
    for (int out_bits = 0; out_bits < (1 << k); ++out_bits) {
      if (parity(unpack(out_bits, k)) == target) win += box[in_bits][out_bits];
    }
    value += spec.input_probability(in).to_double() * win;
  }
  GameValueReport rep;
  rep.theory = Theory::nosignaling;
  rep.value = value;
  rep.argmax_strategy = k == 2 ? "PR box" : "PR-type box (uniform on winning outputs)";
  rep.evaluations = 1;
  return rep;
}

// ---------------------------------------------------------------- biased CHSH

BiasedChshBounds biased_chsh_bounds(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) throw DomainError("biased_chsh_bounds: bias outside [0, 1]");
  BiasedChshBounds b;
  b.relabeled_alice = p < 0.5;
  b.relabeled_bob = q < 0.5;
  b.p = b.relabeled_alice ? 1.0 - p : p;
  b.q = b.relabeled_bob ? 1.0 - q : q;
  b.classical = 1.0 - (1.0 - b.p) * (1.0 - b.q);
  if (2.0 * b.p * b.q >= 1.0) {
    b.region = 1;
    b.quantum = b.classical;
  } else {
    b.region = 2;
    b.quantum = 0.5 * (1.0 + std::numbers::sqrt2 * std::sqrt(b.q * b.q + (1 - b.q) * (1 - b.q)) *
                                 std::sqrt(b.p * b.p + (1 - b.p) * (1 - b.p)));
  }
  return b;
}

// ---------------------------------------------------------------- referee

MonteCarloResult simulate_referee(const GameSpec& spec, const DeterministicStrategy& strategy, long rounds,
                                  std::uint64_t seed) {
  const int k = spec.parties();
  if (static_cast<int>(strategy.size()) != k) throw DomainError("simulate_referee: strategy arity mismatch");
  if (rounds <= 0) throw DomainError("simulate_referee: rounds must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> p0(k);
  for (int i = 0; i < k; ++i) p0[i] = spec.bias()[i].to_double();
  MonteCarloResult r;
  r.rounds = rounds;
  std::vector<int> in(k);
  for (long n = 0; n < rounds; ++n) {
    int out_parity = 0;
    for (int i = 0; i < k; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      in[i] = u < p0[i] ? 0 : 1;
      out_parity ^= strategy[i][in[i]];
    }
    if (out_parity == winning_bit(spec.rule(), in)) ++r.wins;
  }
  r.frequency = static_cast<double>(r.wins) / static_cast<double>(rounds);
  r.standard_error = std::sqrt(r.frequency * (1.0 - r.frequency) / static_cast<double>(rounds));
  return r;
}

// ---------------------------------------------------------------- single qubit

FineGrainedQubitBound fine_grained_qubit_bound(int scan_points) {
  if (scan_points < 1) throw DomainError("fine_grained_qubit_bound: scan needs at least one point");
  const ComplexMatrix id = pauli::identity();
  const ComplexMatrix op = 0.5 * (0.5 * (id + pauli::z()) + 0.5 * (id + pauli::x()));
  const Observable o = Observable::from_matrix(op);
  FineGrainedQubitBound b;
  b.closed_form = o.eigenvalues()(1);
  const DensityMatrix top = DensityMatrix::from_pure(o.eigenvectors().col(1));
  b.maximizer = {expectation(pauli::x(), top), expectation(pauli::y(), top), expectation(pauli::z(), top)};

  // Pure states suffice: the objective is affine in the Bloch vector.
  b.scan_points = scan_points;
  b.scan_max = -1.0;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < scan_points; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / scan_points;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const BlochVector n{r * std::cos(golden * i), r * std::sin(golden * i), z};
    const double v = 0.5 * (0.5 * (1.0 + n[2]) + 0.5 * (1.0 + n[0]));
    if (v > b.scan_max) {
      b.scan_max = v;
      b.scan_argmax = n;
    }
  }
  return b;
}

std::vector<BoxDiscriminationRow> box_discrimination_report() {
  std::vector<BoxDiscriminationRow> rows;
  for (Rule r : {Rule::box1, Rule::box2, Rule::box3}) {
    const GameSpec spec = GameSpec::make(r);
    BoxDiscriminationRow row;
    row.rule = r;
    row.classical = game_value_classical_max(spec).value;
    row.quantum = game_value_quantum_max(spec).value;
    row.nosignaling = game_value_nosignaling_max(spec).value;
    row.gap = row.quantum - row.classical > 1e-6;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace uqlab::games
