#include "uqlab/memory.hpp"

#include "uqlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace uqlab::memory {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

MeasurementPair::MeasurementPair(Observable r, Observable s) : r_(std::move(r)), s_(std::move(s)) {
  if (r_.dim() != s_.dim()) throw DomainError("MeasurementPair: observables act on different dimensions");
  if (!r_.non_degenerate() || !s_.non_degenerate()) {
    throw DomainError("MeasurementPair: complementarity needs non-degenerate spectra");
  }
  const ComplexMatrix g = r_.eigenvectors().adjoint() * s_.eigenvectors();
  overlaps_ = g.cwiseAbs2();
}

double complementarity_c(const MeasurementPair& pair) { return pair.overlaps().maxCoeff(); }

std::array<int, 2> square_dims(const DensityMatrix& rho_ab) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rho_ab.dim()))));
  if (d * d != rho_ab.dim()) throw DomainError("state dimension " + std::to_string(rho_ab.dim()) + " is not d x d");
  return {d, d};
}

namespace {

void require_dims(const DensityMatrix& rho, std::array<int, 2> dims) {
  if (dims[0] <= 0 || dims[1] <= 0 || dims[0] * dims[1] != rho.dim()) {
    throw DomainError("factorization " + std::to_string(dims[0]) + "x" + std::to_string(dims[1]) +
                      " does not match state dimension " + std::to_string(rho.dim()));
  }
}

std::array<int, 2> dims_for(const DensityMatrix& rho, const MeasurementPair& pair) {
  const int da = pair.dim();
  if (rho.dim() % da != 0) throw DomainError("measurement dimension does not divide the state dimension");
  return {da, rho.dim() / da};
}

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4) throw DomainError(std::string(what) + ": only two-qubit states are supported");
}

}  // namespace

DensityMatrix post_measurement_state(const DensityMatrix& rho_ab, const Observable& obs, std::array<int, 2> dims) {
  require_dims(rho_ab, dims);
  if (obs.dim() != dims[0]) throw DomainError("post_measurement_state: observable does not act on party A");
  const ComplexMatrix id_b = pauli::identity(dims[1]);
  ComplexMatrix out = ComplexMatrix::Zero(rho_ab.dim(), rho_ab.dim());
  for (const ComplexMatrix& p : obs.eigenprojectors()) {
    const ComplexMatrix big = tensor(p, id_b);
    out += big * rho_ab.matrix() * big;
  }
  return DensityMatrix::from_matrix(0.5 * (out + out.adjoint()));
}

double conditional_entropy(const DensityMatrix& rho_ab, std::array<int, 2> dims) {
  require_dims(rho_ab, dims);
  const std::array<int, 2> d = dims;
  const DensityMatrix rho_b = partial_trace(rho_ab, d, 1);
  return von_neumann_entropy(rho_ab, LogBase::two) - von_neumann_entropy(rho_b, LogBase::two);
}

BertaResult berta_bound(const DensityMatrix& rho_ab, const MeasurementPair& pair) {
  const auto dims = dims_for(rho_ab, pair);
  BertaResult r;
  r.c = complementarity_c(pair);
  r.s_a_given_b = conditional_entropy(rho_ab, dims);
  r.bound = std::log2(1.0 / r.c) + r.s_a_given_b;
  r.s_r_given_b = conditional_entropy(post_measurement_state(rho_ab, pair.r(), dims), dims);
  r.s_s_given_b = conditional_entropy(post_measurement_state(rho_ab, pair.s(), dims), dims);
  r.lhs = r.s_r_given_b + r.s_s_given_b;
  return r;
}

ColesPianiResult coles_piani_bound(const DensityMatrix& rho_ab, const MeasurementPair& pair) {
  const auto dims = dims_for(rho_ab, pair);
  const DensityMatrix rho_a = partial_trace(rho_ab, dims, 0);
  const Eigen::MatrixXd& c = pair.overlaps();
  ColesPianiResult r;
  for (int i = 0; i < pair.dim(); ++i) {
    const Eigen::VectorXcd ri = pair.r().eigenvectors().col(i);
    const double p = std::max(0.0, (ri.adjoint() * rho_a.matrix() * ri)(0).real());
    r.c_prime_rs += p * std::log2(1.0 / c.row(i).maxCoeff());
  }
  for (int j = 0; j < pair.dim(); ++j) {
    const Eigen::VectorXcd sj = pair.s().eigenvectors().col(j);
    const double p = std::max(0.0, (sj.adjoint() * rho_a.matrix() * sj)(0).real());
    r.c_prime_sr += p * std::log2(1.0 / c.col(j).maxCoeff());
  }
  r.c_prime = std::max(r.c_prime_rs, r.c_prime_sr);
  r.bound = r.c_prime + conditional_entropy(rho_ab, dims);
  return r;
}

namespace {

// Entropy in bits of a 2x2 positive matrix scaled to unit trace; `m` may be
// unnormalized, its trace is returned through `trace`.
double qubit_entropy_bits(const Eigen::Matrix2cd& m, double& trace) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  trace = a + d;
  if (trace <= 1e-300) return 0.0;
  const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
  const double l1 = std::clamp((0.5 * trace + half_gap) / trace, 0.0, 1.0);
  const double l2 = std::clamp(1.0 - l1, 0.0, 1.0);
  double h = 0.0;
  if (l1 > 0.0) h -= l1 * std::log2(l1);
  if (l2 > 0.0) h -= l2 * std::log2(l2);
  return h;
}

BlochVector direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Two-parameter pattern search with theta clamped to [lo, hi].
template <class F>
void pattern_search(F&& f, double& theta, double& phi, double& best, double step, double lo, double hi, long& evals,
                    bool maximize) {
  auto better = [&](double v) { return maximize ? v > best + 1e-16 : v < best - 1e-16; };
  while (step >= 1e-8) {
    bool improved = false;
    for (int coord = 0; coord < 2 && !improved; ++coord) {
      for (double dir : {1.0, -1.0}) {
        double t = theta;
        double p = phi;
        if (coord == 0) t = std::clamp(theta + dir * step, lo, hi);
        else p = phi + dir * step;
        const double v = f(t, p);
        ++evals;
        if (better(v)) {
          theta = t;
          phi = p;
          best = v;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

}  // namespace

DiscordResult discord_and_classical_info(const DensityMatrix& rho_ab, double grid_step_deg) {
  require_two_qubits(rho_ab, "discord_and_classical_info");
  if (!(grid_step_deg > 0.0 && grid_step_deg <= 90.0)) throw DomainError("discord grid step must be in (0, 90] degrees");
  const std::array<int, 2> dims{2, 2};
  const DensityMatrix rho_a = partial_trace(rho_ab, dims, 0);
  const DensityMatrix rho_b = partial_trace(rho_ab, dims, 1);
  const double s_a = von_neumann_entropy(rho_a, LogBase::two);
  const double s_b = von_neumann_entropy(rho_b, LogBase::two);
  const double s_ab = von_neumann_entropy(rho_ab, LogBase::two);

  // M_k = tr_A[(s_k (x) I) rho]; the conditional B states after outcome +-
  // along n are (rho_B +- n.M) / 2 before normalization.
  std::array<Eigen::Matrix2cd, 3> mk;
  const std::array<ComplexMatrix, 3> sig{pauli::x(), pauli::y(), pauli::z()};
  const ComplexMatrix& m = rho_ab.matrix();
  for (int k = 0; k < 3; ++k) {
    const ComplexMatrix w = tensor(sig[k], pauli::identity()) * m;
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a) acc += w.block(2 * a, 2 * a, 2, 2);
    mk[k] = acc;
  }
  const Eigen::Matrix2cd rb = rho_b.matrix();

  auto classical = [&](double theta, double phi) {
    const BlochVector n = direction(theta, phi);
    const Eigen::Matrix2cd nm = n[0] * mk[0] + n[1] * mk[1] + n[2] * mk[2];
    double cond = 0.0;
    for (double sign : {1.0, -1.0}) {
      double p = 0.0;
      const double h = qubit_entropy_bits(0.5 * (rb + sign * nm), p);
      cond += p * h;
    }
    return s_b - cond;
  };

  // n and -n give the same measurement: theta in [0, pi], phi in [0, pi).
  const int n_theta = static_cast<int>(std::floor(180.0 / grid_step_deg + 1e-9)) + 1;
  const int n_phi = std::max(1, static_cast<int>(std::ceil(180.0 / grid_step_deg - 1e-9)));
  std::vector<double> row_best(n_theta, -std::numeric_limits<double>::infinity());
  std::vector<int> row_arg(n_theta, 0);
  parallel_for(static_cast<std::size_t>(n_theta), [&](std::size_t i) {
    const double theta = std::min(180.0, i * grid_step_deg) * kDeg;
    for (int j = 0; j < n_phi; ++j) {
      const double v = classical(theta, j * grid_step_deg * kDeg);
      if (v > row_best[i]) {
        row_best[i] = v;
        row_arg[i] = j;
      }
    }
  });
  DiscordResult r;
  r.evaluations = static_cast<long>(n_theta) * n_phi;
  int bi = 0;
  for (int i = 1; i < n_theta; ++i) {
    if (row_best[i] > row_best[bi]) bi = i;
  }
  double theta = std::min(180.0, bi * grid_step_deg) * kDeg;
  double phi = row_arg[bi] * grid_step_deg * kDeg;
  double best = row_best[bi];
  pattern_search(classical, theta, phi, best, grid_step_deg * kDeg, 0.0, std::numbers::pi, r.evaluations, true);

  r.classical_info = std::max(0.0, best);
  r.mutual_info = std::max(0.0, s_a + s_b - s_ab);
  r.discord = std::max(0.0, r.mutual_info - r.classical_info);
  r.optimal_direction = direction(theta, phi);
  return r;
}

double pati_bound(double coles_piani, const DiscordResult& d) {
  return coles_piani + std::max(0.0, d.discord - d.classical_info);
}

double pati_bound(const DensityMatrix& rho_ab, const MeasurementPair& pair) {
  return pati_bound(coles_piani_bound(rho_ab, pair).bound, discord_and_classical_info(rho_ab));
}

double probability_different(const DensityMatrix& rho_ab, const Observable& obs) {
  const int d = obs.dim();
  if (d * d != rho_ab.dim()) throw DomainError("probability_different: both parties must match the observable dimension");
  const ComplexMatrix& v = obs.eigenvectors();
  double p = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const Eigen::VectorXcd ket = tensor(ComplexMatrix(v.col(i)), ComplexMatrix(v.col(j)));
      p += (ket.adjoint() * rho_ab.matrix() * ket)(0).real();
    }
  }
  return std::clamp(p, 0.0, 1.0);
}

FanoResult shannon_lhs_fano(const DensityMatrix& rho_ab, const MeasurementPair& pair) {
  FanoResult f;
  f.p_d_r = probability_different(rho_ab, pair.r());
  f.p_d_s = probability_different(rho_ab, pair.s());
  f.value = binary_entropy(f.p_d_r) + binary_entropy(f.p_d_s);
  return f;
}

FineGrainedResult fine_grained_inf(const DensityMatrix& rho_ab, double grid_step_deg) {
  require_two_qubits(rho_ab, "fine_grained_inf");
  if (!(grid_step_deg > 0.0 && grid_step_deg <= 90.0)) throw DomainError("scan step must be in (0, 90] degrees");

  // p_d along n is (1 - n^T T n) / 2 with T_ij = <s_i (x) s_j>.
  const std::array<ComplexMatrix, 3> sig{pauli::x(), pauli::y(), pauli::z()};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = expectation(tensor(sig[i], sig[j]), rho_ab);
  }
  auto p_d = [&](double theta, double phi) {
    const BlochVector n = direction(theta, phi);
    const Eigen::Vector3d v(n[0], n[1], n[2]);
    return 0.5 * (1.0 - v.dot(t * v));
  };

  FineGrainedResult r;
  r.p_d_fixed = probability_different(rho_ab, Observable::from_matrix(pauli::z()));
  double cone = 0.5;
  r.cone_deg = cone;

  std::vector<double> thetas{cone};
  for (double th = grid_step_deg; th < 180.0 - cone - 1e-9; th += grid_step_deg) {
    if (th > cone + 1e-9) thetas.push_back(th);
  }
  thetas.push_back(180.0 - cone);
  const int n_phi = std::max(1, static_cast<int>(std::ceil(360.0 / grid_step_deg - 1e-9)));

  std::vector<double> row_min(thetas.size()), row_max(thetas.size());
  std::vector<int> row_arg(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    int arg = 0;
    for (int j = 0; j < n_phi; ++j) {
      const double v = p_d(thetas[i] * kDeg, j * grid_step_deg * kDeg);
      if (v < lo) {
        lo = v;
        arg = j;
      }
      hi = std::max(hi, v);
    }
    row_min[i] = lo;
    row_max[i] = hi;
    row_arg[i] = arg;
  });
  r.evaluations = static_cast<long>(thetas.size()) * n_phi;
  std::size_t bi = 0;
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    if (row_min[i] < row_min[bi]) bi = i;
  }
  r.grid_spread = *std::max_element(row_max.begin(), row_max.end()) - *std::min_element(row_min.begin(), row_min.end());

  double theta = thetas[bi] * kDeg;
  double phi = row_arg[bi] * grid_step_deg * kDeg;
  double best = row_min[bi];
  for (;;) {
    const double lo = cone * kDeg;
    const double hi = std::numbers::pi - cone * kDeg;
    pattern_search(p_d, theta, phi, best, grid_step_deg * kDeg, lo, hi, r.evaluations, false);
    const bool on_edge = std::abs(theta - lo) < 1e-12 || std::abs(theta - hi) < 1e-12;
    if (!on_edge || cone <= 1e-4) break;
    cone *= 0.1;
    theta = std::clamp(theta, cone * kDeg, std::numbers::pi - cone * kDeg);
  }
  r.cone_deg = cone;
  r.p_inf = std::clamp(best, 0.0, 1.0);
  r.argmin = direction(theta, phi);
  r.bound = binary_entropy(r.p_d_fixed) + binary_entropy(r.p_inf);
  return r;
}

KeyRates key_rates(const BertaResult& berta, const FineGrainedResult& fine) {
  const double log_c = std::log2(1.0 / berta.c);
  KeyRates k;
  k.berta = log_c - berta.s_r_given_b - berta.s_s_given_b;
  k.fine_grained = log_c - binary_entropy(fine.p_d_fixed) + binary_entropy(fine.p_inf);
  k.fine_both_minus = log_c - binary_entropy(fine.p_d_fixed) - binary_entropy(fine.p_inf);
  return k;
}

DensityMatrix bell_diagonal_state(double c1, double c2, double c3) {
  for (double c : {c1, c2, c3}) {
    if (!(std::abs(c) <= 1.0)) throw DomainError("bell-diagonal coefficients must lie in [-1, 1]");
  }
  const std::array<double, 4> ev{(1 - c1 - c2 - c3) / 4, (1 - c1 + c2 + c3) / 4, (1 + c1 - c2 + c3) / 4,
                                 (1 + c1 + c2 - c3) / 4};
  if (*std::min_element(ev.begin(), ev.end()) < -1e-12) {
    throw DomainError("bell-diagonal coefficients do not give a positive state");
  }
  const ComplexMatrix m = 0.25 * (pauli::identity(4) + c1 * tensor(pauli::x(), pauli::x()) +
                                  c2 * tensor(pauli::y(), pauli::y()) + c3 * tensor(pauli::z(), pauli::z()));
  return DensityMatrix::from_matrix(m);
}

MemoryBoundReport memory_report(const DensityMatrix& rho_ab, const MeasurementPair& pair, double scan_step_deg) {
  MemoryBoundReport rep;
  rep.berta = berta_bound(rho_ab, pair);
  rep.coles_piani = coles_piani_bound(rho_ab, pair);
  rep.maassen_uffink = std::log2(1.0 / rep.berta.c);
  if (rho_ab.dim() == pair.dim() * pair.dim()) rep.fano = shannon_lhs_fano(rho_ab, pair);
  if (rho_ab.dim() == 4 && pair.dim() == 2) {
    rep.discord = discord_and_classical_info(rho_ab, scan_step_deg);
    rep.pati = pati_bound(rep.coles_piani.bound, *rep.discord);
    rep.fine = fine_grained_inf(rho_ab, scan_step_deg);
    rep.keys = key_rates(rep.berta, *rep.fine);
    rep.fine_minus_berta = rep.fine->bound - rep.berta.bound;
  }
  return rep;
}

}  // namespace uqlab::memory
