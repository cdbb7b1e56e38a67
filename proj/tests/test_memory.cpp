#include <doctest.h>

#include "uqlab/memory.hpp"
#include "uqlab/purity.hpp"
#include "uqlab/random_states.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace uqlab;
using namespace uqlab::memory;
using uqlab::purity::singlet;

namespace {

const Observable kSz = Observable::from_matrix(pauli::z());
const Observable kSx = Observable::from_matrix(pauli::x());
constexpr std::array<int, 2> kQubits{2, 2};

DensityMatrix mixed4() { return DensityMatrix::from_matrix(pauli::identity(4) / 4.0); }

DensityMatrix product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_matrix(tensor(a.matrix(), b.matrix()));
}

double h2(double p) { return binary_entropy(p); }

// Classical information from measuring A along n, straight from the
// definition with explicit projectors and a partial trace.
double classical_info_oracle(const DensityMatrix& rho, const BlochVector& n) {
  const double s_b = von_neumann_entropy(partial_trace(rho, kQubits, 1), LogBase::two);
  const ComplexMatrix sn = n[0] * pauli::x() + n[1] * pauli::y() + n[2] * pauli::z();
  double cond = 0.0;
  for (double sign : {1.0, -1.0}) {
    const ComplexMatrix proj = tensor((pauli::identity() + sign * sn) / 2.0, pauli::identity());
    const ComplexMatrix branch = proj * rho.matrix() * proj;
    const double p = branch.trace().real();
    if (p < 1e-15) continue;
    const DensityMatrix joint = DensityMatrix::from_matrix(branch / p);
    cond += p * von_neumann_entropy(partial_trace(joint, kQubits, 1), LogBase::two);
  }
  return s_b - cond;
}

double classical_info_scan(const DensityMatrix& rho, double step_deg) {
  const double d = step_deg * std::numbers::pi / 180.0;
  double best = 0.0;
  for (double th = 0.0; th <= std::numbers::pi / 2 + 1e-12; th += d) {
    for (double ph = 0.0; ph < 2 * std::numbers::pi; ph += (th == 0.0 ? 7.0 : d)) {
      const BlochVector n{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
      best = std::max(best, classical_info_oracle(rho, n));
    }
  }
  return best;
}

// The Werner family is rotation invariant, so one meridian suffices.
double classical_info_meridian_scan(const DensityMatrix& rho, double step_deg) {
  double best = 0.0;
  for (double deg = 0.0; deg <= 180.0 + 1e-9; deg += step_deg) {
    const double th = deg * std::numbers::pi / 180.0;
    best = std::max(best, classical_info_oracle(rho, {std::sin(th), 0.0, std::cos(th)}));
  }
  return best;
}

Observable random_spin(random::Engine& rng) { return spin_observable(random::unit_vector(rng)); }

}  // namespace

TEST_CASE("complementarity") {
  CHECK(complementarity_c(MeasurementPair(kSz, kSx)) == doctest::Approx(0.5));
  CHECK(complementarity_c(MeasurementPair(kSz, kSz)) == doctest::Approx(1.0));

  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  diag(2, 2) = 3.0;
  ComplexMatrix f(3, 3);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) f(j, k) = std::pow(w, j * k) / std::sqrt(3.0);
  }
  const Observable fourier = Observable::from_matrix(f * diag * f.adjoint());
  CHECK(complementarity_c(MeasurementPair(Observable::from_matrix(diag), fourier)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(MeasurementPair(kSz, Observable::from_matrix(diag)), DomainError);
  CHECK_THROWS_AS(MeasurementPair(kSz, Observable::from_matrix(pauli::identity())), DomainError);
}

TEST_CASE("post-measurement state") {
  const DensityMatrix s = post_measurement_state(singlet(), kSz, kQubits);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(1, 1) = expect(2, 2) = 0.5;
  CHECK((s.matrix() - expect).norm() < 1e-12);

  const DensityMatrix diag_a = qubit_from_bloch({0, 0, 0.3});
  const DensityMatrix prod = product(diag_a, qubit_from_bloch({0.2, 0.1, 0.4}));
  CHECK((post_measurement_state(prod, kSz, kQubits).matrix() - prod.matrix()).norm() < 1e-12);

  random::Engine rng(9);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho = random::mixed_state(rng, 4);
    const Observable obs = random_spin(rng);
    const DensityMatrix once = post_measurement_state(rho, obs, kQubits);
    const DensityMatrix twice = post_measurement_state(once, obs, kQubits);
    CHECK((once.matrix() - twice.matrix()).norm() < 1e-12);
    CHECK(once.matrix().trace().real() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(post_measurement_state(singlet(), Observable::from_matrix(pauli::identity(3)), kQubits),
                  DomainError);
}

TEST_CASE("conditional entropy") {
  CHECK(conditional_entropy(singlet(), kQubits) == doctest::Approx(-1.0));
  const DensityMatrix a = qubit_from_bloch({0.1, 0.5, 0.2});
  const DensityMatrix prod = product(a, qubit_from_bloch({0, 0.3, 0}));
  CHECK(conditional_entropy(prod, kQubits) == doctest::Approx(von_neumann_entropy(a, LogBase::two)));
  const DensityMatrix w = purity::werner_state(1.0 / 3.0);
  CHECK(conditional_entropy(w, kQubits) == doctest::Approx(von_neumann_entropy(w, LogBase::two) - 1.0));
  CHECK(square_dims(w) == kQubits);
  CHECK_THROWS_AS(conditional_entropy(w, {3, 3}), DomainError);
}

TEST_CASE("berta bound examples") {
  const MeasurementPair zx(kSz, kSx);
  const BertaResult s = berta_bound(singlet(), zx);
  CHECK(std::abs(s.bound) < 1e-9);
  CHECK(std::abs(s.lhs) < 1e-9);
  const BertaResult m = berta_bound(mixed4(), zx);
  CHECK(m.bound == doctest::Approx(2.0));
  CHECK(m.lhs == doctest::Approx(2.0));
  const BertaResult same = berta_bound(purity::werner_state(0.4), MeasurementPair(kSz, kSz));
  CHECK(same.bound == doctest::Approx(same.s_a_given_b));
  CHECK(same.lhs >= same.bound - 1e-9);
}

TEST_CASE("coles-piani bound examples") {
  const MeasurementPair zx(kSz, kSx);
  random::Engine rng(14);
  const DensityMatrix rho = random::mixed_state(rng, 4);
  const ColesPianiResult cp = coles_piani_bound(rho, zx);
  CHECK(cp.c_prime == doctest::Approx(1.0));
  CHECK(cp.bound == doctest::Approx(berta_bound(rho, zx).bound));

  const Observable diag = spin_observable(normalized({1, 0, 1}));
  const ColesPianiResult tilted = coles_piani_bound(mixed4(), MeasurementPair(kSz, diag));
  const double expect = std::log2(1.0 / std::pow(std::cos(std::numbers::pi / 8), 2));
  CHECK(tilted.c_prime_rs == doctest::Approx(expect));
  CHECK(tilted.c_prime_sr == doctest::Approx(expect));
}

TEST_CASE("coles-piani tightens berta on qutrits") {
  random::Engine rng(31);
  for (int k = 0; k < 50; ++k) {
    const MeasurementPair pair(Observable::from_matrix(random::hermitian(rng, 3)),
                               Observable::from_matrix(random::hermitian(rng, 3)));
    const DensityMatrix rho = random::mixed_state(rng, 9);
    CHECK(coles_piani_bound(rho, pair).bound >= berta_bound(rho, pair).bound - 1e-12);
    CHECK(berta_bound(rho, pair).lhs >= berta_bound(rho, pair).bound - 1e-9);
  }
}

TEST_CASE("discord examples") {
  const DiscordResult prod = discord_and_classical_info(product(qubit_from_bloch({0, 0.2, 0.1}),
                                                                qubit_from_bloch({0.3, 0, 0})));
  CHECK(std::abs(prod.discord) < 1e-9);
  CHECK(std::abs(prod.classical_info) < 1e-9);

  const DiscordResult s = discord_and_classical_info(singlet());
  CHECK(s.discord == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.classical_info == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.mutual_info == doctest::Approx(2.0));
  random::Engine rng(1);
  CHECK_THROWS_AS(discord_and_classical_info(random::mixed_state(rng, 9)), DomainError);
}

TEST_CASE("werner discord against a fine-grid oracle and the closed form") {
  for (double p : {0.2, 0.5, 0.8}) {
    const DensityMatrix w = purity::werner_state(p);
    const DiscordResult d = discord_and_classical_info(w);
    const double c_closed = 0.5 * (1 - p) * std::log2(1 - p) + 0.5 * (1 + p) * std::log2(1 + p);
    // Werner spectrum: (1+3p)/4 once, (1-p)/4 three times.
    const double l0 = (1 + 3 * p) / 4, l1 = (1 - p) / 4;
    const double i_closed = 2.0 + l0 * std::log2(l0) + 3 * l1 * std::log2(l1);
    CHECK(d.classical_info == doctest::Approx(c_closed).epsilon(1e-6));
    CHECK(d.mutual_info == doctest::Approx(i_closed).epsilon(1e-9));
    CHECK(std::abs(d.discord - (i_closed - c_closed)) < 1e-4);
    CHECK(std::abs(d.classical_info - classical_info_meridian_scan(w, 0.1)) < 1e-4);
  }
}

TEST_CASE("discord on a random state matches the oracle scan") {
  random::Engine rng(77);
  for (int k = 0; k < 3; ++k) {
    const DensityMatrix rho = random::mixed_state(rng, 4);
    const DiscordResult d = discord_and_classical_info(rho);
    const double oracle = classical_info_scan(rho, 1.0);
    CHECK(d.classical_info >= oracle - 1e-9);
    CHECK(d.classical_info - oracle < 1e-3);
    CHECK(classical_info_oracle(rho, d.optimal_direction) == doctest::Approx(d.classical_info).epsilon(1e-9));
    CHECK(d.discord >= -1e-9);
  }
}

TEST_CASE("discord vanishes on classical-classical states") {
  random::Engine rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    double total = 0.0;
    for (int i = 0; i < 4; ++i) total += (m(i, i) = u(rng)).real();
    const DiscordResult d = discord_and_classical_info(DensityMatrix::from_matrix(m / total));
    CHECK(d.discord >= -1e-9);
    CHECK(d.discord <= 1e-6);
  }
}

TEST_CASE("pati bound examples") {
  const MeasurementPair zx(kSz, kSx);
  ComplexMatrix cq = ComplexMatrix::Zero(4, 4);
  cq.block(0, 0, 2, 2) = 0.3 * qubit_from_bloch({0.6, 0, 0}).matrix();
  cq.block(2, 2, 2, 2) = 0.7 * qubit_from_bloch({0, 0.2, -0.5}).matrix();
  const DensityMatrix cq_state = DensityMatrix::from_matrix(cq);
  CHECK(pati_bound(cq_state, zx) == doctest::Approx(coles_piani_bound(cq_state, zx).bound).epsilon(1e-9));
  CHECK(pati_bound(singlet(), zx) == doctest::Approx(coles_piani_bound(singlet(), zx).bound).epsilon(1e-9));

  const DensityMatrix w = purity::werner_state(0.8);
  const DiscordResult d = discord_and_classical_info(w);
  const double cp = coles_piani_bound(w, zx).bound;
  CHECK(pati_bound(w, zx) == doctest::Approx(cp + std::max(0.0, d.discord - d.classical_info)));
  CHECK(pati_bound(cp, d) == doctest::Approx(pati_bound(w, zx)));
}

TEST_CASE("fano form") {
  CHECK(probability_different(singlet(), kSz) == doctest::Approx(1.0));
  CHECK(probability_different(mixed4(), kSz) == doctest::Approx(0.5));
  random::Engine rng(2);
  for (double p : {0.1, 0.6, 0.9}) {
    const Observable dir = random_spin(rng);
    CHECK(probability_different(purity::werner_state(p), dir) == doctest::Approx((1 + p) / 2));
  }
  const FanoResult s = shannon_lhs_fano(singlet(), MeasurementPair(kSz, kSx));
  CHECK(std::abs(s.value) < 1e-12);
  const FanoResult m = shannon_lhs_fano(mixed4(), MeasurementPair(kSz, kSx));
  CHECK(m.value == doctest::Approx(2.0));
}

TEST_CASE("fine-grained infimum") {
  const FineGrainedResult s = fine_grained_inf(singlet());
  CHECK(s.p_inf == doctest::Approx(1.0));
  CHECK(std::abs(s.bound) < 1e-9);

  const FineGrainedResult w = fine_grained_inf(purity::werner_state(0.72));
  CHECK(std::abs(w.p_inf - 0.86) < 1e-6);
  CHECK(w.grid_spread <= 1e-9);
  CHECK(w.bound == doctest::Approx(2.0 * h2(0.86)));
  CHECK(w.cone_deg > 0.0);
  CHECK(w.cone_deg <= 0.5);

  Eigen::VectorXcd up = Eigen::VectorXcd::Zero(4);
  up(0) = 1.0;
  const FineGrainedResult prod = fine_grained_inf(DensityMatrix::from_pure(up));
  CHECK(prod.p_d_fixed == doctest::Approx(0.0).epsilon(1e-12));
  // p_d(n) = sin^2(theta)/2 on |00>, minimized next to the excluded cone.
  CHECK(prod.p_inf < 1e-3);
  CHECK(std::abs(prod.argmin[2]) > 0.99);
}

TEST_CASE("key rates") {
  const MeasurementPair zx(kSz, kSx);
  const KeyRates s = key_rates(berta_bound(singlet(), zx), fine_grained_inf(singlet()));
  CHECK(s.berta == doctest::Approx(1.0));
  CHECK(s.fine_grained == doctest::Approx(1.0));
  const KeyRates m = key_rates(berta_bound(mixed4(), zx), fine_grained_inf(mixed4()));
  CHECK(m.berta == doctest::Approx(-1.0));
  CHECK(m.fine_grained == doctest::Approx(1.0));
  CHECK(m.fine_both_minus == doctest::Approx(-1.0));
}

TEST_CASE("bell-diagonal states") {
  CHECK((bell_diagonal_state(-1, -1, -1).matrix() - singlet().matrix()).norm() < 1e-12);
  CHECK((bell_diagonal_state(0, 0, 0).matrix() - mixed4().matrix()).norm() < 1e-15);
  CHECK_THROWS_AS(bell_diagonal_state(1, 1, 1), DomainError);
  CHECK_NOTHROW(bell_diagonal_state(1, -1, 1));
}

TEST_CASE("bound hierarchy on a random ensemble") {
  random::Engine rng(404);
  for (int k = 0; k < 40; ++k) {
    const DensityMatrix rho = random::mixed_state(rng, 4);
    const MeasurementPair pair(random_spin(rng), random_spin(rng));
    const MemoryBoundReport r = memory_report(rho, pair, 10.0);
    CHECK(r.berta.lhs >= r.berta.bound - 1e-9);
    CHECK(r.coles_piani.bound >= r.berta.bound - 1e-9);
    REQUIRE(r.pati);
    CHECK(*r.pati >= r.coles_piani.bound - 1e-9);
    REQUIRE(r.fano);
    CHECK(r.fano->value >= r.berta.lhs - 1e-9);
    CHECK(r.maassen_uffink == doctest::Approx(std::log2(1.0 / r.berta.c)));
  }
}

TEST_CASE("qutrit reports skip the two-qubit entries") {
  random::Engine rng(8);
  const MeasurementPair pair(Observable::from_matrix(random::hermitian(rng, 3)),
                             Observable::from_matrix(random::hermitian(rng, 3)));
  const MemoryBoundReport r = memory_report(random::mixed_state(rng, 9), pair);
  CHECK_FALSE(r.discord);
  CHECK_FALSE(r.fine);
  CHECK_FALSE(r.keys);
}
