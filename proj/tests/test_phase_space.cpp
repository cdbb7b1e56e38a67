#include <doctest.h>

#include "uqlab/linalg.hpp"
#include "uqlab/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

using namespace uqlab;
using namespace uqlab::phase_space;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form (X, P_Y) joint for the first-order mode, obtained by
// integrating the Wigner function over P_X and Y by hand.
double lg10_joint(double x, double py) { return (x + py) * (x + py) * std::exp(-x * x - py * py) / kPi; }
double lg10_py_marginal(double py) { return (0.5 + py * py) * std::exp(-py * py) / std::sqrt(kPi); }

}  // namespace

TEST_CASE("wigner_lg reference values") {
  CHECK(wigner_lg({0, 0}, 0, 0, 0, 0) == doctest::Approx(1.0 / (kPi * kPi)));
  CHECK(wigner_lg({1, 0}, 0, 0, 0, 0) == doctest::Approx(-1.0 / (kPi * kPi)));
  // Gaussian vacuum: product of four e^{-q^2} factors.
  CHECK(wigner_lg({0, 0}, 0.3, -0.2, 0.5, 0.1) ==
        doctest::Approx(std::exp(-(0.09 + 0.04 + 0.25 + 0.01)) / (kPi * kPi)));
}

TEST_CASE("mode and grid validation") {
  CHECK_THROWS_AS((LGModeSpec{-1, 0}.validate()), DomainError);
  CHECK_THROWS_AS((LGModeSpec{4, 3}.validate()), DomainError);
  CHECK_NOTHROW((LGModeSpec{3, 3}.validate()));
  CHECK_THROWS_AS((GridParams{0.0, 201, 48}.validate()), DomainError);
  CHECK_THROWS_AS((GridParams{6.0, 63, 48}.validate()), DomainError);
  CHECK_THROWS_AS((GridParams{6.0, 201, 0}.validate()), DomainError);
}

TEST_CASE("first-order joint matches the analytic density") {
  const PhaseSpaceGrid g = joint_distribution({1, 0}, QuadraturePair::x_py, GridParams{});
  CHECK(g.points() == 201);
  CHECK(g.total_mass() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(g.min_value() >= -1e-12);
  double worst = 0.0;
  for (int i = 0; i < g.points(); i += 5) {
    for (int j = 0; j < g.points(); j += 5) {
      worst = std::max(worst, std::abs(g.value(i, j) - lg10_joint(g.coordinate(i), g.coordinate(j))));
    }
  }
  CHECK(worst < 1e-10);

  const Marginal py = marginalize(g, true);
  CHECK(py.axis() == Quadrature::p_y);
  CHECK(py.total_mass() == doctest::Approx(1.0).epsilon(1e-6));
  double mworst = 0.0;
  for (int j = 0; j < py.points(); ++j) {
    mworst = std::max(mworst, std::abs(py.values()[j] - lg10_py_marginal(py.coordinate(j))));
  }
  CHECK(mworst < 1e-8);
}

TEST_CASE("vacuum entropies") {
  const PhaseSpaceGrid g = joint_distribution({0, 0}, QuadraturePair::x_py, GridParams{});
  CHECK(differential_entropy(g) == doctest::Approx(std::log(kPi) + 1.0).epsilon(1e-6));
  CHECK(differential_entropy(marginalize(g, false)) == doctest::Approx(0.5 * std::log(kPi) + 0.5).epsilon(1e-6));
}

TEST_CASE("every mode is normalized on the default grid") {
  for (int n = 0; n <= 3; ++n) {
    for (int m = 0; m + n <= 3; ++m) {
      for (QuadraturePair p : {QuadraturePair::x_py, QuadraturePair::px_y}) {
        const PhaseSpaceGrid g = joint_distribution({n, m}, p, GridParams{6.0, 101, 32});
        CHECK(g.total_mass() == doctest::Approx(1.0).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("truncated grid loses mass and is rejected") {
  CHECK_THROWS_AS(joint_distribution({1, 0}, QuadraturePair::x_py, GridParams{1.0, 101, 48}), ComputationError);
}

TEST_CASE("grid csv export") {
  const PhaseSpaceGrid g = joint_distribution({0, 0}, QuadraturePair::x_py, GridParams{6.0, 64, 16});
  std::ostringstream out;
  write_grid_csv(g, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "u,v,p");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 64 * 64);
}

TEST_CASE("axis naming") {
  CHECK(to_string(QuadraturePair::x_py) == "X,P_Y");
  CHECK(first_axis(QuadraturePair::px_y) == Quadrature::p_x);
  CHECK(second_axis(QuadraturePair::px_y) == Quadrature::y);
}
