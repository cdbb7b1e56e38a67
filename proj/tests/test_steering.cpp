#include <doctest.h>

#include "uqlab/linalg.hpp"
#include "uqlab/steering.hpp"

#include <cmath>
#include <numbers>

using namespace uqlab;
using namespace uqlab::steering;

TEST_CASE("entropic bound constant") {
  CHECK(entropic_bound() == doctest::Approx(std::log(std::numbers::pi * std::numbers::e)));
  CHECK(entropic_bound() == doctest::Approx(2.14473).epsilon(1e-5));
}

TEST_CASE("vacuum saturates the entropic bound") {
  const auto r = entropic_steering({0, 0}, GridParams{});
  CHECK(r.lhs == doctest::Approx(entropic_bound()).epsilon(1e-5));
  CHECK_FALSE(r.violated);
}

TEST_CASE("first-order mode violates the entropic bound") {
  const auto r = entropic_steering({1, 0}, GridParams{});
  CHECK(std::abs(r.h_joint_1 - 2.41509) < 2e-3);
  CHECK(std::abs(r.h_joint_2 - 2.41509) < 2e-3);
  CHECK(std::abs(r.h_marg_1 - 1.38774) < 2e-3);
  CHECK(std::abs(r.h_marg_2 - 1.38774) < 2e-3);
  CHECK(std::abs(r.lhs - 2.05471) < 2e-3);
  CHECK(r.lhs == doctest::Approx(r.h_joint_1 + r.h_joint_2 - r.h_marg_1 - r.h_marg_2));
  CHECK(r.violated);
}

TEST_CASE("entropic values are converged in the grid") {
  const auto base = entropic_steering({1, 0}, GridParams{});
  const auto fine = entropic_steering({1, 0}, GridParams{12.0, 401, 64});
  CHECK(std::abs(base.lhs - fine.lhs) < 1e-4);
}

TEST_CASE("higher modes stay below the bound") {
  const double l1 = entropic_steering({1, 0}, GridParams{}).lhs;
  const double l2 = entropic_steering({2, 0}, GridParams{}).lhs;
  CHECK(l2 < entropic_bound());
  CHECK(l1 < entropic_bound());
}

TEST_CASE("moments of low modes") {
  const QuadratureMoments vac = wigner_moments({0, 0}, 16);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(vac.mean(k)) < 1e-12);
    CHECK(vac.second(k, k) == doctest::Approx(0.5));
  }
  const QuadratureMoments m = wigner_moments({1, 0}, 16);
  for (int k = 0; k < 4; ++k) CHECK(m.second(k, k) == doctest::Approx(1.0));
  CHECK(std::abs(m.second(0, 3)) == doctest::Approx(0.5));
}

TEST_CASE("reid criterion does not detect the first-order mode") {
  const ReidResult r = reid_criterion({1, 0}, GridParams{});
  CHECK(r.product == doctest::Approx(9.0 / 16.0).epsilon(1e-9));
  CHECK_FALSE(r.epr_flag);
  const ReidScanResult scan = reid_angle_scan(wigner_moments({1, 0}, 48));
  CHECK(scan.angles == 181);
  CHECK(scan.min_product >= 0.25);
  CHECK(scan.min_product == doctest::Approx(9.0 / 16.0).epsilon(1e-9));
}

TEST_CASE("reid product for the vacuum sits at the Heisenberg limit") {
  const ReidResult r = reid_criterion({0, 0}, GridParams{});
  CHECK(r.product == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_FALSE(r.epr_flag);
}

TEST_CASE("inferred variance of a perfectly correlated Gaussian moment set") {
  // X = P_Y with both variances 1/2: inference leaves no residual variance.
  QuadratureMoments mom;
  mom.second = Eigen::Matrix4d::Identity() * 0.5;
  mom.second(0, 3) = mom.second(3, 0) = 0.5;
  double gain = 0.0;
  CHECK(inferred_variance(mom, 0.0, std::numbers::pi / 2, &gain) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gain == doctest::Approx(1.0));
}

TEST_CASE("vanishing inference variance is an error") {
  QuadratureMoments mom;
  mom.second(0, 0) = 1.0;
  CHECK_THROWS_AS(inferred_variance(mom, 0.0, 0.0), ComputationError);
}
