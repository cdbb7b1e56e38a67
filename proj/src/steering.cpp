#include "uqlab/steering.hpp"

#include "uqlab/linalg.hpp"
#include "uqlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace uqlab::steering {

using phase_space::PhaseSpaceGrid;
using phase_space::QuadraturePair;

double entropic_bound() { return std::log(std::numbers::pi * std::numbers::e); }

EntropicSteeringResult entropic_steering(const PhaseSpaceGrid& x_py, const PhaseSpaceGrid& px_y, double tolerance) {
  if (x_py.axes() != QuadraturePair::x_py || px_y.axes() != QuadraturePair::px_y) {
    throw DomainError("entropic_steering: expected (X,P_Y) and (P_X,Y) grids");
  }
  EntropicSteeringResult r;
  r.h_joint_1 = phase_space::differential_entropy(x_py);
  r.h_joint_2 = phase_space::differential_entropy(px_y);
  r.h_marg_1 = phase_space::differential_entropy(phase_space::marginalize(x_py, /*keep_second=*/true));
  r.h_marg_2 = phase_space::differential_entropy(phase_space::marginalize(px_y, /*keep_second=*/true));
  r.lhs = (r.h_joint_1 - r.h_marg_1) + (r.h_joint_2 - r.h_marg_2);
  r.bound = entropic_bound();
  r.tolerance = tolerance;
  r.violated = r.lhs < r.bound - tolerance;
  return r;
}

EntropicSteeringResult entropic_steering(const LGModeSpec& spec, const GridParams& params, double tolerance) {
  const PhaseSpaceGrid a = phase_space::joint_distribution(spec, QuadraturePair::x_py, params);
  const PhaseSpaceGrid b = phase_space::joint_distribution(spec, QuadraturePair::px_y, params);
  return entropic_steering(a, b, tolerance);
}

QuadratureMoments wigner_moments(const LGModeSpec& spec, int gh_nodes) {
  spec.validate();
  const auto gh = quadrature::gauss_hermite(gh_nodes);
  const int k = static_cast<int>(gh.nodes.size());
  const double sign = ((spec.n + spec.m) % 2 == 0) ? 1.0 : -1.0;
  const double pre = sign / (std::numbers::pi * std::numbers::pi);

  QuadratureMoments mom;
  double mass = 0.0;
  std::array<double, 4> q{};
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c) {
        for (int d = 0; d < k; ++d) {
          q = {gh.nodes[a], gh.nodes[b], gh.nodes[c], gh.nodes[d]};  // X, P_X, Y, P_Y
          const double four_q0 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
          const double four_q2 = 2.0 * (q[0] * q[3] - q[2] * q[1]);
          // e^{-4 Q0} is carried by the Gauss-Hermite weights.
          const double f = gh.weights[a] * gh.weights[b] * gh.weights[c] * gh.weights[d] * pre *
                           quadrature::laguerre(spec.n, four_q0 + four_q2) *
                           quadrature::laguerre(spec.m, four_q0 - four_q2);
          mass += f;
          for (int i = 0; i < 4; ++i) {
            mom.mean(i) += f * q[i];
            for (int j = i; j < 4; ++j) mom.second(i, j) += f * q[i] * q[j];
          }
        }
      }
    }
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    throw ComputationError("wigner_moments: quadrature mass " + std::to_string(mass) + " is not 1");
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) mom.second(i, j) = mom.second(j, i);
  }
  return mom;
}

double inferred_variance(const QuadratureMoments& mom, double theta, double phi, double* gain) {
  const Eigen::Vector4d target(std::cos(theta), std::sin(theta), 0.0, 0.0);
  const Eigen::Vector4d probe(0.0, 0.0, std::cos(phi), std::sin(phi));
  const double tt = target.dot(mom.second * target);
  const double tp = target.dot(mom.second * probe);
  const double pp = probe.dot(mom.second * probe);
  if (pp <= 1e-12) throw ComputationError("reid: <Y_phi^2> vanishes");
  const double g = tp / pp;
  if (gain) *gain = g;
  // <(X - g Y)^2> at the optimal gain.
  return std::max(0.0, tt - 2.0 * g * tp + g * g * pp);
}

ReidResult reid_from_moments(const QuadratureMoments& mom, double theta1, double phi1, double theta2, double phi2) {
  ReidResult r;
  r.inferred_var_1 = inferred_variance(mom, theta1, phi1, &r.g1);
  r.inferred_var_2 = inferred_variance(mom, theta2, phi2, &r.g2);
  r.product = r.inferred_var_1 * r.inferred_var_2;
  r.epr_flag = r.product < 0.25 - 1e-12;
  return r;
}

ReidResult reid_criterion(const LGModeSpec& spec, const GridParams& params) {
  params.validate();
  const QuadratureMoments mom = wigner_moments(spec, params.gh_nodes);
  constexpr double half_pi = std::numbers::pi / 2.0;
  // theta = 0 -> X inferred from phi = pi/2 -> P_Y; theta = pi/2 -> P_X from phi = 0 -> Y.
  return reid_from_moments(mom, 0.0, half_pi, half_pi, 0.0);
}

ReidScanResult reid_angle_scan(const QuadratureMoments& mom, int angles) {
  if (angles < 2) throw DomainError("reid_angle_scan: need at least two angles");
  const double step = std::numbers::pi / (angles - 1);
  auto best_inference = [&](double theta, double& best_phi) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < angles; ++j) {
      const double phi = step * j;
      const double v = inferred_variance(mom, theta, phi);
      if (v < best) {
        best = v;
        best_phi = phi;
      }
    }
    return best;
  };

  ReidScanResult out;
  out.angles = angles;
  out.min_product = std::numeric_limits<double>::infinity();
  for (int i = 0; i < angles; ++i) {
    const double theta = step * i;
    double phi1 = 0.0;
    double phi2 = 0.0;
    const double v1 = best_inference(theta, phi1);
    const double v2 = best_inference(theta + std::numbers::pi / 2.0, phi2);
    if (v1 * v2 < out.min_product) {
      out.min_product = v1 * v2;
      out.theta = theta;
      out.phi1 = phi1;
      out.phi2 = phi2;
    }
  }
  out.best = reid_from_moments(mom, out.theta, out.phi1, out.theta + std::numbers::pi / 2.0, out.phi2);
  return out;
}

}  // namespace uqlab::steering
