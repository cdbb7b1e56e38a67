#pragma once

// Reid inferred-variance criterion and the entropic steering inequality for
// Laguerre-Gaussian two-mode states.

#include "uqlab/phase_space.hpp"

#include <Eigen/Dense>

namespace uqlab::steering {

using phase_space::GridParams;
using phase_space::LGModeSpec;

/// ln(pi e), the non-steerable lower bound in nats.
double entropic_bound();

struct EntropicSteeringResult {
  double h_joint_1 = 0.0;  // h(X, P_Y)
  double h_joint_2 = 0.0;  // h(P_X, Y)
  double h_marg_1 = 0.0;   // h(P_Y)
  double h_marg_2 = 0.0;   // h(Y)
  double lhs = 0.0;        // h(X|P_Y) + h(P_X|Y)
  double bound = 0.0;
  double tolerance = 0.0;
  bool violated = false;   // lhs < bound - tolerance
};

inline constexpr double kDefaultSteeringTolerance = 2e-3;

EntropicSteeringResult entropic_steering(const LGModeSpec& spec, const GridParams& params,
                                         double tolerance = kDefaultSteeringTolerance);

/// Same evaluation from precomputed (X,P_Y) and (P_X,Y) grids.
EntropicSteeringResult entropic_steering(const phase_space::PhaseSpaceGrid& x_py,
                                         const phase_space::PhaseSpaceGrid& px_y,
                                         double tolerance = kDefaultSteeringTolerance);

/// First and second (symmetrically ordered) moments of (X, P_X, Y, P_Y).
struct QuadratureMoments {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d second = Eigen::Matrix4d::Zero();  // <q_a q_b>
};

/// Full 4D Gauss-Hermite quadrature of the Wigner function.
QuadratureMoments wigner_moments(const LGModeSpec& spec, int gh_nodes);

struct ReidResult {
  double g1 = 0.0;
  double g2 = 0.0;
  double inferred_var_1 = 0.0;
  double inferred_var_2 = 0.0;
  double product = 0.0;
  bool epr_flag = false;  // product < 1/4 (beyond 1e-12)
};

/// X_theta = X cos(theta) + P_X sin(theta) inferred from
/// Y_phi = Y cos(phi) + P_Y sin(phi). Throws ComputationError if <Y_phi^2>
/// vanishes (<= 1e-12).
double inferred_variance(const QuadratureMoments& mom, double theta, double phi, double* gain = nullptr);

/// Infers X_theta1 from Y_phi1 and X_theta2 from Y_phi2.
ReidResult reid_from_moments(const QuadratureMoments& mom, double theta1, double phi1, double theta2, double phi2);

/// Fixed conjugate pairing: X from P_Y and P_X from Y.
ReidResult reid_criterion(const LGModeSpec& spec, const GridParams& params);

struct ReidScanResult {
  int angles = 0;
  double min_product = 0.0;
  double theta = 0.0;  // minimizing target angle; the partner uses theta + pi/2
  double phi1 = 0.0;
  double phi2 = 0.0;
  ReidResult best;
};

/// Scans `angles` target angles theta in [0, pi] and, independently for
/// each of the two inferences, `angles` inference angles phi in [0, pi].
ReidScanResult reid_angle_scan(const QuadratureMoments& mom, int angles = 181);

}  // namespace uqlab::steering
