#pragma once

// Robertson-Schroedinger uncertainty as a witness of mixedness.

#include "uqlab/linalg.hpp"

#include <string_view>

namespace uqlab::purity {

enum class Verdict { pure_consistent, mixed, inconclusive };

std::string_view to_string(Verdict v);

struct RSWitnessResult {
  double q_value = 0.0;
  /// (d/(d-1)) (1 - tr rho^2), the normalization that matches Q for qubits.
  double linear_entropy = 0.0;
  /// 1 - tr rho^2 without the dimension prefactor.
  double linear_entropy_unnormalized = 0.0;
  Verdict verdict = Verdict::inconclusive;
  double epsilon = 0.0;
};

/// Q(A,B,rho) = dA^2 dB^2 - |<[A,B]>/2|^2 - |<{A,B}>/2 - <A><B>|^2.
double rs_quantity(const Observable& a, const Observable& b, const DensityMatrix& rho);

double linear_entropy(const DensityMatrix& rho);
double linear_entropy_unnormalized(const DensityMatrix& rho);

/// (1 - (r.t)^2) S_l(rho(n)) for unit directions r, t.
double single_qubit_q_closed_form(const BlochVector& r_hat, const BlochVector& t_hat, const BlochVector& n);

/// ((1-p)/4) I + p |psi-><psi-|.
DensityMatrix werner_state(double p);
DensityMatrix singlet();

/// (cos a1 sx + sin a1 sy) (x) (cos a2 sx + sin a2 sy).
Observable planar_product_observable(double angle_1, double angle_2);

/// mixed if q >= epsilon, pure-consistent if q < epsilon. Negative q beyond
/// the RS tolerance (-1e-9) cannot come from a valid state and yields
/// inconclusive.
Verdict mixedness_verdict(double q, double epsilon);

RSWitnessResult rs_witness(const Observable& a, const Observable& b, const DensityMatrix& rho, double epsilon);

/// Lower Bloch radius of the single-qubit blind band as stated for the
/// z/x scheme: sqrt(1 - 2 eps / 3).
double stated_blind_band_radius(double epsilon);
/// Lower radius implied by Q = 1 - n^2 for orthogonal spins, i.e. the
/// normalized linear entropy: sqrt(1 - eps).
double derived_blind_band_radius(double epsilon);
/// Lower radius if Q were compared against 1 - tr rho^2 = (1 - n^2)/2:
/// sqrt(1 - 2 eps).
double unnormalized_blind_band_radius(double epsilon);

}  // namespace uqlab::purity
