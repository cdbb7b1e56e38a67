#include "uqlab/purity.hpp"

#include <algorithm>
#include <cmath>

namespace uqlab::purity {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pure_consistent: return "pure-consistent";
    case Verdict::mixed: return "mixed";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double rs_quantity(const Observable& a, const Observable& b, const DensityMatrix& rho) {
  if (a.dim() != b.dim() || a.dim() != rho.dim()) throw DomainError("rs_quantity: dimension mismatch");
  const ComplexMatrix& A = a.matrix();
  const ComplexMatrix& B = b.matrix();
  const ComplexMatrix ab = A * B;
  const ComplexMatrix ba = B * A;
  const ComplexMatrix& r = rho.matrix();

  const double mean_a = expectation(a, rho);
  const double mean_b = expectation(b, rho);
  const double var_a = variance(a, rho);
  const double var_b = variance(b, rho);
  // <[A,B]> is purely imaginary and <{A,B}> real; keep the complex traces
  // so the moduli are taken exactly as written.
  const Complex comm = ((ab - ba) * r).trace() * 0.5;
  const Complex anti = ((ab + ba) * r).trace() * 0.5 - Complex(mean_a * mean_b, 0.0);
  return var_a * var_b - std::norm(comm) - std::norm(anti);
}

double linear_entropy_unnormalized(const DensityMatrix& rho) {
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  return std::max(0.0, 1.0 - purity);
}

double linear_entropy(const DensityMatrix& rho) {
  const double d = rho.dim();
  if (rho.dim() == 1) return 0.0;
  return std::clamp(d / (d - 1.0) * linear_entropy_unnormalized(rho), 0.0, 1.0);
}

double single_qubit_q_closed_form(const BlochVector& r_hat, const BlochVector& t_hat, const BlochVector& n) {
  if (std::abs(norm(r_hat) - 1.0) > 1e-9 || std::abs(norm(t_hat) - 1.0) > 1e-9) {
    throw DomainError("single_qubit_q_closed_form: directions must be unit vectors");
  }
  const double rt = dot(r_hat, t_hat);
  return (1.0 - rt * rt) * linear_entropy(qubit_from_bloch(n));
}

DensityMatrix singlet() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(psi);
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("werner_state: p must lie in [0, 1]");
  const ComplexMatrix m = (1.0 - p) / 4.0 * pauli::identity(4) + p * singlet().matrix();
  return DensityMatrix::from_matrix(m);
}

Observable planar_product_observable(double angle_1, double angle_2) {
  const ComplexMatrix a = std::cos(angle_1) * pauli::x() + std::sin(angle_1) * pauli::y();
  const ComplexMatrix b = std::cos(angle_2) * pauli::x() + std::sin(angle_2) * pauli::y();
  return Observable::from_matrix(tensor(a, b));
}

Verdict mixedness_verdict(double q, double epsilon) {
  if (epsilon < 0.0) throw DomainError("mixedness_verdict: epsilon must be >= 0");
  if (q >= epsilon) return Verdict::mixed;
  if (q >= -1e-9) return Verdict::pure_consistent;
  return Verdict::inconclusive;
}

RSWitnessResult rs_witness(const Observable& a, const Observable& b, const DensityMatrix& rho, double epsilon) {
  RSWitnessResult r;
  r.q_value = rs_quantity(a, b, rho);
  r.linear_entropy = linear_entropy(rho);
  r.linear_entropy_unnormalized = linear_entropy_unnormalized(rho);
  r.epsilon = epsilon;
  r.verdict = mixedness_verdict(r.q_value, epsilon);
  return r;
}

double stated_blind_band_radius(double epsilon) { return std::sqrt(std::max(0.0, 1.0 - 2.0 * epsilon / 3.0)); }
double derived_blind_band_radius(double epsilon) { return std::sqrt(std::max(0.0, 1.0 - epsilon)); }
double unnormalized_blind_band_radius(double epsilon) { return std::sqrt(std::max(0.0, 1.0 - 2.0 * epsilon)); }

}  // namespace uqlab::purity
