#pragma once

// Small-dimension complex linear algebra and quantum-state primitives.
//
// Every type here is immutable after construction. DensityMatrix and
// Observable validate their invariants in their factories and cache the
// eigendecomposition, so downstream code never re-checks them.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace uqlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Raised when an input violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot meet its accuracy contract.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogBase { two, e };

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

using BlochVector = std::array<double, 3>;

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity. Eigenvalues in
  /// [-1e-10, 0) are clamped to zero and the trace renormalized.
  static DensityMatrix from_matrix(const ComplexMatrix& m);
  /// Projector onto a normalized copy of `psi`.
  static DensityMatrix from_pure(const Eigen::VectorXcd& psi);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// Ascending spectrum.
  const RealVector& eigenvalues() const { return eigenvalues_; }

 private:
  DensityMatrix(ComplexMatrix m, RealVector ev) : matrix_(std::move(m)), eigenvalues_(std::move(ev)) {}
  ComplexMatrix matrix_;
  RealVector eigenvalues_;
};

class Observable {
 public:
  static Observable from_matrix(const ComplexMatrix& m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// Ascending.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  /// Columns are orthonormal eigenvectors matching eigenvalues().
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  /// True when all eigenvalue gaps exceed `tol`.
  bool non_degenerate(double tol = 1e-9) const;
  /// Orthogonal projectors onto the distinct eigenspaces, ascending by
  /// eigenvalue; eigenvalues closer than `tol` share a projector.
  std::vector<ComplexMatrix> eigenprojectors(double tol = 1e-9) const;

 private:
  Observable(ComplexMatrix m, RealVector ev, ComplexMatrix evec)
      : matrix_(std::move(m)), eigenvalues_(std::move(ev)), eigenvectors_(std::move(evec)) {}
  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

namespace pauli {
ComplexMatrix identity(int d = 2);
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Hermitian part test: max |m_ij - conj(m_ji)|.
double hermitian_defect(const ComplexMatrix& m);

/// tr(obs rho). Throws DomainError on dimension mismatch or if the trace has
/// an imaginary part larger than 1e-10.
double expectation(const Observable& obs, const DensityMatrix& rho);
/// Same contract for a raw Hermitian matrix.
double expectation(const ComplexMatrix& op, const DensityMatrix& rho);

/// <A^2> - <A>^2, clamped at zero.
double variance(const Observable& obs, const DensityMatrix& rho);

/// Kronecker product; the left factor is the slowest-varying index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// Reduced state of subsystem `keep` for the factorization `dims`.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> dims, int keep);

double von_neumann_entropy(const DensityMatrix& rho, LogBase base);
double von_neumann_entropy(const RealVector& spectrum, LogBase base);

/// Entries may be as low as -1e-12 and the sum must be within 1e-9 of one.
double shannon_entropy(std::span<const double> probs, LogBase base);
/// Binary entropy in bits; p is clamped to [0, 1].
double binary_entropy(double p);

DensityMatrix qubit_from_bloch(const BlochVector& n);
/// n.sigma for a unit 3-vector (|n| = 1 within 1e-9).
Observable spin_observable(const BlochVector& direction);

BlochVector normalized(const BlochVector& v);
double dot(const BlochVector& a, const BlochVector& b);
double norm(const BlochVector& v);

double log_in(double x, LogBase base);

}  // namespace uqlab
