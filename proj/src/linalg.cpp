#include "uqlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace uqlab {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DomainError(std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                      std::to_string(b) + ")");
  }
}

}  // namespace

double hermitian_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  require_square(m, "DensityMatrix");
  if (!m.allFinite()) throw DomainError("DensityMatrix: non-finite entry");
  const double herm = hermitian_defect(m);
  if (herm > kHermitianTol) {
    throw DomainError("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector ev = es.eigenvalues();
  if (ev.minCoeff() < -kPsdTol) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(ev.minCoeff()));
  }
  if (ev.minCoeff() < 0.0) {
    ev = ev.cwiseMax(0.0);
    ev /= ev.sum();
    h = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    h = 0.5 * (h + h.adjoint());
  }
  return DensityMatrix(std::move(h), std::move(ev));
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (n <= 0.0) throw DomainError("DensityMatrix::from_pure: zero vector");
  const Eigen::VectorXcd v = psi / n;
  return from_matrix(v * v.adjoint());
}

Observable Observable::from_matrix(const ComplexMatrix& m) {
  require_square(m, "Observable");
  const double herm = hermitian_defect(m);
  if (herm > kHermitianTol) {
    throw DomainError("Observable: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  return Observable(std::move(h), es.eigenvalues(), es.eigenvectors());
}

bool Observable::non_degenerate(double tol) const {
  for (Eigen::Index i = 1; i < eigenvalues_.size(); ++i) {
    if (eigenvalues_(i) - eigenvalues_(i - 1) <= tol) return false;
  }
  return true;
}

std::vector<ComplexMatrix> Observable::eigenprojectors(double tol) const {
  std::vector<ComplexMatrix> out;
  const Eigen::Index d = eigenvalues_.size();
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && eigenvalues_(end) - eigenvalues_(end - 1) <= tol) ++end;
    const auto block = eigenvectors_.middleCols(start, end - start);
    out.emplace_back(block * block.adjoint());
    start = end;
  }
  return out;
}

namespace pauli {
ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << Complex(0.0, 0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(0.0, 0.0);
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

double expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
  require_same_dim(static_cast<int>(op.rows()), rho.dim(), "expectation");
  require_same_dim(static_cast<int>(op.cols()), rho.dim(), "expectation");
  // tr(A rho) without forming the product.
  const Complex tr = (op.transpose().cwiseProduct(rho.matrix())).sum();
  if (std::abs(tr.imag()) > 1e-10) {
    throw DomainError("expectation: imaginary part " + std::to_string(tr.imag()) + " exceeds 1e-10");
  }
  return tr.real();
}

double expectation(const Observable& obs, const DensityMatrix& rho) { return expectation(obs.matrix(), rho); }

double variance(const Observable& obs, const DensityMatrix& rho) {
  const double mean = expectation(obs, rho);
  const double second = expectation(ComplexMatrix(obs.matrix() * obs.matrix()), rho);
  return std::max(0.0, second - mean * mean);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> dims, int keep) {
  if (dims.empty()) throw DomainError("partial_trace: empty factorization");
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DomainError("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (total != rho.dim()) {
    throw DomainError("partial_trace: product of subsystem dims " + std::to_string(total) +
                      " does not match state dim " + std::to_string(rho.dim()));
  }
  if (keep < 0 || keep >= static_cast<int>(dims.size())) throw DomainError("partial_trace: keep index out of range");

  // Full index = (left, kept, right) with left slowest.
  long left = 1;
  for (int k = 0; k < keep; ++k) left *= dims[k];
  const long mid = dims[keep];
  const long right = total / (left * mid);

  ComplexMatrix out = ComplexMatrix::Zero(mid, mid);
  const ComplexMatrix& m = rho.matrix();
  for (long i = 0; i < mid; ++i) {
    for (long j = 0; j < mid; ++j) {
      Complex acc = 0.0;
      for (long l = 0; l < left; ++l) {
        for (long r = 0; r < right; ++r) {
          acc += m((l * mid + i) * right + r, (l * mid + j) * right + r);
        }
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix::from_matrix(out);
}

double log_in(double x, LogBase base) { return base == LogBase::two ? std::log2(x) : std::log(x); }

double von_neumann_entropy(const RealVector& spectrum, LogBase base) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double l = spectrum(i);
    if (l > 0.0) s -= l * log_in(l, base);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  return von_neumann_entropy(rho.eigenvalues(), base);
}

double shannon_entropy(std::span<const double> probs, LogBase base) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= -1e-12)) throw DomainError("shannon_entropy: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("shannon_entropy: probabilities sum to " + std::to_string(total));
  double h = 0.0;
  for (double p : probs) {
    const double q = std::clamp(p, 0.0, 1.0);
    if (q > 0.0) h -= q * log_in(q, base);
  }
  return std::max(0.0, h);
}

double binary_entropy(double p) {
  const double q = std::clamp(p, 0.0, 1.0);
  const std::array<double, 2> probs{q, 1.0 - q};
  return shannon_entropy(probs, LogBase::two);
}

double dot(const BlochVector& a, const BlochVector& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const BlochVector& v) { return std::sqrt(dot(v, v)); }

BlochVector normalized(const BlochVector& v) {
  const double n = norm(v);
  if (n == 0.0) throw DomainError("normalized: zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

DensityMatrix qubit_from_bloch(const BlochVector& n) {
  if (dot(n, n) > 1.0 + 1e-12) throw DomainError("qubit_from_bloch: |n| > 1");
  const ComplexMatrix m = 0.5 * (pauli::identity() + n[0] * pauli::x() + n[1] * pauli::y() + n[2] * pauli::z());
  return DensityMatrix::from_matrix(m);
}

Observable spin_observable(const BlochVector& direction) {
  if (std::abs(norm(direction) - 1.0) > 1e-9) throw DomainError("spin_observable: direction is not a unit vector");
  return Observable::from_matrix(direction[0] * pauli::x() + direction[1] * pauli::y() + direction[2] * pauli::z());
}

}  // namespace uqlab
