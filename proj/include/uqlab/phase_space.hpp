#pragma once

// Laguerre-Gaussian Wigner functions and their two-quadrature marginals on
// a sampled phase-space grid.

#include <iosfwd>
#include <string_view>
#include <vector>

namespace uqlab::phase_space {

enum class Quadrature { x, p_x, y, p_y };

/// Outer pair of a joint distribution; the complementary pair is integrated out.
enum class QuadraturePair { x_py, px_y, x_y, px_py };

std::string_view to_string(Quadrature q);
std::string_view to_string(QuadraturePair p);
Quadrature first_axis(QuadraturePair p);
Quadrature second_axis(QuadraturePair p);

struct LGModeSpec {
  int n = 0;
  int m = 0;

  static constexpr int kMaxOrder = 6;
  /// Throws DomainError unless n, m >= 0 and n + m <= 6.
  void validate() const;
};

struct GridParams {
  double half_extent = 6.0;
  int points = 201;
  int gh_nodes = 48;

  /// Throws DomainError unless half_extent > 0, points >= 64, gh_nodes >= 1.
  void validate() const;
};

/// N x N samples on [-L, L]^2 including both endpoints; values(i, j) is the
/// density at (u_i, v_j) with u along the first axis.
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid(double half_extent, int points, QuadraturePair axes, std::vector<double> values);

  double half_extent() const { return half_extent_; }
  int points() const { return points_; }
  QuadraturePair axes() const { return axes_; }
  double spacing() const { return 2.0 * half_extent_ / (points_ - 1); }
  double cell_area() const { return spacing() * spacing(); }
  double coordinate(int i) const { return -half_extent_ + spacing() * i; }
  double value(int i, int j) const { return values_[static_cast<std::size_t>(i) * points_ + j]; }
  const std::vector<double>& values() const { return values_; }

  /// Riemann sum times cell area.
  double total_mass() const;
  double min_value() const;

 private:
  double half_extent_;
  int points_;
  QuadraturePair axes_;
  std::vector<double> values_;
};

class Marginal {
 public:
  Marginal(double half_extent, int points, Quadrature axis, std::vector<double> values);

  double half_extent() const { return half_extent_; }
  int points() const { return points_; }
  Quadrature axis() const { return axis_; }
  double spacing() const { return 2.0 * half_extent_ / (points_ - 1); }
  double coordinate(int i) const { return -half_extent_ + spacing() * i; }
  const std::vector<double>& values() const { return values_; }
  double total_mass() const;

 private:
  double half_extent_;
  int points_;
  Quadrature axis_;
  std::vector<double> values_;
};

/// (-1)^{n+m}/pi^2 L_n[4(Q0+Q2)] L_m[4(Q0-Q2)] e^{-4 Q0} with
/// Q0 = (X^2+Y^2+P_X^2+P_Y^2)/4 and Q2 = (X P_Y - Y P_X)/2.
double wigner_lg(const LGModeSpec& spec, double x, double p_x, double y, double p_y);

/// Integrates W over the complementary pair by Gauss-Hermite quadrature at
/// every outer grid point. Throws ComputationError when the grid mass
/// deviates from one by more than 1e-3.
PhaseSpaceGrid joint_distribution(const LGModeSpec& spec, QuadraturePair pair, const GridParams& params);

/// Integrates the grid over its first (keep_second = true) or second axis.
Marginal marginalize(const PhaseSpaceGrid& grid, bool keep_second);

/// -sum P ln P dA in nats; cells with P < 1e-300 contribute zero.
double differential_entropy(const PhaseSpaceGrid& grid);
double differential_entropy(const Marginal& marginal);

/// Writes "u,v,p" followed by N^2 rows, u slowest.
void write_grid_csv(const PhaseSpaceGrid& grid, std::ostream& out);

}  // namespace uqlab::phase_space
