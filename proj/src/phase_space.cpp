#include "uqlab/phase_space.hpp"

#include "uqlab/kernels/laguerre_pair.hpp"
#include "uqlab/linalg.hpp"
#include "uqlab/parallel.hpp"
#include "uqlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

namespace uqlab::phase_space {

std::string_view to_string(Quadrature q) {
  switch (q) {
    case Quadrature::x: return "X";
    case Quadrature::p_x: return "P_X";
    case Quadrature::y: return "Y";
    case Quadrature::p_y: return "P_Y";
  }
  return "?";
}

std::string_view to_string(QuadraturePair p) {
  switch (p) {
    case QuadraturePair::x_py: return "X,P_Y";
    case QuadraturePair::px_y: return "P_X,Y";
    case QuadraturePair::x_y: return "X,Y";
    case QuadraturePair::px_py: return "P_X,P_Y";
  }
  return "?";
}

Quadrature first_axis(QuadraturePair p) {
  switch (p) {
    case QuadraturePair::x_py:
    case QuadraturePair::x_y: return Quadrature::x;
    case QuadraturePair::px_y:
    case QuadraturePair::px_py: return Quadrature::p_x;
  }
  return Quadrature::x;
}

Quadrature second_axis(QuadraturePair p) {
  switch (p) {
    case QuadraturePair::x_py:
    case QuadraturePair::px_py: return Quadrature::p_y;
    case QuadraturePair::px_y:
    case QuadraturePair::x_y: return Quadrature::y;
  }
  return Quadrature::y;
}

void LGModeSpec::validate() const {
  if (n < 0 || m < 0) throw DomainError("LG mode indices must be nonnegative");
  if (n + m > kMaxOrder) {
    throw DomainError("LG mode order n + m = " + std::to_string(n + m) + " exceeds the supported maximum " +
                      std::to_string(kMaxOrder));
  }
}

void GridParams::validate() const {
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) throw DomainError("grid half-extent must be positive");
  if (points < 64) throw DomainError("grid needs at least 64 points per axis");
  if (gh_nodes < 1) throw DomainError("Gauss-Hermite node count must be positive");
}

PhaseSpaceGrid::PhaseSpaceGrid(double half_extent, int points, QuadraturePair axes, std::vector<double> values)
    : half_extent_(half_extent), points_(points), axes_(axes), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(points) * points) {
    throw DomainError("PhaseSpaceGrid: value count does not match points^2");
  }
}

double PhaseSpaceGrid::total_mass() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * cell_area();
}

double PhaseSpaceGrid::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

Marginal::Marginal(double half_extent, int points, Quadrature axis, std::vector<double> values)
    : half_extent_(half_extent), points_(points), axis_(axis), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(points)) throw DomainError("Marginal: value count mismatch");
}

double Marginal::total_mass() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * spacing();
}

double wigner_lg(const LGModeSpec& spec, double x, double p_x, double y, double p_y) {
  spec.validate();
  const double q0 = 0.25 * (x * x + y * y + p_x * p_x + p_y * p_y);
  const double q2 = 0.5 * (x * p_y - y * p_x);
  const double sign = ((spec.n + spec.m) % 2 == 0) ? 1.0 : -1.0;
  return sign / (std::numbers::pi * std::numbers::pi) * quadrature::laguerre(spec.n, 4.0 * (q0 + q2)) *
         quadrature::laguerre(spec.m, 4.0 * (q0 - q2)) * std::exp(-4.0 * q0);
}

namespace {

// 4 Q2 = 2 (X P_Y - Y P_X) with the outer pair (u, v) fixed and the inner
// pair (s, t) ordered as the remaining quadratures in (X, P_X, Y, P_Y) order.
kernels::BilinearForm inner_form(QuadraturePair pair, double u, double v) {
  kernels::BilinearForm b;
  switch (pair) {
    case QuadraturePair::x_py:  // inner (P_X, Y): 2(u v - t s)
      b.c0 = 2.0 * u * v;
      b.cst = -2.0;
      break;
    case QuadraturePair::px_y:  // inner (X, P_Y): 2(s t - v u)
      b.c0 = -2.0 * u * v;
      b.cst = 2.0;
      break;
    case QuadraturePair::x_y:  // inner (P_X, P_Y): 2(u t - v s)
      b.cs = -2.0 * v;
      b.ct = 2.0 * u;
      break;
    case QuadraturePair::px_py:  // inner (X, Y): 2(s v - t u)
      b.cs = 2.0 * v;
      b.ct = -2.0 * u;
      break;
  }
  return b;
}

}  // namespace

PhaseSpaceGrid joint_distribution(const LGModeSpec& spec, QuadraturePair pair, const GridParams& params) {
  spec.validate();
  params.validate();

  const auto gh = quadrature::gauss_hermite(params.gh_nodes);
  const std::size_t k = gh.nodes.size();
  std::vector<double> s(k * k);
  std::vector<double> t(k * k);
  std::vector<double> w(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      s[i * k + j] = gh.nodes[i];
      t[i * k + j] = gh.nodes[j];
      w[i * k + j] = gh.weights[i] * gh.weights[j];
    }
  }

  const int n_pts = params.points;
  const double h = 2.0 * params.half_extent / (n_pts - 1);
  const double sign = ((spec.n + spec.m) % 2 == 0) ? 1.0 : -1.0;
  const double prefactor = sign / (std::numbers::pi * std::numbers::pi);
  const kernels::LaguerrePairSumFn kernel = kernels::active();

  std::vector<double> values(static_cast<std::size_t>(n_pts) * n_pts);
  parallel_for(static_cast<std::size_t>(n_pts), [&](std::size_t row) {
    const double u = -params.half_extent + h * static_cast<double>(row);
    kernels::LaguerrePairArgs args{s, t, w, 0.0, {}, spec.n, spec.m};
    for (int col = 0; col < n_pts; ++col) {
      const double v = -params.half_extent + h * col;
      args.r0 = u * u + v * v;
      args.b = inner_form(pair, u, v);
      values[row * n_pts + col] = prefactor * std::exp(-args.r0) * kernel(args);
    }
  });

  PhaseSpaceGrid grid(params.half_extent, n_pts, pair, std::move(values));
  const double mass = grid.total_mass();
  if (std::abs(mass - 1.0) > 1e-3) {
    throw ComputationError("joint distribution mass " + std::to_string(mass) +
                           " deviates from 1 by more than 1e-3; enlarge the grid");
  }
  return grid;
}

Marginal marginalize(const PhaseSpaceGrid& grid, bool keep_second) {
  const int n = grid.points();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out[keep_second ? j : i] += grid.value(i, j);
    }
  }
  for (double& v : out) v *= grid.spacing();
  const Quadrature axis = keep_second ? second_axis(grid.axes()) : first_axis(grid.axes());
  return Marginal(grid.half_extent(), n, axis, std::move(out));
}

namespace {

double entropy_sum(const std::vector<double>& values, double measure) {
  double acc = 0.0;
  for (double p : values) {
    if (p >= 1e-300) acc -= p * std::log(p);
  }
  return acc * measure;
}

}  // namespace

double differential_entropy(const PhaseSpaceGrid& grid) { return entropy_sum(grid.values(), grid.cell_area()); }

double differential_entropy(const Marginal& marginal) { return entropy_sum(marginal.values(), marginal.spacing()); }

void write_grid_csv(const PhaseSpaceGrid& grid, std::ostream& out) {
  out << "u,v,p\n";
  char buf[96];
  for (int i = 0; i < grid.points(); ++i) {
    for (int j = 0; j < grid.points(); ++j) {
      std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g\n", grid.coordinate(i), grid.coordinate(j), grid.value(i, j));
      out << buf;
    }
  }
}

}  // namespace uqlab::phase_space
