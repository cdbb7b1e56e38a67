#pragma once

// Entropic uncertainty with quantum memory: Maassen-Uffink, Berta,
// Coles-Piani, Pati and fine-grained bounds plus the key-rate expressions.
// Every entropy here is in bits.

#include "uqlab/linalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace uqlab::memory {

class MeasurementPair {
 public:
  /// Both observables must share a dimension and have non-degenerate spectra.
  MeasurementPair(Observable r, Observable s);

  const Observable& r() const { return r_; }
  const Observable& s() const { return s_; }
  int dim() const { return r_.dim(); }
  /// overlap(i, j) = |<r_i|s_j>|^2.
  const Eigen::MatrixXd& overlaps() const { return overlaps_; }

 private:
  Observable r_;
  Observable s_;
  Eigen::MatrixXd overlaps_;
};

/// max_ij |<r_i|s_j>|^2, in [1/d, 1].
double complementarity_c(const MeasurementPair& pair);

/// sum_j (P_j (x) I) rho (P_j (x) I) over the eigenprojectors of `obs` on the
/// first factor of `dims`.
DensityMatrix post_measurement_state(const DensityMatrix& rho_ab, const Observable& obs, std::array<int, 2> dims);

/// S(AB) - S(B).
double conditional_entropy(const DensityMatrix& rho_ab, std::array<int, 2> dims);

/// Square factorization inferred from the state dimension (d x d).
std::array<int, 2> square_dims(const DensityMatrix& rho_ab);

struct BertaResult {
  double bound = 0.0;  // log2(1/c) + S(A|B)
  double lhs = 0.0;    // S(R|B) + S(S|B)
  double s_r_given_b = 0.0;
  double s_s_given_b = 0.0;
  double s_a_given_b = 0.0;
  double c = 0.0;
};

BertaResult berta_bound(const DensityMatrix& rho_ab, const MeasurementPair& pair);

struct ColesPianiResult {
  double bound = 0.0;
  double c_prime = 0.0;      // max of the two orderings
  double c_prime_rs = 0.0;   // sum_i p^r_i log2(1 / max_j c_ij)
  double c_prime_sr = 0.0;   // sum_j p^s_j log2(1 / max_i c_ij)
};

ColesPianiResult coles_piani_bound(const DensityMatrix& rho_ab, const MeasurementPair& pair);

struct DiscordResult {
  double discord = 0.0;
  double classical_info = 0.0;
  double mutual_info = 0.0;
  BlochVector optimal_direction{0.0, 0.0, 1.0};
  long evaluations = 0;
};

/// Two-qubit only. Projective measurements on A scanned over Bloch angles at
/// `grid_step_deg` plus pattern-search refinement.
DiscordResult discord_and_classical_info(const DensityMatrix& rho_ab, double grid_step_deg = 2.0);

/// coles_piani + max{0, D - C}.
double pati_bound(const DensityMatrix& rho_ab, const MeasurementPair& pair);
double pati_bound(double coles_piani, const DiscordResult& discord);

/// Probability that both parties measuring `obs` obtain different outcomes.
double probability_different(const DensityMatrix& rho_ab, const Observable& obs);

struct FanoResult {
  double value = 0.0;  // H(p_d^R) + H(p_d^S)
  double p_d_r = 0.0;
  double p_d_s = 0.0;
};

FanoResult shannon_lhs_fano(const DensityMatrix& rho_ab, const MeasurementPair& pair);

struct FineGrainedResult {
  double p_inf = 0.0;
  double p_d_fixed = 0.0;   // p_d for the fixed observable R
  double bound = 0.0;       // H(p_d^R) + H(p_inf)
  BlochVector argmin{};     // minimizing direction for S
  double grid_spread = 0.0; // max - min of p_d over the scan grid
  double cone_deg = 0.0;    // half-angle of the excluded cone around +-R
  long evaluations = 0;
};

/// Two-qubit only. The infimum runs over spin directions outside a cone
/// around +-z (the fixed observable is sz) on a (theta, phi) grid at
/// `grid_step_deg`, then refined to a 1e-8 rad step. If the minimizer lands
/// on the cone edge the cone is shrunk and the refinement repeated.
FineGrainedResult fine_grained_inf(const DensityMatrix& rho_ab, double grid_step_deg = 2.0);

struct KeyRates {
  double berta = 0.0;            // log2(1/c) - S(R|B) - S(S|B)
  double fine_grained = 0.0;     // log2(1/c) - H(p_d^R) + H(p_inf), as printed
  double fine_both_minus = 0.0;  // log2(1/c) - H(p_d^R) - H(p_inf)
};

KeyRates key_rates(const BertaResult& berta, const FineGrainedResult& fine);

/// (I (x) I + sum_k c_k s_k (x) s_k) / 4; throws DomainError when not a state.
DensityMatrix bell_diagonal_state(double c1, double c2, double c3);

struct MemoryBoundReport {
  BertaResult berta;
  ColesPianiResult coles_piani;
  double maassen_uffink = 0.0;  // log2(1/c)
  std::optional<DiscordResult> discord;
  std::optional<double> pati;
  std::optional<FanoResult> fano;
  std::optional<FineGrainedResult> fine;
  std::optional<KeyRates> keys;
  /// fine.bound - berta.bound when both exist.
  std::optional<double> fine_minus_berta;
};

/// Discord, Pati, fine-grained and key-rate entries need a two-qubit state
/// and stay empty otherwise.
MemoryBoundReport memory_report(const DensityMatrix& rho_ab, const MeasurementPair& pair, double scan_step_deg = 2.0);

}  // namespace uqlab::memory
