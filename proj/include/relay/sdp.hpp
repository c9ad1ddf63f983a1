#ifndef RELAY_SDP_HPP
#define RELAY_SDP_HPP

#include "relay/power_duality.hpp"
#include "relay/rate_region.hpp"

namespace relay {

enum class PrecodingMode { kLinear, kDpc };

/// One linear SINR constraint in covariance form:
/// sum_j <coeff_j, Q_j> >= rhs, with Hermitian coefficient matrices.
struct SdpConstraint {
  std::vector<std::pair<int, MatrixXcd>> terms;
  double rhs = 0.0;
  std::string label;
};

/// Relaxed power minimization: minimize sum_i trace(Q_i) over Hermitian
/// PSD blocks Q_i subject to the listed constraints.
struct SdpProblem {
  int n_blocks = 0;
  int block_dim = 0;
  std::vector<SdpConstraint> constraints;
};

/// Builds the SINR-constrained covariance relaxation. gamma is n_pairs x 2;
/// rows with gamma = 0 contribute no constraint (a zero target is vacuous).
/// DPC mode restricts each interference sum to later-encoded pairs and
/// requires an order.
SdpProblem build_sdp(const Scenario& s, const MatrixXd& gamma,
                     PrecodingMode mode, const EncodingOrder* order = nullptr);

enum class SdpStatus { kOptimal, kInfeasible, kNumericalFailure };

struct PsdSolution {
  std::vector<MatrixXcd> q;
  double objective = 0.0;
  SdpStatus status = SdpStatus::kNumericalFailure;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double complementarity = 0.0;
  int iterations = 0;
  // Phase-I optimum: least uniform constraint-slack deficit. Positive
  // values certify that no matrix tuple satisfies every constraint.
  double infeasibility_certificate = 0.0;
};

/// Dense primal-dual path-following solve of the relaxation. Feasibility
/// is decided by an explicit phase-I problem before the main solve.
PsdSolution sdp_solve(const SdpProblem& problem);

/// True when the constraints admit a solution with total transmit power
/// at most `budget` (phase-I with the power cap as trace bound).
bool sdp_feasible_within_budget(const SdpProblem& problem, double budget,
                                double* deficit = nullptr);

struct Rank1Result {
  BeamformerSet beams;
  VectorXd raw_powers;       // trace(Q_i) before repair
  VectorXd repaired_powers;  // fixed-point power control on the extracted beams
  double raw_total = 0.0;
  double repaired_total = 0.0;
  bool repair_feasible = false;
};

/// Dominant-eigenvector extraction with power repair: the extracted beams
/// are fed back through the coupling system (triangular interference sets
/// in DPC mode) and the fixed-point power control restores feasibility.
Rank1Result rank1_extract(const PsdSolution& sol, const Scenario& s,
                          const MatrixXd& gamma, PrecodingMode mode,
                          const EncodingOrder* order = nullptr);

struct BisectResult {
  double rate_scale = 0.0;  // largest feasible common scale R
  double r_hi = 0.0;
  int iterations = 0;
  std::vector<std::pair<double, bool>> probes;
  RatePoint point;
  bool degenerate = false;  // infeasible at every positive scale probed
};

/// Largest R such that the targets gamma_(i,k) = 2^(mu_i R) - 1 are
/// achievable within the scenario power budget, located by bisection on
/// [0, R_hi] with R_hi = twice the best single-pair capacity along the
/// weight direction. DPC mode enumerates all orders unless one is given
/// (at most 4 pairs for the enumeration).
BisectResult bisect_rate_region(const Scenario& s, const RateWeights& weights,
                                PrecodingMode mode,
                                const EncodingOrder* order, double epsilon);

}  // namespace relay

#endif  // RELAY_SDP_HPP
