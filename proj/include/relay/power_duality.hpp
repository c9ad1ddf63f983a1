#ifndef RELAY_POWER_DUALITY_HPP
#define RELAY_POWER_DUALITY_HPP

#include "relay/precoding.hpp"

namespace relay {

/// Power-control data for the two per-node SINR constraint sets:
/// cross gains V^(k) (zero diagonal), direct gains D^(k) (diagonal) and
/// SINR targets Gamma^(k) (diagonal), k = 0, 1 for the two nodes of a pair.
struct CouplingSystem {
  std::array<MatrixXd, 2> cross_gain;    // V^(k)
  std::array<VectorXd, 2> direct_gain;   // diag of D^(k)
  std::array<VectorXd, 2> sinr_target;   // diag of Gamma^(k)
  double sigma2 = 1.0;

  int n() const { return static_cast<int>(direct_gain[0].size()); }
  void validate() const;
};

struct MinPowerResult {
  VectorXd powers;
  double total = 0.0;
  int iterations = 0;
  bool converged = false;
  MatrixXd slacks;  // n x 2, per (pair, constraint set)
};

/// V^(k)_{ij} = |h_(i,k)^H u_j|^2 for i != j, D^(k) = diag(|h_(i,k)^H u_i|^2).
/// A zero direct gain makes node (i,k) unservable and is rejected.
CouplingSystem build_coupling(const Scenario& s, const BeamformerSet& u,
                              const MatrixXd& gamma);

/// Least total downlink power meeting every SINR target: monotone
/// fixed-point iteration from p = 0 on the element-wise max of the two
/// interference maps. Returns converged=false with the divergent iterate
/// when the targets are infeasible.
MinPowerResult min_power_downlink(const CouplingSystem& sys);

/// Dual uplink problem: same system with transposed cross gains.
MinPowerResult min_power_uplink(const CouplingSystem& sys);

/// Restriction to a single constraint set k (classical dual pair).
MinPowerResult min_power_downlink_single(const CouplingSystem& sys, int k);
MinPowerResult min_power_uplink_single(const CouplingSystem& sys, int k);

struct DualityReport {
  double dl_total = 0.0;
  double ul_total = 0.0;
  double gap = 0.0;  // ul_total - dl_total
  std::array<double, 2> per_k_dl{};
  std::array<double, 2> per_k_ul{};
  int dl_iterations = 0;
  int ul_iterations = 0;
};

DualityReport duality_check(const CouplingSystem& sys);

/// Fixed two-pair instance on which the coupled-constraint duality gap is
/// strictly positive (downlink total 115/19, uplink total 13).
CouplingSystem builtin_counterexample();

std::string coupling_to_json(const CouplingSystem& sys);
CouplingSystem coupling_from_json(const std::string& text);
CouplingSystem load_coupling(const std::string& path);

}  // namespace relay

#endif  // RELAY_POWER_DUALITY_HPP
