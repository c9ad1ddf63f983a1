#ifndef RELAY_PRECODING_HPP
#define RELAY_PRECODING_HPP

#include "relay/core.hpp"

namespace relay {

/// One unit-norm beamformer per pair plus the mixing weight t it was built
/// with (t interpolates between the two maximum-ratio directions of a pair).
struct BeamformerSet {
  std::vector<VectorXcd> vectors;
  std::vector<double> weights;

  int n_pairs() const { return static_cast<int>(vectors.size()); }
  void validate(int n_antennas) const;
};

struct PowerAllocation {
  VectorXd p;

  double total() const { return p.sum(); }
  void validate() const;
};

/// Encoding order pi; order[pos] is the pair encoded at position pos,
/// the pair at the last position is encoded last and sees no interference.
struct EncodingOrder {
  std::vector<int> order;

  static EncodingOrder identity(int n);
  int n() const { return static_cast<int>(order.size()); }
  int pair_at(int position) const { return order[static_cast<std::size_t>(position)]; }
  int position_of(int pair) const;
  void validate(int n_pairs) const;
};

/// Nonnegative per-pair weights summing to one.
struct RateWeights {
  VectorXd mu;

  void validate() const;
};

/// All encoding orders of n pairs (n! permutations); n must be <= 6.
std::vector<EncodingOrder> all_orders(int n_pairs);

/// Pair beamformer: normalized mix of the two per-node maximum-ratio
/// directions, with the second direction de-rotated by the phase of
/// g1^H g2 (phase taken as 0 when the directions are orthogonal).
VectorXcd single_pair_beamformer(const VectorXcd& h1, const VectorXcd& h2,
                                 double t);

/// SINR at node (i,k) when every other pair's beam is interference.
double linear_sinr(const Scenario& s, const BeamformerSet& u,
                   const PowerAllocation& p, int i, int k);

/// SINR at the node of the pair encoded at `position` under dirty-paper
/// precoding; only pairs encoded later contribute interference.
double dpc_sinr(const Scenario& s, const BeamformerSet& u,
                const PowerAllocation& p, const EncodingOrder& order,
                int position, int k);

/// C(sinr1) + C(sinr2) with C(x) = log2(1 + x), bits per channel use.
double pair_sum_rate(double sinr1, double sinr2);

/// Weighted single-pair rate mu1*C(|h1^H u|^2 P / s2) + mu2*C(|h2^H u|^2 P / s2).
double weighted_single_pair_rate(const Scenario& s, const VectorXcd& u,
                                 double power, double mu1, double mu2);

/// Beamformers plus the per-node effective noise table the construction
/// assumed (rows indexed by pair, columns by node).
struct PrecodingDesign {
  BeamformerSet beams;
  MatrixXd effective_noise;
};

/// Successive construction for a fixed encoding order: the last-encoded
/// pair gets the plain single-pair beamformer; every earlier pair records
/// the residual interference of later beams as effective noise.
PrecodingDesign successive_dpc_beamformers(const Scenario& s,
                                           const EncodingOrder& order,
                                           const PowerAllocation& p,
                                           const std::vector<double>& t);

/// Linear-precoding analogue: same per-pair beamformers, effective noise
/// accumulates interference from all other pairs.
PrecodingDesign linear_beamformers(const Scenario& s, const PowerAllocation& p,
                                   const std::vector<double>& t);

}  // namespace relay

#endif  // RELAY_PRECODING_HPP
