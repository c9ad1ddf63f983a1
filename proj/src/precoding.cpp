#include "relay/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace relay {

void BeamformerSet::validate(int n_antennas) const {
  if (vectors.size() != weights.size())
    throw ValidationError("beamformer set: vectors/weights size mismatch");
  for (const VectorXcd& u : vectors) {
    if (u.size() != n_antennas)
      throw ValidationError("beamformer has wrong dimension");
    if (std::abs(u.norm() - 1.0) > kUnitNormTol)
      throw ValidationError("beamformer is not unit norm");
  }
}

void PowerAllocation::validate() const {
  if ((p.array() < 0.0).any() || !p.allFinite())
    throw ValidationError("power allocation must be nonnegative and finite");
}

EncodingOrder EncodingOrder::identity(int n) {
  EncodingOrder o;
  o.order.resize(static_cast<std::size_t>(n));
  std::iota(o.order.begin(), o.order.end(), 0);
  return o;
}

int EncodingOrder::position_of(int pair) const {
  for (int pos = 0; pos < n(); ++pos)
    if (order[static_cast<std::size_t>(pos)] == pair) return pos;
  throw ValidationError("pair not present in encoding order");
}

void EncodingOrder::validate(int n_pairs) const {
  if (static_cast<int>(order.size()) != n_pairs)
    throw ValidationError("encoding order has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n_pairs), false);
  for (int v : order) {
    if (v < 0 || v >= n_pairs || seen[static_cast<std::size_t>(v)])
      throw ValidationError("encoding order is not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

void RateWeights::validate() const {
  if ((mu.array() < 0.0).any())
    throw ValidationError("rate weights must be nonnegative");
  if (std::abs(mu.sum() - 1.0) > kUnitNormTol)
    throw ValidationError("rate weights must sum to 1");
}

std::vector<EncodingOrder> all_orders(int n_pairs) {
  if (n_pairs < 1 || n_pairs > 6)
    throw ValidationError("order enumeration supported for 1..6 pairs");
  std::vector<int> perm(static_cast<std::size_t>(n_pairs));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<EncodingOrder> out;
  do {
    out.push_back(EncodingOrder{perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

VectorXcd single_pair_beamformer(const VectorXcd& h1, const VectorXcd& h2,
                                 double t) {
  if (h1.size() != h2.size() || h1.size() == 0)
    throw ValidationError("beamformer: channel dimension mismatch");
  const double n1 = h1.norm();
  const double n2 = h2.norm();
  if (n1 == 0.0 || n2 == 0.0)
    throw ValidationError("beamformer: zero channel vector");
  if (t < 0.0 || t > 1.0)
    throw ValidationError("beamformer: t must lie in [0, 1]");

  const VectorXcd g1 = h1 / n1;
  const VectorXcd g2 = h2 / n2;
  const Complex cross = g1.dot(g2);  // g1^H g2
  // phi undefined for orthogonal directions; fixed to 0 there.
  const double phi = std::abs(cross) > 0.0 ? std::arg(cross) : 0.0;
  const VectorXcd mix = t * g1 + (1.0 - t) * std::exp(Complex(0.0, -phi)) * g2;
  return mix / mix.norm();
}

namespace {

double beam_gain(const Scenario& s, const BeamformerSet& u, int i, int k, int j) {
  const Complex dot = s.channel(i, k).dot(u.vectors[static_cast<std::size_t>(j)]);
  return std::norm(dot);
}

void check_node_indices(const Scenario& s, const BeamformerSet& u,
                        const PowerAllocation& p, int i, int k) {
  if (i < 0 || i >= s.n_pairs || k < 0 || k > 1)
    throw ValidationError("sinr: node index out of range");
  if (u.n_pairs() != s.n_pairs || p.p.size() != s.n_pairs)
    throw ValidationError("sinr: beamformer/power dimensions do not match scenario");
}

}  // namespace

double linear_sinr(const Scenario& s, const BeamformerSet& u,
                   const PowerAllocation& p, int i, int k) {
  check_node_indices(s, u, p, i, k);
  double interference = 0.0;
  for (int j = 0; j < s.n_pairs; ++j)
    if (j != i) interference += p.p(j) * beam_gain(s, u, i, k, j);
  return p.p(i) * beam_gain(s, u, i, k, i) / (interference + s.sigma2);
}

double dpc_sinr(const Scenario& s, const BeamformerSet& u,
                const PowerAllocation& p, const EncodingOrder& order,
                int position, int k) {
  order.validate(s.n_pairs);
  if (position < 0 || position >= s.n_pairs)
    throw ValidationError("dpc_sinr: position out of range");
  const int i = order.pair_at(position);
  check_node_indices(s, u, p, i, k);
  double interference = 0.0;
  for (int pos = position + 1; pos < s.n_pairs; ++pos) {
    const int j = order.pair_at(pos);
    interference += p.p(j) * beam_gain(s, u, i, k, j);
  }
  return p.p(i) * beam_gain(s, u, i, k, i) / (interference + s.sigma2);
}

double pair_sum_rate(double sinr1, double sinr2) {
  if (sinr1 < 0.0 || sinr2 < 0.0)
    throw ValidationError("pair_sum_rate: SINR must be nonnegative");
  return std::log2(1.0 + sinr1) + std::log2(1.0 + sinr2);
}

double weighted_single_pair_rate(const Scenario& s, const VectorXcd& u,
                                 double power, double mu1, double mu2) {
  if (mu1 < 0.0 || mu2 < 0.0)
    throw ValidationError("weighted rate: weights must be nonnegative");
  const double snr1 = std::norm(s.channel(0, 0).dot(u)) * power / s.sigma2;
  const double snr2 = std::norm(s.channel(0, 1).dot(u)) * power / s.sigma2;
  return mu1 * std::log2(1.0 + snr1) + mu2 * std::log2(1.0 + snr2);
}

namespace {

PrecodingDesign build_design(const Scenario& s, const PowerAllocation& p,
                             const std::vector<double>& t,
                             const EncodingOrder* order) {
  s.validate();
  p.validate();
  if (static_cast<int>(t.size()) != s.n_pairs || p.p.size() != s.n_pairs)
    throw ValidationError("precoding design: parameter dimensions do not match");

  PrecodingDesign d;
  d.beams.vectors.resize(static_cast<std::size_t>(s.n_pairs));
  d.beams.weights = t;
  for (int i = 0; i < s.n_pairs; ++i)
    d.beams.vectors[static_cast<std::size_t>(i)] = single_pair_beamformer(
        s.channel(i, 0), s.channel(i, 1), t[static_cast<std::size_t>(i)]);

  d.effective_noise.resize(s.n_pairs, 2);
  for (int i = 0; i < s.n_pairs; ++i) {
    for (int k = 0; k < 2; ++k) {
      double noise = s.sigma2;
      for (int j = 0; j < s.n_pairs; ++j) {
        if (j == i) continue;
        // DPC: only pairs encoded after i interfere.
        if (order && order->position_of(j) < order->position_of(i)) continue;
        noise += p.p(j) * beam_gain(s, d.beams, i, k, j);
      }
      d.effective_noise(i, k) = noise;
    }
  }
  return d;
}

}  // namespace

PrecodingDesign successive_dpc_beamformers(const Scenario& s,
                                           const EncodingOrder& order,
                                           const PowerAllocation& p,
                                           const std::vector<double>& t) {
  order.validate(s.n_pairs);
  return build_design(s, p, t, &order);
}

PrecodingDesign linear_beamformers(const Scenario& s, const PowerAllocation& p,
                                   const std::vector<double>& t) {
  return build_design(s, p, t, nullptr);
}

}  // namespace relay
