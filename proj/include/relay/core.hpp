#ifndef RELAY_CORE_HPP
#define RELAY_CORE_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relay {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Module-wide numeric tolerances.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigResidualTol = 1e-9;
inline constexpr double kUnitNormTol = 1e-12;

/// Thrown on invalid arguments or malformed input files.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counter-style seeded generator (splitmix64) feeding Box-Muller draws.
/// Substreams are derived from (seed, stream_index) so parallel generation
/// of different streams is reproducible and order-independent.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream_index);

  /// One circular complex Gaussian sample, unit variance
  /// (real and imaginary parts each have variance 1/2).
  Complex next_complex();

  /// Vector of i.i.d. circular complex Gaussian entries.
  VectorXcd next_vector(int n);

  /// Uniform draw on the complex unit sphere in dimension n.
  VectorXcd next_unit_vector(int n);

 private:
  double next_uniform01();
  std::uint64_t state_;
};

/// Channels, noise power and relay power budget for one network instance.
/// Node (i, k) has channel channels[i][k], i in [0, n_pairs), k in {0, 1}.
struct Scenario {
  int n_pairs = 0;
  int n_antennas = 0;
  double sigma2 = 0.0;
  double power_budget = 0.0;
  std::optional<std::uint64_t> seed;
  std::vector<std::array<VectorXcd, 2>> channels;

  const VectorXcd& channel(int pair, int node) const;
  void validate() const;
};

struct EigPair {
  double value = 0.0;
  VectorXcd vector;
};

/// Deterministic i.i.d. CN(0,1) channel generation; a fixed seed gives a
/// bit-identical Scenario regardless of evaluation order.
Scenario generate_channels(int n_pairs, int n_antennas, double sigma2,
                           double power_budget, std::uint64_t seed);

/// Two-pair scenario with channel directions drawn from `seed` and then
/// rescaled so that ||h_(i,k)||^2 matches `norms_sq[i][k]` exactly.
/// Directions are implementation-chosen, only the norms are meaningful.
Scenario scenario_with_norms(const std::array<std::array<double, 2>, 2>& norms_sq,
                             double sigma2, double power_budget,
                             std::uint64_t seed);

/// Largest eigenvalue and unit eigenvector of a Hermitian PSD matrix.
/// Ties in the eigenvalue are broken by picking the candidate whose
/// maximal-magnitude component has the smallest index; the vector is
/// phase-normalized so that component is real positive.
EigPair dominant_eigpair(const MatrixXcd& m);

/// All eigenvalues of a Hermitian matrix, ascending.
VectorXd hermitian_eigenvalues(const MatrixXcd& m);

double max_hermitian_deviation(const MatrixXcd& m);

/// Scenario file I/O (JSON, see README for the schema). Round-trips are
/// bit-exact on the stored values.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(const std::string& path);

}  // namespace relay

#endif  // RELAY_CORE_HPP
