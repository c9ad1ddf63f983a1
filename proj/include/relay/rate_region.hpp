#ifndef RELAY_RATE_REGION_HPP
#define RELAY_RATE_REGION_HPP

#include <iosfwd>

#include "relay/precoding.hpp"

namespace relay {

enum class Strategy { kLinear, kDpc };

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

/// One achievable per-pair sum-rate vector plus the parameters it came from.
struct RatePoint {
  VectorXd rates;
  Strategy strategy = Strategy::kLinear;
  std::vector<int> order;  // empty for linear
  VectorXd powers;
  VectorXd t_params;
};

struct RateRegion {
  std::vector<RatePoint> points;
  // Convex hull of the two-pair projection, counter-clockwise, augmented
  // with the origin and axis feet (time sharing with silence is feasible).
  std::vector<Eigen::Vector2d> hull;
  std::string description;
};

/// Uniform grid on the power simplex sum(p) = budget with `grid` points
/// along each edge (N = 2 gives exactly `grid` splits).
std::vector<VectorXd> power_simplex_grid(int n_pairs, int grid, double budget);

/// Rates of one (beams, powers) configuration; order ignored for linear.
VectorXd evaluate_rate_point(const Scenario& s, const BeamformerSet& beams,
                             const PowerAllocation& p, Strategy strategy,
                             const EncodingOrder& order);

/// Grid sweep over per-pair mixing weights t and power splits; DPC sweeps
/// additionally enumerate encoding orders (all of them unless `orders` is
/// given; more than 6 pairs requires an explicit order list).
RateRegion sweep_region(const Scenario& s, Strategy strategy, int t_grid,
                        int power_grid,
                        const std::vector<EncodingOrder>* orders = nullptr);

/// Monte-Carlo baseline: n_samples beam tuples drawn uniformly on the
/// complex unit sphere, powers on the simplex grid, orders enumerated for
/// DPC. Deterministic in `seed`, and sample-prefix monotone.
RateRegion random_beam_region(const Scenario& s, Strategy strategy,
                              int n_samples, std::uint64_t seed,
                              int power_grid = 33);

/// Plain counter-clockwise convex hull (collinear points dropped).
std::vector<Eigen::Vector2d> convex_hull_2d(
    const std::vector<Eigen::Vector2d>& points);

/// Hull of the points closed under coordinate decrease towards 0.
std::vector<Eigen::Vector2d> augmented_hull(
    const std::vector<Eigen::Vector2d>& points);

/// Shoelace area of a counter-clockwise polygon.
double polygon_area(const std::vector<Eigen::Vector2d>& hull);

/// Signed distance check: true when q lies inside (or on) the hull with
/// the given half-plane slack.
bool hull_contains(const std::vector<Eigen::Vector2d>& hull,
                   const Eigen::Vector2d& q, double slack = 1e-9);

struct RegionMetrics {
  double area_a = 0.0;
  double area_b = 0.0;
  double area_ratio = 0.0;
  double max_sum_rate_a = 0.0;
  double max_sum_rate_b = 0.0;
};

RegionMetrics region_metrics(const RateRegion& a, const RateRegion& b);

/// CSV per the region interface: one row per point, provenance included.
void write_region_csv(const RateRegion& region, std::ostream& out,
                      const std::string& config_line = "");
void write_hull_csv(const RateRegion& region, std::ostream& out,
                    const std::string& config_line = "");

/// Static scatter + hull overlay figure for two-pair regions.
void write_region_svg(const std::vector<const RateRegion*>& regions,
                      std::ostream& out);

}  // namespace relay

#endif  // RELAY_RATE_REGION_HPP
