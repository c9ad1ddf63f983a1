#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relay/core.hpp"
#include "relay/rate_region.hpp"

using namespace relay;
using Eigen::Vector2d;

namespace {

// O(n^3) reference hull check: a point is a hull vertex iff it is not
// strictly inside the hull, and every hull edge keeps all points on its left.
bool hull_is_valid(const std::vector<Vector2d>& pts,
                   const std::vector<Vector2d>& hull) {
  const std::size_t h = hull.size();
  if (h < 3) return true;
  for (std::size_t e = 0; e < h; ++e) {
    const Vector2d a = hull[e];
    const Vector2d b = hull[(e + 1) % h];
    for (const Vector2d& p : pts) {
      const double cross =
          (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
      if (cross < -1e-9) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("power simplex grid covers the simplex") {
  const auto grid = power_simplex_grid(2, 5, 4.0);
  CHECK(grid.size() == 5);
  for (const VectorXd& p : grid) {
    CHECK(p.sum() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(p.minCoeff() >= 0.0);
  }
  // Endpoints put everything on one pair.
  CHECK(grid.front().maxCoeff() == doctest::Approx(4.0));
  CHECK(grid.back().maxCoeff() == doctest::Approx(4.0));
  // Three pairs: compositions of (grid-1) into 3 parts, C(5,2) = 10.
  CHECK(power_simplex_grid(3, 4, 1.0).size() == 10);
}

TEST_CASE("strategy names round-trip") {
  CHECK(strategy_from_name(strategy_name(Strategy::kLinear)) ==
        Strategy::kLinear);
  CHECK(strategy_from_name(strategy_name(Strategy::kDpc)) == Strategy::kDpc);
  CHECK_THROWS_AS(strategy_from_name("bogus"), ValidationError);
}

TEST_CASE("evaluate_rate_point matches hand arithmetic") {
  Scenario s;
  s.n_pairs = 2;
  s.n_antennas = 1;
  s.sigma2 = 1.0;
  s.power_budget = 2.0;
  VectorXcd one(1);
  one << 1.0;
  s.channels.push_back({one, one});
  s.channels.push_back({one, one});
  BeamformerSet beams;
  beams.vectors = {one, one};
  PowerAllocation power;
  power.p = VectorXd::Constant(2, 1.0);
  const EncodingOrder order = EncodingOrder::identity(2);
  const VectorXd lin =
      evaluate_rate_point(s, beams, power, Strategy::kLinear, order);
  // Every node: own 1, interference 1, noise 1 -> SINR 1/2, pair sum
  // rate 2 * log2(1.5).
  CHECK(lin(0) == doctest::Approx(2.0 * std::log2(1.5)).epsilon(1e-12));
  CHECK(lin(1) == doctest::Approx(2.0 * std::log2(1.5)).epsilon(1e-12));
  const VectorXd dpc =
      evaluate_rate_point(s, beams, power, Strategy::kDpc, order);
  // First-encoded pair keeps SINR 1/2; last-encoded sees clean SINR 1.
  CHECK(dpc(0) == doctest::Approx(2.0 * std::log2(1.5)).epsilon(1e-12));
  CHECK(dpc(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("convex hull on a known point set") {
  std::vector<Vector2d> pts{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0}};
  const auto hull = convex_hull_2d(pts);
  CHECK(hull.size() == 4);
  CHECK(polygon_area(hull) == doctest::Approx(4.0));
  for (const Vector2d& p : pts) CHECK(hull_contains(hull, p));
  CHECK_FALSE(hull_contains(hull, Vector2d(3.0, 1.0)));
}

TEST_CASE("collinear input collapses to its endpoints") {
  std::vector<Vector2d> pts{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  const auto hull = convex_hull_2d(pts);
  CHECK(hull.size() == 2);
  CHECK(polygon_area(hull) == 0.0);
}

TEST_CASE("random hulls agree with the brute-force edge test") {
  GaussianStream stream(101, 0);
  std::vector<Vector2d> pts;
  for (int i = 0; i < 200; ++i) {
    const Complex z = stream.next_complex();
    pts.emplace_back(z.real(), z.imag());
  }
  const auto hull = convex_hull_2d(pts);
  CHECK(hull.size() >= 3);
  CHECK(hull_is_valid(pts, hull));
  for (const Vector2d& p : pts) CHECK(hull_contains(hull, p, 1e-9));
  // Every hull vertex is one of the inputs.
  for (const Vector2d& v : hull)
    CHECK(std::any_of(pts.begin(), pts.end(), [&](const Vector2d& p) {
      return (p - v).norm() < 1e-15;
    }));
}

TEST_CASE("augmented hull contains the axis feet and origin") {
  std::vector<Vector2d> pts{{1.0, 2.0}, {2.0, 1.0}};
  const auto hull = augmented_hull(pts);
  CHECK(hull_contains(hull, Vector2d(0.0, 0.0)));
  CHECK(hull_contains(hull, Vector2d(2.0, 0.0)));
  CHECK(hull_contains(hull, Vector2d(0.0, 2.0)));
  CHECK(polygon_area(hull) == doctest::Approx(3.5));
}

TEST_CASE("sweep region is deterministic and hull-consistent") {
  const Scenario s = generate_channels(2, 2, 1.0, 2.0, 21);
  const RateRegion a = sweep_region(s, Strategy::kLinear, 9, 9);
  const RateRegion b = sweep_region(s, Strategy::kLinear, 9, 9);
  REQUIRE(a.points.size() == b.points.size());
  CHECK(a.points.size() == 9 * 9 * 9);
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i].rates == b.points[i].rates);
  for (const RatePoint& p : a.points) {
    CHECK(p.rates.minCoeff() >= 0.0);
    CHECK(hull_contains(a.hull, Vector2d(p.rates(0), p.rates(1)), 1e-9));
  }
}

TEST_CASE("DPC sweep hull contains the linear sweep hull") {
  for (std::uint64_t seed : {3u, 14u, 59u}) {
    const Scenario s = generate_channels(2, 2, 1.0, 2.0, seed);
    const RateRegion lin = sweep_region(s, Strategy::kLinear, 9, 9);
    const RateRegion dpc = sweep_region(s, Strategy::kDpc, 9, 9);
    for (const Eigen::Vector2d& v : lin.hull)
      CHECK(hull_contains(dpc.hull, v, 1e-9));
  }
}

TEST_CASE("random beam region is sample-prefix monotone") {
  const Scenario s = generate_channels(2, 2, 1.0, 2.0, 33);
  const RateRegion small = random_beam_region(s, Strategy::kLinear, 50, 7, 5);
  const RateRegion big = random_beam_region(s, Strategy::kLinear, 120, 7, 5);
  REQUIRE(small.points.size() <= big.points.size());
  for (std::size_t i = 0; i < small.points.size(); ++i)
    CHECK(small.points[i].rates == big.points[i].rates);
  // More samples can only grow the hull.
  for (const Eigen::Vector2d& v : small.hull)
    CHECK(hull_contains(big.hull, v, 1e-9));
}

TEST_CASE("region metrics report areas and max sum rates") {
  RateRegion a, b;
  a.hull = {{0, 0}, {2, 0}, {0, 2}};
  b.hull = {{0, 0}, {4, 0}, {0, 4}};
  const RegionMetrics m = region_metrics(a, b);
  CHECK(m.area_a == doctest::Approx(2.0));
  CHECK(m.area_b == doctest::Approx(8.0));
  CHECK(m.area_ratio == doctest::Approx(0.25));
  CHECK(m.max_sum_rate_a == doctest::Approx(2.0));
  CHECK(m.max_sum_rate_b == doctest::Approx(4.0));
}

TEST_CASE("CSV output carries provenance columns") {
  const Scenario s = generate_channels(2, 2, 1.0, 2.0, 5);
  const RateRegion region = sweep_region(s, Strategy::kDpc, 3, 3);
  std::ostringstream out;
  write_region_csv(region, out, "# cmd=test");
  const std::string text = out.str();
  CHECK(text.find("# cmd=test") != std::string::npos);
  CHECK(text.find("strategy,order,t_params,powers,R_pair_1,R_pair_2") !=
        std::string::npos);
  CHECK(text.find("dpc") != std::string::npos);
  std::ostringstream hull_out;
  write_hull_csv(region, hull_out);
  CHECK(hull_out.str().find("hull_x,hull_y") != std::string::npos);
  std::ostringstream svg;
  write_region_svg({&region}, svg);
  CHECK(svg.str().find("<svg") != std::string::npos);
}
