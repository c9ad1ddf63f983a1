#include "relay/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>

namespace relay {

std::string strategy_name(Strategy s) {
  return s == Strategy::kLinear ? "linear" : "dpc";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "linear") return Strategy::kLinear;
  if (name == "dpc") return Strategy::kDpc;
  throw ValidationError("unknown strategy: " + name);
}

std::vector<VectorXd> power_simplex_grid(int n_pairs, int grid, double budget) {
  if (grid < 2) throw ValidationError("power grid must have at least 2 points");
  if (n_pairs < 1) throw ValidationError("power grid: need at least one pair");
  std::vector<VectorXd> out;
  const int ticks = grid - 1;
  // Enumerate integer compositions of `ticks` into n_pairs parts.
  std::vector<int> comp(static_cast<std::size_t>(n_pairs), 0);
  std::function<void(int, int)> rec = [&](int idx, int remaining) {
    if (idx == n_pairs - 1) {
      comp[static_cast<std::size_t>(idx)] = remaining;
      VectorXd p(n_pairs);
      for (int i = 0; i < n_pairs; ++i)
        p(i) = budget * comp[static_cast<std::size_t>(i)] / ticks;
      out.push_back(p);
      return;
    }
    for (int m = 0; m <= remaining; ++m) {
      comp[static_cast<std::size_t>(idx)] = m;
      rec(idx + 1, remaining - m);
    }
  };
  rec(0, ticks);
  return out;
}

VectorXd evaluate_rate_point(const Scenario& s, const BeamformerSet& beams,
                             const PowerAllocation& p, Strategy strategy,
                             const EncodingOrder& order) {
  VectorXd rates(s.n_pairs);
  if (strategy == Strategy::kLinear) {
    for (int i = 0; i < s.n_pairs; ++i)
      rates(i) = pair_sum_rate(linear_sinr(s, beams, p, i, 0),
                               linear_sinr(s, beams, p, i, 1));
  } else {
    for (int pos = 0; pos < s.n_pairs; ++pos)
      rates(order.pair_at(pos)) =
          pair_sum_rate(dpc_sinr(s, beams, p, order, pos, 0),
                        dpc_sinr(s, beams, p, order, pos, 1));
  }
  return rates;
}

namespace {

// gains(i, k, j) = |h_(i,k)^H u_j|^2 for a fixed tuple of beams.
struct GainTable {
  int n = 0;
  std::vector<double> g;

  GainTable(const Scenario& s, const std::vector<VectorXcd>& beams)
      : n(s.n_pairs), g(static_cast<std::size_t>(s.n_pairs * 2 * s.n_pairs)) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < n; ++j)
          at(i, k, j) = std::norm(
              s.channel(i, k).dot(beams[static_cast<std::size_t>(j)]));
  }

  double& at(int i, int k, int j) {
    return g[static_cast<std::size_t>((i * 2 + k) * n + j)];
  }
  double at(int i, int k, int j) const {
    return g[static_cast<std::size_t>((i * 2 + k) * n + j)];
  }
};

VectorXd rates_from_gains(const GainTable& gains, const VectorXd& p,
                          double sigma2, Strategy strategy,
                          const EncodingOrder& order) {
  const int n = gains.n;
  VectorXd rates(n);
  for (int pos = 0; pos < n; ++pos) {
    const int i = strategy == Strategy::kDpc ? order.pair_at(pos) : pos;
    double rate = 0.0;
    for (int k = 0; k < 2; ++k) {
      double interference = 0.0;
      if (strategy == Strategy::kDpc) {
        for (int later = pos + 1; later < n; ++later) {
          const int j = order.pair_at(later);
          interference += p(j) * gains.at(i, k, j);
        }
      } else {
        for (int j = 0; j < n; ++j)
          if (j != i) interference += p(j) * gains.at(i, k, j);
      }
      rate += std::log2(1.0 + p(i) * gains.at(i, k, i) /
                                  (interference + sigma2));
    }
    rates(i) = rate;
  }
  return rates;
}

// Collects points; the 2-D hull is computed over every evaluated point
// even when the stored point list is thinned for memory.
class RegionBuilder {
 public:
  RegionBuilder(int n_pairs, std::size_t expected)
      : two_d_(n_pairs == 2),
        stride_(expected > kMaxStored ? expected / kMaxStored + 1 : 1) {}

  void add(RatePoint&& pt) {
    if (two_d_) coords_.emplace_back(pt.rates(0), pt.rates(1));
    if (count_ % stride_ == 0) points_.push_back(std::move(pt));
    ++count_;
  }

  RateRegion finish(std::string description) {
    RateRegion region;
    region.points = std::move(points_);
    if (two_d_) region.hull = augmented_hull(coords_);
    region.description = std::move(description);
    return region;
  }

 private:
  static constexpr std::size_t kMaxStored = 100000;
  bool two_d_;
  std::size_t stride_;
  std::size_t count_ = 0;
  std::vector<RatePoint> points_;
  std::vector<Eigen::Vector2d> coords_;
};

std::vector<EncodingOrder> resolve_orders(const Scenario& s, Strategy strategy,
                                          const std::vector<EncodingOrder>* orders) {
  if (strategy == Strategy::kLinear) return {EncodingOrder::identity(s.n_pairs)};
  if (orders) {
    for (const EncodingOrder& o : *orders) o.validate(s.n_pairs);
    return *orders;
  }
  if (s.n_pairs > 6)
    throw ValidationError(
        "full-permutation DPC sweep rejected for more than 6 pairs; "
        "supply an explicit order list");
  return all_orders(s.n_pairs);
}

}  // namespace

RateRegion sweep_region(const Scenario& s, Strategy strategy, int t_grid,
                        int power_grid,
                        const std::vector<EncodingOrder>* orders) {
  s.validate();
  if (t_grid < 2) throw ValidationError("t grid must have at least 2 points");
  const std::vector<VectorXd> powers =
      power_simplex_grid(s.n_pairs, power_grid, s.power_budget);
  const std::vector<EncodingOrder> order_list =
      resolve_orders(s, strategy, orders);

  // t tuples: full grid over [0,1]^N.
  const int n = s.n_pairs;
  std::size_t n_tuples = 1;
  for (int i = 0; i < n; ++i) n_tuples *= static_cast<std::size_t>(t_grid);

  RegionBuilder builder(n, n_tuples * powers.size() * order_list.size());

  // Per-pair beams depend only on the pair's own t value; precompute.
  std::vector<std::vector<VectorXcd>> beam_cache(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int ti = 0; ti < t_grid; ++ti)
      beam_cache[static_cast<std::size_t>(i)].push_back(single_pair_beamformer(
          s.channel(i, 0), s.channel(i, 1),
          static_cast<double>(ti) / (t_grid - 1)));

  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  std::vector<VectorXcd> beams(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < n_tuples; ++flat) {
    std::size_t rem = flat;
    VectorXd t_vals(n);
    for (int i = 0; i < n; ++i) {
      tuple[static_cast<std::size_t>(i)] = static_cast<int>(rem % t_grid);
      rem /= static_cast<std::size_t>(t_grid);
      t_vals(i) = static_cast<double>(tuple[static_cast<std::size_t>(i)]) / (t_grid - 1);
      beams[static_cast<std::size_t>(i)] =
          beam_cache[static_cast<std::size_t>(i)]
                    [static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
    }
    const GainTable gains(s, beams);
    for (const VectorXd& p : powers) {
      for (const EncodingOrder& order : order_list) {
        RatePoint pt;
        pt.rates = rates_from_gains(gains, p, s.sigma2, strategy, order);
        pt.strategy = strategy;
        if (strategy == Strategy::kDpc) pt.order = order.order;
        pt.powers = p;
        pt.t_params = t_vals;
        builder.add(std::move(pt));
      }
    }
  }
  return builder.finish("sweep strategy=" + strategy_name(strategy) +
                        " t_grid=" + std::to_string(t_grid) +
                        " power_grid=" + std::to_string(power_grid));
}

RateRegion random_beam_region(const Scenario& s, Strategy strategy,
                              int n_samples, std::uint64_t seed,
                              int power_grid) {
  s.validate();
  if (n_samples < 1) throw ValidationError("need at least one beam sample");
  const std::vector<VectorXd> powers =
      power_simplex_grid(s.n_pairs, power_grid, s.power_budget);
  const std::vector<EncodingOrder> order_list =
      resolve_orders(s, strategy, nullptr);

  const int n = s.n_pairs;
  RegionBuilder builder(
      n, static_cast<std::size_t>(n_samples) * powers.size() * order_list.size());

  std::vector<VectorXcd> beams(static_cast<std::size_t>(n));
  for (int sample = 0; sample < n_samples; ++sample) {
    // One substream per sample index keeps sample prefixes stable.
    GaussianStream stream(seed, static_cast<std::uint64_t>(sample));
    for (int i = 0; i < n; ++i)
      beams[static_cast<std::size_t>(i)] = stream.next_unit_vector(s.n_antennas);
    const GainTable gains(s, beams);
    for (const VectorXd& p : powers) {
      for (const EncodingOrder& order : order_list) {
        RatePoint pt;
        pt.rates = rates_from_gains(gains, p, s.sigma2, strategy, order);
        pt.strategy = strategy;
        if (strategy == Strategy::kDpc) pt.order = order.order;
        pt.powers = p;
        pt.t_params = VectorXd::Constant(n, -1.0);  // no t parameter
        builder.add(std::move(pt));
      }
    }
  }
  return builder.finish("random strategy=" + strategy_name(strategy) +
                        " n_samples=" + std::to_string(n_samples) +
                        " seed=" + std::to_string(seed));
}

std::vector<Eigen::Vector2d> convex_hull_2d(
    const std::vector<Eigen::Vector2d>& points) {
  if (points.empty()) throw ValidationError("convex hull of empty point set");
  std::vector<Eigen::Vector2d> pts = points;
  std::sort(pts.begin(), pts.end(),
            [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
            });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const std::size_t m = pts.size();
  if (m <= 2) return pts;

  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };

  std::vector<Eigen::Vector2d> hull(2 * m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = m - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first

  // Collinear inputs collapse to the two extreme points.
  if (hull.size() == 2 || hull.empty()) return {pts.front(), pts.back()};
  return hull;
}

std::vector<Eigen::Vector2d> augmented_hull(
    const std::vector<Eigen::Vector2d>& points) {
  std::vector<Eigen::Vector2d> aug = points;
  double xmax = 0.0;
  double ymax = 0.0;
  for (const Eigen::Vector2d& p : points) {
    xmax = std::max(xmax, p.x());
    ymax = std::max(ymax, p.y());
  }
  aug.emplace_back(0.0, 0.0);
  aug.emplace_back(xmax, 0.0);
  aug.emplace_back(0.0, ymax);
  return convex_hull_2d(aug);
}

double polygon_area(const std::vector<Eigen::Vector2d>& hull) {
  if (hull.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector2d& a = hull[i];
    const Eigen::Vector2d& b = hull[(i + 1) % hull.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

bool hull_contains(const std::vector<Eigen::Vector2d>& hull,
                   const Eigen::Vector2d& q, double slack) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return (q - hull[0]).lpNorm<Eigen::Infinity>() <= slack;
  if (hull.size() == 2) {
    // On the segment, within slack.
    const Eigen::Vector2d d = hull[1] - hull[0];
    const double len2 = d.squaredNorm();
    const double t = len2 > 0.0 ? (q - hull[0]).dot(d) / len2 : 0.0;
    const Eigen::Vector2d proj = hull[0] + std::clamp(t, 0.0, 1.0) * d;
    return (q - proj).norm() <= slack;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector2d& a = hull[i];
    const Eigen::Vector2d& b = hull[(i + 1) % hull.size()];
    const double cross =
        (b.x() - a.x()) * (q.y() - a.y()) - (b.y() - a.y()) * (q.x() - a.x());
    if (cross < -slack) return false;
  }
  return true;
}

RegionMetrics region_metrics(const RateRegion& a, const RateRegion& b) {
  if (a.hull.empty() || b.hull.empty())
    throw ValidationError("region metrics need two-pair regions with hulls");
  RegionMetrics m;
  m.area_a = polygon_area(a.hull);
  m.area_b = polygon_area(b.hull);
  m.area_ratio = m.area_b > 0.0 ? m.area_a / m.area_b
                                : std::numeric_limits<double>::quiet_NaN();
  auto max_sum = [](const RateRegion& r) {
    double best = 0.0;
    for (const Eigen::Vector2d& v : r.hull) best = std::max(best, v.x() + v.y());
    return best;
  };
  m.max_sum_rate_a = max_sum(a);
  m.max_sum_rate_b = max_sum(b);
  return m;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(v[i] + 1);  // 1-based pair labels in output
  }
  return out;
}

std::string join_doubles(const VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += '|';
    out += fmt(v(i));
  }
  return out;
}

}  // namespace

void write_region_csv(const RateRegion& region, std::ostream& out,
                      const std::string& config_line) {
  if (!config_line.empty()) out << "# " << config_line << "\n";
  if (!region.description.empty()) out << "# " << region.description << "\n";
  const int n = region.points.empty()
                    ? 0
                    : static_cast<int>(region.points.front().rates.size());
  out << "strategy,order,t_params,powers";
  for (int i = 1; i <= n; ++i) out << ",R_pair_" << i;
  out << "\n";
  for (const RatePoint& pt : region.points) {
    out << strategy_name(pt.strategy) << "," << join_ints(pt.order) << ","
        << join_doubles(pt.t_params) << "," << join_doubles(pt.powers);
    for (Eigen::Index i = 0; i < pt.rates.size(); ++i)
      out << "," << fmt(pt.rates(i));
    out << "\n";
  }
}

void write_hull_csv(const RateRegion& region, std::ostream& out,
                    const std::string& config_line) {
  if (!config_line.empty()) out << "# " << config_line << "\n";
  out << "hull_x,hull_y\n";
  for (const Eigen::Vector2d& v : region.hull)
    out << fmt(v.x()) << "," << fmt(v.y()) << "\n";
}

void write_region_svg(const std::vector<const RateRegion*>& regions,
                      std::ostream& out) {
  const int w = 640;
  const int h = 480;
  const int margin = 56;
  double xmax = 1e-9;
  double ymax = 1e-9;
  for (const RateRegion* r : regions)
    for (const Eigen::Vector2d& v : r->hull) {
      xmax = std::max(xmax, v.x());
      ymax = std::max(ymax, v.y());
    }
  auto px = [&](double x) { return margin + x / xmax * (w - 2 * margin); };
  auto py = [&](double y) { return h - margin - y / ymax * (h - 2 * margin); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\""
      << w - margin << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\""
      << margin << "\" y2=\"" << margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">Sum-Rate Pair 1</text>\n";
  out << "<text x=\"16\" y=\"" << h / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
      << h / 2 << ")\">Sum-Rate Pair 2</text>\n";

  int ci = 0;
  for (const RateRegion* r : regions) {
    const char* color = colors[ci++ % 4];
    const std::size_t stride = std::max<std::size_t>(1, r->points.size() / 2000);
    for (std::size_t i = 0; i < r->points.size(); i += stride) {
      const VectorXd& rates = r->points[i].rates;
      if (rates.size() != 2) continue;
      out << "<circle cx=\"" << px(rates(0)) << "\" cy=\"" << py(rates(1))
          << "\" r=\"1.2\" fill=\"" << color << "\" fill-opacity=\"0.35\"/>\n";
    }
    if (!r->hull.empty()) {
      out << "<polygon points=\"";
      for (const Eigen::Vector2d& v : r->hull)
        out << px(v.x()) << "," << py(v.y()) << " ";
      out << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace relay
