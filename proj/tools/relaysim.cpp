// relaysim: scenario generation, rate-region sweeps, power minimization
// and duality reports for the two-way relay broadcast phase.
//
// Exit codes: 0 success, 2 infeasible, 3 invalid input, 4 solver failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relay/core.hpp"
#include "relay/power_duality.hpp"
#include "relay/rate_region.hpp"
#include "relay/sdp.hpp"

namespace {

using nlohmann::json;

constexpr int kExitInfeasible = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitSolverFailure = 4;

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Timestamps live only in the sidecar log so the main outputs stay
// bit-reproducible across reruns.
void write_sidecar_log(const std::string& out_path, const json& config) {
  std::ofstream log(out_path + ".log");
  const auto now = std::chrono::system_clock::now();
  log << "written_at_unix="
      << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()
      << "\nconfig=" << config.dump() << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw relay::ValidationError("cannot open output file: " + path);
  return out;
}

double power_from_snr_db(double snr_db, double sigma2) {
  return sigma2 * std::pow(10.0, snr_db / 10.0);
}

relay::EncodingOrder parse_order(const std::string& text, int n_pairs) {
  relay::EncodingOrder order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    order.order.push_back(std::stoi(item) - 1);
  order.validate(n_pairs);
  return order;
}

json result_to_json(const relay::MinPowerResult& r) {
  json j;
  j["powers"] = std::vector<double>(r.powers.begin(), r.powers.end());
  j["total"] = r.total;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j;
}

// --------------------------------------------------------------------------

struct GenScenarioOpts {
  int pairs = 2;
  int antennas = 0;  // 0: same as pairs
  double sigma2 = 1.0;
  double power = 1.0;
  double snr_db = std::nan("");
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_scenario(const GenScenarioOpts& o, const json& config) {
  const int antennas = o.antennas > 0 ? o.antennas : o.pairs;
  const double power =
      std::isnan(o.snr_db) ? o.power : power_from_snr_db(o.snr_db, o.sigma2);
  const relay::Scenario s =
      relay::generate_channels(o.pairs, antennas, o.sigma2, power, o.seed);
  relay::save_scenario(s, o.out);
  write_sidecar_log(o.out, config);
  for (int i = 0; i < s.n_pairs; ++i)
    for (int k = 0; k < 2; ++k)
      std::cout << "||h_(" << i + 1 << "," << k + 1
                << ")||^2 = " << s.channel(i, k).squaredNorm() << "\n";
  if (antennas != o.pairs)
    std::cout << "note: n_antennas != n_pairs (the standard setup pairs one "
                 "antenna per served pair)\n";
  return 0;
}

// --------------------------------------------------------------------------

struct RateRegionOpts {
  std::string scenario_path;
  std::string strategy = "dpc";
  std::string beamformer = "single-pair";
  double snr_db = std::nan("");
  int t_grid = 33;
  int power_grid = 33;
  int samples = 10000;
  int mu_grid = 21;
  double eps = 0.01;
  std::uint64_t seed = 1;
  std::string out;
  std::string hull_out;
  std::string svg_out;
};

relay::RateRegion bisect_boundary(const relay::Scenario& s,
                                  relay::PrecodingMode mode, int mu_grid,
                                  double eps) {
  relay::RateRegion region;
  if (s.n_pairs > 2)
    throw relay::ValidationError(
        "sdp-bisect boundary tracing supports 1 or 2 pairs");
  std::vector<relay::VectorXd> weights;
  if (s.n_pairs == 1) {
    weights.push_back(relay::VectorXd::Ones(1));
  } else {
    for (int g = 0; g < mu_grid; ++g) {
      relay::VectorXd mu(2);
      mu(0) = static_cast<double>(g) / (mu_grid - 1);
      mu(1) = 1.0 - mu(0);
      weights.push_back(mu);
    }
  }
  for (const relay::VectorXd& mu : weights) {
    const relay::BisectResult r =
        relay::bisect_rate_region(s, relay::RateWeights{mu}, mode, nullptr, eps);
    region.points.push_back(r.point);
  }
  if (s.n_pairs == 2) {
    std::vector<Eigen::Vector2d> coords;
    for (const relay::RatePoint& pt : region.points)
      coords.emplace_back(pt.rates(0), pt.rates(1));
    region.hull = relay::augmented_hull(coords);
  }
  region.description = "sdp-bisect mu_grid=" + std::to_string(mu_grid);
  return region;
}

int run_rate_region(const RateRegionOpts& o, const json& config) {
  relay::Scenario s = relay::load_scenario(o.scenario_path);
  if (!std::isnan(o.snr_db)) s.power_budget = power_from_snr_db(o.snr_db, s.sigma2);
  const relay::Strategy strategy = relay::strategy_from_name(o.strategy);

  relay::RateRegion region;
  if (o.beamformer == "single-pair") {
    region = relay::sweep_region(s, strategy, o.t_grid, o.power_grid);
  } else if (o.beamformer == "random") {
    region = relay::random_beam_region(s, strategy, o.samples, o.seed, o.power_grid);
  } else if (o.beamformer == "sdp-bisect") {
    region = bisect_boundary(s,
                             strategy == relay::Strategy::kDpc
                                 ? relay::PrecodingMode::kDpc
                                 : relay::PrecodingMode::kLinear,
                             o.mu_grid, o.eps);
  } else {
    throw relay::ValidationError("unknown beamformer: " + o.beamformer);
  }

  {
    auto out = open_out(o.out);
    relay::write_region_csv(region, out, "config=" + config.dump());
  }
  const std::string hull_path =
      o.hull_out.empty() ? o.out + ".hull.csv" : o.hull_out;
  {
    auto out = open_out(hull_path);
    relay::write_hull_csv(region, out, "config=" + config.dump());
  }
  if (!o.svg_out.empty()) {
    auto out = open_out(o.svg_out);
    relay::write_region_svg({&region}, out);
  }
  write_sidecar_log(o.out, config);
  std::cout << "points=" << region.points.size()
            << " hull_vertices=" << region.hull.size() << "\n";
  return 0;
}

// --------------------------------------------------------------------------

struct PowerMinOpts {
  std::string instance_path;
  bool builtin = false;
  bool uplink = false;
  std::string method = "fixed-point";  // or "sdp"
  std::string scenario_path;
  double gamma = 1.0;
  std::string mode = "linear";
  std::string order_text;
  std::string out;
};

relay::CouplingSystem resolve_instance(const std::string& path, bool builtin) {
  if (builtin) return relay::builtin_counterexample();
  if (path.empty())
    throw relay::ValidationError("need --instance or --builtin-counterexample");
  return relay::load_coupling(path);
}

int run_power_min(const PowerMinOpts& o, const json& config) {
  json report;
  report["config"] = config;

  if (o.method == "sdp") {
    if (o.scenario_path.empty())
      throw relay::ValidationError("--method sdp requires --scenario");
    const relay::Scenario s = relay::load_scenario(o.scenario_path);
    const relay::MatrixXd gamma =
        relay::MatrixXd::Constant(s.n_pairs, 2, o.gamma);
    const relay::PrecodingMode mode = o.mode == "dpc"
                                          ? relay::PrecodingMode::kDpc
                                          : relay::PrecodingMode::kLinear;
    relay::EncodingOrder order = relay::EncodingOrder::identity(s.n_pairs);
    if (!o.order_text.empty()) order = parse_order(o.order_text, s.n_pairs);
    const relay::SdpProblem problem = relay::build_sdp(
        s, gamma, mode, mode == relay::PrecodingMode::kDpc ? &order : nullptr);
    const relay::PsdSolution sol = relay::sdp_solve(problem);
    report["status"] = sol.status == relay::SdpStatus::kOptimal ? "optimal"
                       : sol.status == relay::SdpStatus::kInfeasible
                           ? "infeasible"
                           : "numerical-failure";
    if (sol.status == relay::SdpStatus::kOptimal) {
      report["objective"] = sol.objective;
      report["residuals"] = {{"primal", sol.primal_residual},
                             {"dual", sol.dual_residual},
                             {"complementarity", sol.complementarity}};
      json ranks = json::array();
      for (const auto& q : sol.q) {
        const relay::VectorXd ev = relay::hermitian_eigenvalues(q);
        const double top = ev.maxCoeff();
        int rank = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
          if (ev(i) > 1e-7 * std::max(1.0, top)) ++rank;
        ranks.push_back(rank);
      }
      report["ranks"] = ranks;
      const relay::Rank1Result r1 = relay::rank1_extract(
          sol, s, gamma, mode,
          mode == relay::PrecodingMode::kDpc ? &order : nullptr);
      report["repaired_total"] = r1.repaired_total;
      report["repair_feasible"] = r1.repair_feasible;
    }
    if (!o.out.empty()) {
      auto out = open_out(o.out);
      out << report.dump(2) << "\n";
      write_sidecar_log(o.out, config);
    }
    std::cout << report.dump(2) << "\n";
    if (sol.status == relay::SdpStatus::kInfeasible) return kExitInfeasible;
    if (sol.status == relay::SdpStatus::kNumericalFailure)
      return kExitSolverFailure;
    return 0;
  }

  const relay::CouplingSystem sys = resolve_instance(o.instance_path, o.builtin);
  const relay::MinPowerResult res =
      o.uplink ? relay::min_power_uplink(sys) : relay::min_power_downlink(sys);
  report["direction"] = o.uplink ? "uplink" : "downlink";
  report["result"] = result_to_json(res);
  if (!res.converged)
    report["infeasibility"] = {
        {"max_power", res.powers.maxCoeff()},
        {"note", "monotone iterate exceeded the divergence cap"}};
  if (!o.out.empty()) {
    auto out = open_out(o.out);
    out << report.dump(2) << "\n";
    write_sidecar_log(o.out, config);
  }
  std::cout << report.dump(2) << "\n";
  return res.converged ? 0 : kExitInfeasible;
}

struct DualityOpts {
  std::string instance_path;
  bool builtin = false;
  std::string out;
};

int run_duality_check(const DualityOpts& o, const json& config) {
  const relay::CouplingSystem sys = resolve_instance(o.instance_path, o.builtin);
  const relay::MinPowerResult dl = relay::min_power_downlink(sys);
  const relay::MinPowerResult ul = relay::min_power_uplink(sys);
  if (!dl.converged || !ul.converged) {
    json report;
    report["config"] = config;
    report["status"] = "infeasible";
    std::cout << report.dump(2) << "\n";
    return kExitInfeasible;
  }
  const relay::DualityReport rep = relay::duality_check(sys);
  json report;
  report["config"] = config;
  report["dl_total"] = rep.dl_total;
  report["ul_total"] = rep.ul_total;
  report["gap"] = rep.gap;
  report["per_k_dl"] = {rep.per_k_dl[0], rep.per_k_dl[1]};
  report["per_k_ul"] = {rep.per_k_ul[0], rep.per_k_ul[1]};
  report["iterations"] = {{"downlink", rep.dl_iterations},
                          {"uplink", rep.ul_iterations}};
  if (!o.out.empty()) {
    auto out = open_out(o.out);
    out << report.dump(2) << "\n";
    write_sidecar_log(o.out, config);
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------------------

struct SdpRegionOpts {
  std::string scenario_path;
  std::string mode = "dpc";
  double snr_db = std::nan("");
  int mu_grid = 21;
  double eps = 0.01;
  std::string out;
  std::string trace_out;
};

int run_sdp_region(const SdpRegionOpts& o, const json& config) {
  relay::Scenario s = relay::load_scenario(o.scenario_path);
  if (!std::isnan(o.snr_db)) s.power_budget = power_from_snr_db(o.snr_db, s.sigma2);
  const relay::PrecodingMode mode = o.mode == "dpc"
                                        ? relay::PrecodingMode::kDpc
                                        : relay::PrecodingMode::kLinear;
  if (s.n_pairs > 2)
    throw relay::ValidationError("sdp-region supports 1 or 2 pairs");

  relay::RateRegion region;
  json traces = json::array();
  std::vector<relay::VectorXd> weights;
  if (s.n_pairs == 1) {
    weights.push_back(relay::VectorXd::Ones(1));
  } else {
    for (int g = 0; g < o.mu_grid; ++g) {
      relay::VectorXd mu(2);
      mu(0) = static_cast<double>(g) / (o.mu_grid - 1);
      mu(1) = 1.0 - mu(0);
      weights.push_back(mu);
    }
  }
  for (const relay::VectorXd& mu : weights) {
    const relay::BisectResult r =
        relay::bisect_rate_region(s, relay::RateWeights{mu}, mode, nullptr, o.eps);
    region.points.push_back(r.point);
    json trace;
    trace["mu"] = std::vector<double>(mu.begin(), mu.end());
    trace["rate_scale"] = r.rate_scale;
    trace["r_hi"] = r.r_hi;
    trace["iterations"] = r.iterations;
    json probes = json::array();
    for (const auto& [rate, ok] : r.probes)
      probes.push_back({{"R", rate}, {"feasible", ok}});
    trace["probes"] = probes;
    traces.push_back(trace);
  }
  if (s.n_pairs == 2) {
    std::vector<Eigen::Vector2d> coords;
    for (const relay::RatePoint& pt : region.points)
      coords.emplace_back(pt.rates(0), pt.rates(1));
    region.hull = relay::augmented_hull(coords);
  }
  region.description = "sdp-region mode=" + o.mode;

  {
    auto out = open_out(o.out);
    relay::write_region_csv(region, out, "config=" + config.dump());
  }
  if (!o.trace_out.empty()) {
    json doc;
    doc["config"] = config;
    doc["traces"] = traces;
    auto out = open_out(o.trace_out);
    out << doc.dump(2) << "\n";
  }
  write_sidecar_log(o.out, config);
  std::cout << "points=" << region.points.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-way MIMO relay broadcast-phase simulator"};
  app.require_subcommand(1);

  GenScenarioOpts gen;
  CLI::App* cmd_gen = app.add_subcommand("gen-scenario", "generate a channel scenario");
  cmd_gen->add_option("--pairs", gen.pairs, "number of node pairs")->check(CLI::PositiveNumber);
  cmd_gen->add_option("--antennas", gen.antennas, "relay antennas (default: pairs)");
  cmd_gen->add_option("--sigma2", gen.sigma2, "noise power");
  cmd_gen->add_option("--power", gen.power, "relay power budget");
  cmd_gen->add_option("--snr-db", gen.snr_db, "set budget as sigma2*10^(SNR/10)");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("--out", gen.out, "output scenario JSON")->required();

  RateRegionOpts rr;
  CLI::App* cmd_rr = app.add_subcommand("rate-region", "sweep an achievable rate region");
  cmd_rr->add_option("--scenario", rr.scenario_path, "scenario JSON")->required();
  cmd_rr->add_option("--strategy", rr.strategy, "linear|dpc");
  cmd_rr->add_option("--beamformer", rr.beamformer, "single-pair|random|sdp-bisect");
  cmd_rr->add_option("--snr-db", rr.snr_db, "override power budget via SNR");
  cmd_rr->add_option("--t-grid", rr.t_grid, "t grid points per pair")->check(CLI::PositiveNumber);
  cmd_rr->add_option("--power-grid", rr.power_grid, "power simplex grid")->check(CLI::PositiveNumber);
  cmd_rr->add_option("--samples", rr.samples, "random beam tuples")->check(CLI::PositiveNumber);
  cmd_rr->add_option("--mu-grid", rr.mu_grid, "weight grid for sdp-bisect");
  cmd_rr->add_option("--eps", rr.eps, "bisection accuracy (bits)");
  cmd_rr->add_option("--seed", rr.seed, "random search seed");
  cmd_rr->add_option("--out", rr.out, "points CSV path")->required();
  cmd_rr->add_option("--hull-out", rr.hull_out, "hull CSV path");
  cmd_rr->add_option("--svg", rr.svg_out, "optional SVG figure");

  PowerMinOpts pm;
  CLI::App* cmd_pm = app.add_subcommand("power-min", "SINR-constrained power minimization");
  cmd_pm->add_option("--instance", pm.instance_path, "coupling instance JSON");
  cmd_pm->add_flag("--builtin-counterexample", pm.builtin, "use the fixed counter-example");
  cmd_pm->add_flag("--uplink", pm.uplink, "solve the dual uplink");
  cmd_pm->add_option("--method", pm.method, "fixed-point|sdp");
  cmd_pm->add_option("--scenario", pm.scenario_path, "scenario JSON (sdp method)");
  cmd_pm->add_option("--gamma", pm.gamma, "common SINR target (sdp method)");
  cmd_pm->add_option("--mode", pm.mode, "linear|dpc (sdp method)");
  cmd_pm->add_option("--order", pm.order_text, "encoding order, e.g. 1,2");
  cmd_pm->add_option("--out", pm.out, "report JSON path");

  DualityOpts du;
  CLI::App* cmd_du = app.add_subcommand("duality-check", "downlink vs dual uplink totals");
  cmd_du->add_option("--instance", du.instance_path, "coupling instance JSON");
  cmd_du->add_flag("--builtin-counterexample", du.builtin, "use the fixed counter-example");
  cmd_du->add_option("--out", du.out, "report JSON path");

  SdpRegionOpts sr;
  CLI::App* cmd_sr = app.add_subcommand("sdp-region", "rate-region boundary via SDP bisection");
  cmd_sr->add_option("--scenario", sr.scenario_path, "scenario JSON")->required();
  cmd_sr->add_option("--mode", sr.mode, "linear|dpc");
  cmd_sr->add_option("--snr-db", sr.snr_db, "override power budget via SNR");
  cmd_sr->add_option("--mu-grid", sr.mu_grid, "weight grid points");
  cmd_sr->add_option("--eps", sr.eps, "bisection accuracy (bits)");
  cmd_sr->add_option("--out", sr.out, "points CSV path")->required();
  cmd_sr->add_option("--trace-out", sr.trace_out, "bisection probe trace JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  // Full configuration, embedded into every output for reproducibility.
  json config;
  config["command"] = app.get_subcommands().front()->get_name();
  config["argv"] = std::vector<std::string>(argv + 1, argv + argc);

  try {
    if (cmd_gen->parsed()) return run_gen_scenario(gen, config);
    if (cmd_rr->parsed()) return run_rate_region(rr, config);
    if (cmd_pm->parsed()) return run_power_min(pm, config);
    if (cmd_du->parsed()) return run_duality_check(du, config);
    if (cmd_sr->parsed()) return run_sdp_region(sr, config);
  } catch (const relay::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitInvalidInput;
}
