#include "relay/power_duality.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace relay {

namespace {

constexpr double kFixedPointTol = 1e-12;
constexpr double kDivergenceFactor = 1e12;
constexpr int kMaxIterations = 100000;

}  // namespace

void CouplingSystem::validate() const {
  const int dim = n();
  if (dim < 1) throw ValidationError("coupling system must have >= 1 pair");
  if (!(sigma2 > 0.0)) throw ValidationError("coupling: sigma2 must be > 0");
  for (int k = 0; k < 2; ++k) {
    const MatrixXd& v = cross_gain[static_cast<std::size_t>(k)];
    if (v.rows() != dim || v.cols() != dim)
      throw ValidationError("coupling: cross-gain matrix has wrong shape");
    if ((v.array() < 0.0).any() || !v.allFinite())
      throw ValidationError("coupling: cross gains must be nonnegative finite");
    if (v.diagonal().cwiseAbs().maxCoeff() != 0.0)
      throw ValidationError("coupling: cross-gain diagonal must be zero");
    const VectorXd& d = direct_gain[static_cast<std::size_t>(k)];
    const VectorXd& g = sinr_target[static_cast<std::size_t>(k)];
    if (d.size() != dim || g.size() != dim)
      throw ValidationError("coupling: diagonal vectors have wrong length");
    if ((d.array() <= 0.0).any())
      throw ValidationError("coupling: direct gains must be positive");
    if ((g.array() <= 0.0).any())
      throw ValidationError("coupling: SINR targets must be positive");
  }
}

CouplingSystem build_coupling(const Scenario& s, const BeamformerSet& u,
                              const MatrixXd& gamma) {
  s.validate();
  u.validate(s.n_antennas);
  if (u.n_pairs() != s.n_pairs)
    throw ValidationError("build_coupling: one beamformer per pair required");
  if (gamma.rows() != s.n_pairs || gamma.cols() != 2)
    throw ValidationError("build_coupling: gamma must be n_pairs x 2");

  CouplingSystem sys;
  sys.sigma2 = s.sigma2;
  for (int k = 0; k < 2; ++k) {
    MatrixXd v = MatrixXd::Zero(s.n_pairs, s.n_pairs);
    VectorXd d(s.n_pairs);
    for (int i = 0; i < s.n_pairs; ++i) {
      for (int j = 0; j < s.n_pairs; ++j) {
        const double gain =
            std::norm(s.channel(i, k).dot(u.vectors[static_cast<std::size_t>(j)]));
        if (i == j) {
          if (gain <= 0.0)
            throw ValidationError("node (" + std::to_string(i) + "," +
                                  std::to_string(k) +
                                  ") is unservable: zero direct gain");
          d(i) = gain;
        } else {
          v(i, j) = gain;
        }
      }
    }
    sys.cross_gain[static_cast<std::size_t>(k)] = std::move(v);
    sys.direct_gain[static_cast<std::size_t>(k)] = std::move(d);
    sys.sinr_target[static_cast<std::size_t>(k)] = gamma.col(k);
  }
  sys.validate();
  return sys;
}

namespace {

// One application of the interference map for constraint set k:
// (D^(k))^-1 (Gamma^(k) V^(k) p + sigma^2 Gamma^(k) 1).
VectorXd interference_map(const CouplingSystem& sys, int k, const VectorXd& p,
                          bool transpose) {
  const auto& v = sys.cross_gain[static_cast<std::size_t>(k)];
  const auto& d = sys.direct_gain[static_cast<std::size_t>(k)];
  const auto& g = sys.sinr_target[static_cast<std::size_t>(k)];
  const VectorXd coupled = transpose ? VectorXd(v.transpose() * p) : VectorXd(v * p);
  return (g.array() * (coupled.array() + sys.sigma2) / d.array()).matrix();
}

MinPowerResult min_power_impl(const CouplingSystem& sys, bool transpose,
                              const std::vector<int>& ks) {
  sys.validate();
  const int n = sys.n();
  MinPowerResult res;
  VectorXd p = VectorXd::Zero(n);
  const double cap = kDivergenceFactor * sys.sigma2;

  for (int it = 1; it <= kMaxIterations; ++it) {
    VectorXd next = VectorXd::Zero(n);
    for (int k : ks)
      next = next.cwiseMax(interference_map(sys, k, p, transpose));
    res.iterations = it;
    const double delta = (next - p).lpNorm<Eigen::Infinity>();
    p = next;
    if (p.lpNorm<Eigen::Infinity>() > cap) {
      res.converged = false;
      break;
    }
    if (delta <= kFixedPointTol * (1.0 + p.lpNorm<Eigen::Infinity>())) {
      res.converged = true;
      break;
    }
  }

  res.powers = p;
  res.total = p.sum();
  res.slacks = MatrixXd::Constant(n, 2, std::numeric_limits<double>::quiet_NaN());
  if (res.converged) {
    for (int k : ks) {
      const VectorXd req = interference_map(sys, k, p, transpose);
      res.slacks.col(k) = p - req;
    }
  }
  return res;
}

}  // namespace

MinPowerResult min_power_downlink(const CouplingSystem& sys) {
  return min_power_impl(sys, false, {0, 1});
}

MinPowerResult min_power_uplink(const CouplingSystem& sys) {
  return min_power_impl(sys, true, {0, 1});
}

MinPowerResult min_power_downlink_single(const CouplingSystem& sys, int k) {
  if (k < 0 || k > 1) throw ValidationError("constraint set index must be 0 or 1");
  return min_power_impl(sys, false, {k});
}

MinPowerResult min_power_uplink_single(const CouplingSystem& sys, int k) {
  if (k < 0 || k > 1) throw ValidationError("constraint set index must be 0 or 1");
  return min_power_impl(sys, true, {k});
}

DualityReport duality_check(const CouplingSystem& sys) {
  const MinPowerResult dl = min_power_downlink(sys);
  const MinPowerResult ul = min_power_uplink(sys);
  if (!dl.converged || !ul.converged)
    throw std::runtime_error("duality_check: infeasible SINR targets");
  DualityReport rep;
  rep.dl_total = dl.total;
  rep.ul_total = ul.total;
  rep.gap = ul.total - dl.total;
  rep.dl_iterations = dl.iterations;
  rep.ul_iterations = ul.iterations;
  for (int k = 0; k < 2; ++k) {
    rep.per_k_dl[static_cast<std::size_t>(k)] =
        min_power_downlink_single(sys, k).total;
    rep.per_k_ul[static_cast<std::size_t>(k)] =
        min_power_uplink_single(sys, k).total;
  }
  return rep;
}

CouplingSystem builtin_counterexample() {
  // Two pairs, D = I, Gamma^(1) = I, V^(1) symmetric, Gamma^(2) != I.
  CouplingSystem sys;
  sys.sigma2 = 1.0;
  sys.cross_gain[0] = (MatrixXd(2, 2) << 0.0, 0.5, 0.5, 0.0).finished();
  sys.cross_gain[1] = (MatrixXd(2, 2) << 0.0, 0.2, 0.6, 0.0).finished();
  sys.direct_gain[0] = VectorXd::Ones(2);
  sys.direct_gain[1] = VectorXd::Ones(2);
  sys.sinr_target[0] = VectorXd::Ones(2);
  sys.sinr_target[1] = (VectorXd(2) << 2.0, 1.0).finished();
  return sys;
}

namespace {

using nlohmann::json;

json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

MatrixXd matrix_from_json(const json& rows, const std::string& field) {
  if (!rows.is_array() || rows.empty())
    throw ValidationError("coupling: '" + field + "' must be a matrix");
  const std::size_t n = rows.size();
  MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ValidationError("coupling: '" + field + "' must be square");
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j].get<double>();
  }
  return m;
}

VectorXd vector_from_json(const json& arr, const std::string& field) {
  if (!arr.is_array() || arr.empty())
    throw ValidationError("coupling: '" + field + "' must be a vector");
  VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

}  // namespace

std::string coupling_to_json(const CouplingSystem& sys) {
  sys.validate();
  json j;
  j["V1"] = matrix_to_json(sys.cross_gain[0]);
  j["V2"] = matrix_to_json(sys.cross_gain[1]);
  j["D1"] = std::vector<double>(sys.direct_gain[0].begin(), sys.direct_gain[0].end());
  j["D2"] = std::vector<double>(sys.direct_gain[1].begin(), sys.direct_gain[1].end());
  j["Gamma1"] = std::vector<double>(sys.sinr_target[0].begin(), sys.sinr_target[0].end());
  j["Gamma2"] = std::vector<double>(sys.sinr_target[1].begin(), sys.sinr_target[1].end());
  j["sigma2"] = sys.sigma2;
  return j.dump(2);
}

CouplingSystem coupling_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("coupling parse error: ") + e.what());
  }
  auto need = [&](const char* field) -> const json& {
    if (!j.contains(field))
      throw ValidationError(std::string("coupling: missing field '") + field + "'");
    return j.at(field);
  };
  CouplingSystem sys;
  sys.cross_gain[0] = matrix_from_json(need("V1"), "V1");
  sys.cross_gain[1] = matrix_from_json(need("V2"), "V2");
  sys.direct_gain[0] = vector_from_json(need("D1"), "D1");
  sys.direct_gain[1] = vector_from_json(need("D2"), "D2");
  sys.sinr_target[0] = vector_from_json(need("Gamma1"), "Gamma1");
  sys.sinr_target[1] = vector_from_json(need("Gamma2"), "Gamma2");
  sys.sigma2 = need("sigma2").get<double>();
  sys.validate();
  return sys;
}

CouplingSystem load_coupling(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return coupling_from_json(buf.str());
}

}  // namespace relay
