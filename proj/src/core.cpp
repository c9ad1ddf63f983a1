#include "relay/core.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace relay {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t stream_index) {
  // Substream seed = seed xor scrambled stream index, then one warmup mix
  // so that adjacent seeds do not produce correlated streams.
  std::uint64_t idx = stream_index;
  std::uint64_t scrambled = splitmix64(idx);
  state_ = seed ^ scrambled;
  (void)splitmix64(state_);
}

double GaussianStream::next_uniform01() {
  // 53-bit mantissa, offset by half an ulp so the result is in (0, 1).
  const std::uint64_t x = splitmix64(state_);
  return (static_cast<double>(x >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

Complex GaussianStream::next_complex() {
  const double u1 = next_uniform01();
  const double u2 = next_uniform01();
  const double r = std::sqrt(-std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

VectorXcd GaussianStream::next_vector(int n) {
  VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = next_complex();
  return v;
}

VectorXcd GaussianStream::next_unit_vector(int n) {
  VectorXcd v = next_vector(n);
  double nrm = v.norm();
  while (nrm < 1e-100) {
    v = next_vector(n);
    nrm = v.norm();
  }
  return v / nrm;
}

const VectorXcd& Scenario::channel(int pair, int node) const {
  if (pair < 0 || pair >= n_pairs || node < 0 || node > 1)
    throw ValidationError("channel index out of range");
  return channels[static_cast<std::size_t>(pair)][static_cast<std::size_t>(node)];
}

void Scenario::validate() const {
  if (n_pairs < 1) throw ValidationError("n_pairs must be >= 1");
  if (n_antennas < 1) throw ValidationError("n_antennas must be >= 1");
  if (!(sigma2 > 0.0)) throw ValidationError("sigma2 must be > 0");
  if (!(power_budget > 0.0)) throw ValidationError("power_budget must be > 0");
  if (static_cast<int>(channels.size()) != n_pairs)
    throw ValidationError("channel list length does not match n_pairs");
  for (int i = 0; i < n_pairs; ++i) {
    for (int k = 0; k < 2; ++k) {
      const VectorXcd& h = channels[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (h.size() != n_antennas)
        throw ValidationError("channel (" + std::to_string(i) + "," +
                              std::to_string(k) + ") has wrong length");
      if (!h.allFinite())
        throw ValidationError("channel (" + std::to_string(i) + "," +
                              std::to_string(k) + ") has non-finite entries");
    }
  }
}

Scenario generate_channels(int n_pairs, int n_antennas, double sigma2,
                           double power_budget, std::uint64_t seed) {
  if (n_pairs < 1 || n_antennas < 1)
    throw ValidationError("generate_channels: dimensions must be positive");
  if (!(sigma2 > 0.0) || !(power_budget > 0.0))
    throw ValidationError("generate_channels: sigma2 and power_budget must be > 0");

  Scenario s;
  s.n_pairs = n_pairs;
  s.n_antennas = n_antennas;
  s.sigma2 = sigma2;
  s.power_budget = power_budget;
  s.seed = seed;
  s.channels.resize(static_cast<std::size_t>(n_pairs));
  for (int i = 0; i < n_pairs; ++i) {
    for (int k = 0; k < 2; ++k) {
      GaussianStream stream(seed, static_cast<std::uint64_t>(2 * i + k));
      s.channels[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          stream.next_vector(n_antennas);
    }
  }
  return s;
}

Scenario scenario_with_norms(const std::array<std::array<double, 2>, 2>& norms_sq,
                             double sigma2, double power_budget,
                             std::uint64_t seed) {
  Scenario s = generate_channels(2, 2, sigma2, power_budget, seed);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      auto& h = s.channels[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      h *= std::sqrt(norms_sq[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) / h.norm();
    }
  }
  return s;
}

double max_hermitian_deviation(const MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError("matrix must be square and non-empty");
  if (m.rows() > 64) throw ValidationError("matrix dimension exceeds 64");
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (max_hermitian_deviation(m) > kHermitianTol * scale)
    throw ValidationError("matrix is not Hermitian within tolerance");
}

}  // namespace

VectorXd hermitian_eigenvalues(const MatrixXcd& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

EigPair dominant_eigpair(const MatrixXcd& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  const VectorXd& vals = es.eigenvalues();  // ascending
  const int n = static_cast<int>(m.rows());
  const double lambda = vals(n - 1);
  const double tie_tol = 1e-10 * (1.0 + std::abs(lambda));

  // Among eigenvectors of (numerically) maximal eigenvalue, pick the one
  // whose largest-magnitude component sits at the smallest index.
  int best_col = n - 1;
  int best_idx = n;
  for (int c = n - 1; c >= 0 && vals(c) >= lambda - tie_tol; --c) {
    const VectorXcd v = es.eigenvectors().col(c);
    int idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (idx < best_idx) {
      best_idx = idx;
      best_col = c;
    }
  }

  VectorXcd v = es.eigenvectors().col(best_col);
  const Complex pivot = v(best_idx);
  if (std::abs(pivot) > 0.0) v *= std::conj(pivot) / std::abs(pivot);
  v /= v.norm();
  return {lambda, v};
}

// ---------------------------------------------------------------------------
// Scenario serialization

namespace {

using nlohmann::json;

// 17 significant digits round-trip any double exactly.
std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

VectorXcd channel_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw ValidationError("scenario: " + where + " must be a non-empty array");
  VectorXcd h(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t a = 0; a < arr.size(); ++a) {
    const json& e = arr[a];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ValidationError("scenario: " + where + "[" + std::to_string(a) +
                            "] must be a [re, im] pair");
    h(static_cast<Eigen::Index>(a)) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return h;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  s.validate();
  std::ostringstream out;
  out << "{\n";
  out << "  \"n_pairs\": " << s.n_pairs << ",\n";
  out << "  \"n_antennas\": " << s.n_antennas << ",\n";
  out << "  \"sigma2\": " << fmt_double(s.sigma2) << ",\n";
  out << "  \"power_budget\": " << fmt_double(s.power_budget) << ",\n";
  if (s.seed) out << "  \"seed\": " << *s.seed << ",\n";
  out << "  \"channels\": [\n";
  for (int i = 0; i < s.n_pairs; ++i) {
    out << "    [";
    for (int k = 0; k < 2; ++k) {
      const VectorXcd& h =
          s.channels[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      out << "[";
      for (Eigen::Index a = 0; a < h.size(); ++a) {
        out << "[" << fmt_double(h(a).real()) << ", " << fmt_double(h(a).imag())
            << "]";
        if (a + 1 < h.size()) out << ", ";
      }
      out << "]";
      if (k == 0) out << ", ";
    }
    out << "]" << (i + 1 < s.n_pairs ? "," : "") << "\n";
  }
  out << "  ]\n}";
  return out.str();
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario parse error: ") + e.what());
  }
  auto need = [&](const char* field) -> const json& {
    if (!j.contains(field))
      throw ValidationError(std::string("scenario: missing field '") + field + "'");
    return j.at(field);
  };
  Scenario s;
  try {
    s.n_pairs = need("n_pairs").get<int>();
    s.n_antennas = need("n_antennas").get<int>();
    s.sigma2 = need("sigma2").get<double>();
    s.power_budget = need("power_budget").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario: bad scalar field: ") + e.what());
  }
  const json& pairs = need("channels");
  if (!pairs.is_array())
    throw ValidationError("scenario: 'channels' must be an array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const json& nodes = pairs[i];
    if (!nodes.is_array() || nodes.size() != 2)
      throw ValidationError("scenario: channels[" + std::to_string(i) +
                            "] must hold exactly 2 node channels");
    std::array<VectorXcd, 2> pair;
    for (int k = 0; k < 2; ++k)
      pair[static_cast<std::size_t>(k)] = channel_from_json(
          nodes[static_cast<std::size_t>(k)],
          "channels[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    s.channels.push_back(std::move(pair));
  }
  s.validate();
  return s;
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out << scenario_to_json(s) << "\n";
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace relay
