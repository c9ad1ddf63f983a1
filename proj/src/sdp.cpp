#include "relay/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>

namespace relay {

namespace {

constexpr double kSolverTol = 1e-9;
// Accepted when the iteration stalls just short of kSolverTol; still well
// inside every downstream tolerance (feasibility decisions use 1e-7).
constexpr double kSolverFallbackTol = 5e-8;
constexpr double kFeasibilityEps = 1e-7;
constexpr int kMaxIpmIterations = 200;

// ---------------------------------------------------------------------------
// Real symmetric embedding of complex Hermitian matrices:
// Q -> [[Re Q, -Im Q], [Im Q, Re Q]], with <embed(B), embed(Q)> = 2 <B, Q>.

MatrixXd embed_hermitian(const MatrixXcd& b) {
  const Eigen::Index n = b.rows();
  MatrixXd e(2 * n, 2 * n);
  e.topLeftCorner(n, n) = b.real();
  e.bottomRightCorner(n, n) = b.real();
  e.topRightCorner(n, n) = -b.imag();
  e.bottomLeftCorner(n, n) = b.imag();
  return 0.5 * (e + e.transpose());
}

MatrixXcd unembed(const MatrixXd& x) {
  const Eigen::Index n = x.rows() / 2;
  const MatrixXd re =
      0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  const MatrixXd im =
      0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  MatrixXcd q(n, n);
  q.real() = 0.5 * (re + re.transpose());
  q.imag() = 0.5 * (im - im.transpose());
  return q;
}

// ---------------------------------------------------------------------------
// Standard-form SDP over a block-diagonal cone:
//   min <C, X>  s.t.  <A_l, X> = b_l,  X >= 0.

struct BlockTerms {
  std::vector<std::pair<int, MatrixXd>> terms;
};

struct StdSdp {
  std::vector<int> dims;
  std::vector<MatrixXd> c;
  std::vector<BlockTerms> a;
  VectorXd b;
};

using BlockMat = std::vector<MatrixXd>;

double block_dot(const BlockMat& x, const BlockMat& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += x[i].cwiseProduct(y[i]).sum();
  return s;
}

double constraint_dot(const BlockTerms& a, const BlockMat& x) {
  double s = 0.0;
  for (const auto& [bi, mat] : a.terms)
    s += mat.cwiseProduct(x[static_cast<std::size_t>(bi)]).sum();
  return s;
}

BlockMat identity_blocks(const std::vector<int>& dims, double scale) {
  BlockMat out;
  out.reserve(dims.size());
  for (int d : dims) out.push_back(scale * MatrixXd::Identity(d, d));
  return out;
}

// Largest alpha in (0, 1] keeping S + alpha dS positive semidefinite.
double max_step(const BlockMat& s, const BlockMat& ds) {
  double alpha = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].rows() == 1) {
      const double v = s[i](0, 0);
      const double d = ds[i](0, 0);
      if (d < 0.0) alpha = std::min(alpha, -v / d);
      continue;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> ges(
        ds[i], s[i], Eigen::EigenvaluesOnly);
    if (ges.info() != Eigen::Success) return 0.0;
    const double lmin = ges.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct IpmResult {
  BlockMat x;
  BlockMat z;
  VectorXd y;
  bool converged = false;
  int iterations = 0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
};

// Infeasible-start Mehrotra predictor-corrector with the HKM direction.
IpmResult solve_standard(const StdSdp& prob) {
  const std::size_t nb = prob.dims.size();
  const int m = static_cast<int>(prob.b.size());
  double ntot = 0.0;
  for (int d : prob.dims) ntot += d;

  double a_scale = 1.0;
  for (const BlockTerms& a : prob.a) {
    double f = 0.0;
    for (const auto& [bi, mat] : a.terms) f += mat.squaredNorm();
    a_scale = std::max(a_scale, std::sqrt(f));
  }
  double c_scale = 1.0;
  for (const MatrixXd& cb : prob.c) c_scale = std::max(c_scale, cb.norm());
  const double b_scale = prob.b.size() ? prob.b.cwiseAbs().maxCoeff() : 0.0;

  IpmResult res;
  res.x = identity_blocks(
      prob.dims, std::max({10.0, std::sqrt(ntot), b_scale / (1.0 + a_scale) * ntot}));
  res.z = identity_blocks(prob.dims,
                          std::max({10.0, std::sqrt(ntot), a_scale, c_scale}));
  res.y = VectorXd::Zero(m);

  BlockMat zinv(nb), rd(nb), dxa(nb), dza(nb), dx(nb), dz(nb);
  MatrixXd schur(m, m);
  VectorXd rp(m), rhs(m), zi(m), ax(m), xr(m), dy(m);

  // Best iterate so far, used when the final push below kSolverTol stalls.
  IpmResult best;
  double best_score = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= kMaxIpmIterations; ++iter) {
    res.iterations = iter;

    bool pd_ok = true;
    for (std::size_t i = 0; i < nb; ++i) {
      Eigen::LLT<MatrixXd> llt(res.z[i]);
      if (llt.info() != Eigen::Success) {
        pd_ok = false;
        break;
      }
      zinv[i] = llt.solve(MatrixXd::Identity(prob.dims[i], prob.dims[i]));
      zinv[i] = 0.5 * (zinv[i] + zinv[i].transpose());
    }
    if (!pd_ok) break;

    const double mu = block_dot(res.x, res.z) / ntot;

    for (int l = 0; l < m; ++l) rp(l) = prob.b(l) - constraint_dot(prob.a[l], res.x);
    for (std::size_t i = 0; i < nb; ++i) {
      rd[i] = prob.c[i] - res.z[i];
      for (int l = 0; l < m; ++l)
        for (const auto& [bi, mat] : prob.a[l].terms)
          if (static_cast<std::size_t>(bi) == i) rd[i] -= res.y(l) * mat;
    }

    res.primal_obj = block_dot(prob.c, res.x);
    res.dual_obj = prob.b.dot(res.y);
    res.gap = block_dot(res.x, res.z) /
              (1.0 + std::abs(res.primal_obj) + std::abs(res.dual_obj));
    res.primal_res = rp.norm() / (1.0 + prob.b.norm());
    double dn = 0.0;
    for (std::size_t i = 0; i < nb; ++i) dn += rd[i].squaredNorm();
    res.dual_res = std::sqrt(dn) / (1.0 + c_scale);
    const double score =
        std::max({res.gap, res.primal_res, res.dual_res});
    if (std::isfinite(score) && score < best_score) {
      best = res;
      best_score = score;
    }
    if (res.gap <= kSolverTol && res.primal_res <= kSolverTol &&
        res.dual_res <= kSolverTol) {
      res.converged = true;
      return res;
    }

    // Schur complement M(l,k) = tr(A_l X A_k Z^-1) plus affine rhs pieces.
    std::vector<BlockMat> t_mats(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      BlockMat& tk = t_mats[static_cast<std::size_t>(k)];
      tk.assign(nb, MatrixXd());
      for (const auto& [bi, mat] : prob.a[static_cast<std::size_t>(k)].terms) {
        const auto b = static_cast<std::size_t>(bi);
        tk[b] = res.x[b] * mat * zinv[b];
      }
    }
    for (int l = 0; l < m; ++l) {
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (const auto& [bi, mat] : prob.a[static_cast<std::size_t>(l)].terms) {
          const auto b = static_cast<std::size_t>(bi);
          const MatrixXd& tk = t_mats[static_cast<std::size_t>(k)][b];
          if (tk.size() != 0) s += mat.cwiseProduct(tk.transpose()).sum();
        }
        schur(l, k) = s;
      }
      double vzi = 0.0, vax = 0.0, vxr = 0.0;
      for (const auto& [bi, mat] : prob.a[static_cast<std::size_t>(l)].terms) {
        const auto b = static_cast<std::size_t>(bi);
        vzi += mat.cwiseProduct(zinv[b]).sum();
        vax += mat.cwiseProduct(res.x[b]).sum();
        vxr += mat.cwiseProduct((res.x[b] * rd[b] * zinv[b]).transpose()).sum();
      }
      zi(l) = vzi;
      ax(l) = vax;
      xr(l) = vxr;
    }

    Eigen::PartialPivLU<MatrixXd> lu(schur);

    // Predictor (affine scaling direction).
    rhs = rp + ax + xr;
    dy = lu.solve(rhs);
    for (std::size_t i = 0; i < nb; ++i) {
      dza[i] = rd[i];
      for (int l = 0; l < m; ++l)
        for (const auto& [bi, mat] : prob.a[static_cast<std::size_t>(l)].terms)
          if (static_cast<std::size_t>(bi) == i) dza[i] -= dy(l) * mat;
      MatrixXd d = -res.x[i] - res.x[i] * dza[i] * zinv[i];
      dxa[i] = 0.5 * (d + d.transpose());
    }
    const double ap_aff = max_step(res.x, dxa);
    const double ad_aff = max_step(res.z, dza);

    double mu_aff = 0.0;
    for (std::size_t i = 0; i < nb; ++i)
      mu_aff += (res.x[i] + ap_aff * dxa[i])
                    .cwiseProduct(res.z[i] + ad_aff * dza[i])
                    .sum();
    mu_aff = std::max(mu_aff / ntot, 0.0);
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::clamp(sigma, 1e-8, 1.0);

    // Corrector.
    for (int l = 0; l < m; ++l) {
      double corr = 0.0;
      for (const auto& [bi, mat] : prob.a[static_cast<std::size_t>(l)].terms) {
        const auto b = static_cast<std::size_t>(bi);
        corr += mat.cwiseProduct((dxa[b] * dza[b] * zinv[b]).transpose()).sum();
      }
      rhs(l) = rp(l) + ax(l) + xr(l) + corr - sigma * mu * zi(l);
    }
    dy = lu.solve(rhs);
    for (std::size_t i = 0; i < nb; ++i) {
      dz[i] = rd[i];
      for (int l = 0; l < m; ++l)
        for (const auto& [bi, mat] : prob.a[static_cast<std::size_t>(l)].terms)
          if (static_cast<std::size_t>(bi) == i) dz[i] -= dy(l) * mat;
      MatrixXd d = sigma * mu * zinv[i] - res.x[i] -
                   (res.x[i] * dz[i] + dxa[i] * dza[i]) * zinv[i];
      dx[i] = 0.5 * (d + d.transpose());
    }

    const double tau = 0.98;
    const double ap = std::min(1.0, tau * max_step(res.x, dx));
    const double ad = std::min(1.0, tau * max_step(res.z, dz));
    bool finite = dy.allFinite();
    for (std::size_t i = 0; i < nb && finite; ++i)
      finite = dx[i].allFinite() && dz[i].allFinite();
    if (!finite) break;
    for (std::size_t i = 0; i < nb; ++i) {
      res.x[i] += ap * dx[i];
      res.z[i] += ad * dz[i];
    }
    res.y += ad * dy;

    if (std::getenv("RELAY_SDP_DEBUG"))
      std::fprintf(stderr,
                   "it=%d mu=%.3e rp=%.3e rd=%.3e gap=%.3e ap=%.3f ad=%.3f "
                   "sigma=%.3e pobj=%.6e dobj=%.6e\n",
                   iter, mu, res.primal_res, res.dual_res, res.gap, ap, ad,
                   sigma, res.primal_obj, res.dual_obj);

    if (!std::isfinite(mu) || mu > 1e30) break;
  }
  if (best_score <= kSolverFallbackTol) {
    best.converged = true;
    best.iterations = res.iterations;
    return best;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Inequality form over embedded complex blocks, slacks appended.

struct IneqTerm {
  int block = 0;
  MatrixXd coeff;
};

struct IneqProblem {
  std::vector<int> dims;        // variable blocks (already real/embedded)
  std::vector<MatrixXd> c;      // objective per variable block
  struct Row {
    std::vector<IneqTerm> terms;
    double rhs = 0.0;
  };
  std::vector<Row> rows;        // sum_j <coeff, X_j> >= rhs
};

StdSdp to_standard(const IneqProblem& p) {
  StdSdp std_form;
  std_form.dims = p.dims;
  std_form.c = p.c;
  const int nv = static_cast<int>(p.dims.size());
  const int m = static_cast<int>(p.rows.size());
  for (int l = 0; l < m; ++l) {
    std_form.dims.push_back(1);
    std_form.c.push_back(MatrixXd::Zero(1, 1));
  }
  std_form.b.resize(m);
  for (int l = 0; l < m; ++l) {
    BlockTerms a;
    for (const IneqTerm& t : p.rows[static_cast<std::size_t>(l)].terms)
      a.terms.emplace_back(t.block, t.coeff);
    a.terms.emplace_back(nv + l, -MatrixXd::Ones(1, 1));
    std_form.a.push_back(std::move(a));
    std_form.b(l) = p.rows[static_cast<std::size_t>(l)].rhs;
  }
  return std_form;
}

// Embedded inequality rows of the SINR constraints (factor 2 from the
// embedding applied to both sides).
IneqProblem embed_problem(const SdpProblem& problem) {
  IneqProblem p;
  const int ed = 2 * problem.block_dim;
  p.dims.assign(static_cast<std::size_t>(problem.n_blocks), ed);
  for (int i = 0; i < problem.n_blocks; ++i)
    p.c.push_back(0.5 * MatrixXd::Identity(ed, ed));
  for (const SdpConstraint& c : problem.constraints) {
    IneqProblem::Row row;
    for (const auto& [bi, mat] : c.terms)
      row.terms.push_back({bi, embed_hermitian(mat)});
    row.rhs = 2.0 * c.rhs;
    p.rows.push_back(std::move(row));
  }
  return p;
}

// Phase-I: minimize the uniform slack deficit t subject to the scaled
// constraints and a total-power cap. Strictly feasible on both sides, so
// its optimum decides feasibility of the original constraint system.
struct PhaseIResult {
  double deficit = 0.0;
  bool solved = false;
};

PhaseIResult solve_phase1(const SdpProblem& problem, double power_cap) {
  IneqProblem p = embed_problem(problem);
  const int t_block = static_cast<int>(p.dims.size());
  p.dims.push_back(1);
  for (MatrixXd& cb : p.c) cb.setZero();
  p.c.push_back(MatrixXd::Ones(1, 1));  // objective: t

  for (IneqProblem::Row& row : p.rows) {
    const double s = 1.0 + std::abs(row.rhs);
    row.terms.push_back({t_block, s * MatrixXd::Ones(1, 1)});
  }
  // -sum trace(Q) >= -cap, in embedded scale.
  IneqProblem::Row cap_row;
  for (int i = 0; i < problem.n_blocks; ++i) {
    const int ed = 2 * problem.block_dim;
    cap_row.terms.push_back({i, -0.5 * MatrixXd::Identity(ed, ed)});
  }
  cap_row.rhs = -power_cap;
  p.rows.push_back(std::move(cap_row));

  const IpmResult r = solve_standard(to_standard(p));
  PhaseIResult out;
  out.solved = r.converged;
  if (r.converged)
    out.deficit = r.x[static_cast<std::size_t>(t_block)](0, 0);
  return out;
}

double default_power_cap(const SdpProblem& problem) {
  // Generous upper bound on any sensible optimum: per-constraint power
  // needed against noise alone, amplified for interference coupling.
  double need = 1.0;
  for (const SdpConstraint& c : problem.constraints) {
    double own = 0.0;
    for (const auto& [bi, mat] : c.terms)
      own = std::max(own, mat.real().trace());
    if (own > 0.0) need += c.rhs / own;
  }
  return 1e8 * need;
}

}  // namespace

SdpProblem build_sdp(const Scenario& s, const MatrixXd& gamma,
                     PrecodingMode mode, const EncodingOrder* order) {
  s.validate();
  if (gamma.rows() != s.n_pairs || gamma.cols() != 2)
    throw ValidationError("build_sdp: gamma must be n_pairs x 2");
  if ((gamma.array() < 0.0).any())
    throw ValidationError("build_sdp: SINR targets must be nonnegative");
  if (mode == PrecodingMode::kDpc && order == nullptr)
    throw ValidationError("build_sdp: DPC mode requires an encoding order");
  if (order) order->validate(s.n_pairs);

  SdpProblem problem;
  problem.n_blocks = s.n_pairs;
  problem.block_dim = s.n_antennas;
  for (int i = 0; i < s.n_pairs; ++i) {
    for (int k = 0; k < 2; ++k) {
      const double g = gamma(i, k);
      if (g == 0.0) continue;
      const VectorXcd& h = s.channel(i, k);
      const MatrixXcd outer = h * h.adjoint();
      SdpConstraint c;
      c.label = "(" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")";
      c.rhs = g * s.sigma2;
      c.terms.emplace_back(i, outer);
      for (int j = 0; j < s.n_pairs; ++j) {
        if (j == i) continue;
        if (mode == PrecodingMode::kDpc &&
            order->position_of(j) < order->position_of(i))
          continue;
        c.terms.emplace_back(j, -g * outer);
      }
      problem.constraints.push_back(std::move(c));
    }
  }
  return problem;
}

PsdSolution sdp_solve(const SdpProblem& problem) {
  PsdSolution sol;
  if (problem.n_blocks < 1 || problem.n_blocks > 8 || problem.block_dim < 1 ||
      problem.block_dim > 8)
    throw ValidationError("sdp_solve: at most 8 pairs and 8 antennas");

  const PhaseIResult feas = solve_phase1(problem, default_power_cap(problem));
  if (feas.solved && feas.deficit > kFeasibilityEps) {
    sol.status = SdpStatus::kInfeasible;
    sol.infeasibility_certificate = feas.deficit;
    return sol;
  }
  if (!feas.solved) {
    sol.status = SdpStatus::kNumericalFailure;
    return sol;
  }
  sol.infeasibility_certificate = feas.deficit;

  const IneqProblem p = embed_problem(problem);
  const IpmResult r = solve_standard(to_standard(p));
  sol.iterations = r.iterations;
  if (!r.converged) {
    sol.status = SdpStatus::kNumericalFailure;
    return sol;
  }
  sol.status = SdpStatus::kOptimal;
  sol.objective = r.primal_obj;
  sol.primal_residual = r.primal_res;
  sol.dual_residual = r.dual_res;
  sol.complementarity = r.gap;
  for (int i = 0; i < problem.n_blocks; ++i)
    sol.q.push_back(unembed(r.x[static_cast<std::size_t>(i)]));
  return sol;
}

bool sdp_feasible_within_budget(const SdpProblem& problem, double budget,
                                double* deficit) {
  if (!(budget > 0.0))
    throw ValidationError("feasibility probe needs a positive budget");
  const PhaseIResult feas = solve_phase1(problem, budget);
  if (!feas.solved)
    throw std::runtime_error("sdp feasibility probe did not converge");
  if (deficit) *deficit = feas.deficit;
  return feas.deficit <= kFeasibilityEps;
}

Rank1Result rank1_extract(const PsdSolution& sol, const Scenario& s,
                          const MatrixXd& gamma, PrecodingMode mode,
                          const EncodingOrder* order) {
  if (sol.status != SdpStatus::kOptimal)
    throw ValidationError("rank1_extract requires an optimal solution");
  if (mode == PrecodingMode::kDpc && order == nullptr)
    throw ValidationError("rank1_extract: DPC mode requires an order");

  Rank1Result out;
  const int n = static_cast<int>(sol.q.size());
  out.raw_powers.resize(n);
  for (int i = 0; i < n; ++i) {
    MatrixXcd q = 0.5 * (sol.q[static_cast<std::size_t>(i)] +
                         sol.q[static_cast<std::size_t>(i)].adjoint());
    const EigPair top = dominant_eigpair(q);
    out.beams.vectors.push_back(top.vector);
    out.beams.weights.push_back(0.0);
    out.raw_powers(i) = q.real().trace();
  }
  out.raw_total = out.raw_powers.sum();

  CouplingSystem sys = build_coupling(s, out.beams, gamma);
  if (mode == PrecodingMode::kDpc) {
    // Later-encoded pairs are pre-compensated: drop their interference.
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (j != i && order->position_of(j) < order->position_of(i))
            sys.cross_gain[static_cast<std::size_t>(k)](i, j) = 0.0;
  }
  const MinPowerResult repair = min_power_downlink(sys);
  out.repair_feasible = repair.converged;
  out.repaired_powers = repair.powers;
  out.repaired_total = repair.total;
  return out;
}

namespace {

bool probe_feasible(const Scenario& s, const RateWeights& w, double rate,
                    PrecodingMode mode,
                    const std::vector<EncodingOrder>& orders) {
  MatrixXd gamma(s.n_pairs, 2);
  for (int i = 0; i < s.n_pairs; ++i) {
    const double g = std::exp2(w.mu(i) * rate) - 1.0;
    gamma(i, 0) = g;
    gamma(i, 1) = g;
  }
  if (mode == PrecodingMode::kLinear) {
    return sdp_feasible_within_budget(build_sdp(s, gamma, mode),
                                      s.power_budget);
  }
  for (const EncodingOrder& o : orders) {
    if (sdp_feasible_within_budget(build_sdp(s, gamma, mode, &o),
                                   s.power_budget))
      return true;
  }
  return false;
}

}  // namespace

BisectResult bisect_rate_region(const Scenario& s, const RateWeights& weights,
                                PrecodingMode mode, const EncodingOrder* order,
                                double epsilon) {
  s.validate();
  weights.validate();
  if (!(epsilon > 0.0)) throw ValidationError("bisection accuracy must be > 0");
  if (weights.mu.size() != s.n_pairs)
    throw ValidationError("bisection: one weight per pair required");

  std::vector<EncodingOrder> orders;
  if (mode == PrecodingMode::kDpc) {
    if (order) {
      order->validate(s.n_pairs);
      orders = {*order};
    } else {
      if (s.n_pairs > 4)
        throw ValidationError("DPC order enumeration limited to 4 pairs");
      orders = all_orders(s.n_pairs);
    }
  }

  // Upper bisection bound: twice the single-pair capacity along the weight
  // direction; mu_i * r_hi exceeds what pair i could get even alone.
  double r_hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.n_pairs; ++i) {
    if (weights.mu(i) <= 0.0) continue;
    const double snr_best =
        std::max(s.channel(i, 0).squaredNorm(), s.channel(i, 1).squaredNorm()) *
        s.power_budget / s.sigma2;
    r_hi = std::min(r_hi, 2.0 * std::log2(1.0 + snr_best) / weights.mu(i));
  }
  if (!std::isfinite(r_hi))
    throw ValidationError("bisection: all rate weights are zero");

  BisectResult res;
  res.r_hi = r_hi;
  double lo = 0.0;  // rate 0 has vacuous targets and is always feasible
  double hi = r_hi;

  // Degenerate geometry check: nothing achievable even at a sliver of rate.
  if (!probe_feasible(s, weights, std::min(epsilon, hi) * 1e-3, mode, orders)) {
    res.degenerate = true;
    res.rate_scale = 0.0;
  } else {
    while (hi - lo > epsilon) {
      const double mid = 0.5 * (lo + hi);
      const bool ok = probe_feasible(s, weights, mid, mode, orders);
      res.probes.emplace_back(mid, ok);
      ++res.iterations;
      (ok ? lo : hi) = mid;
    }
    res.rate_scale = lo;
  }

  res.point.rates.resize(s.n_pairs);
  for (int i = 0; i < s.n_pairs; ++i)
    res.point.rates(i) = 2.0 * weights.mu(i) * res.rate_scale;  // both nodes at target
  res.point.strategy =
      mode == PrecodingMode::kDpc ? Strategy::kDpc : Strategy::kLinear;
  if (mode == PrecodingMode::kDpc && order) res.point.order = order->order;
  res.point.powers = VectorXd::Zero(s.n_pairs);
  res.point.t_params = VectorXd::Zero(s.n_pairs);
  return res;
}

}  // namespace relay
