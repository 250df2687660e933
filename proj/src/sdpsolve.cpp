#include "mub/sdpsolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mub::sdpsolve {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void SDPInstance::validate() const {
  if (c.size() != n) throw std::invalid_argument("objective length does not match n");
  for (std::size_t k = 0; k < equalities.size(); ++k) {
    for (const auto& [var, v] : equalities[k].coeffs) {
      if (var >= n) {
        throw std::invalid_argument("equality row " + std::to_string(k) +
                                    " references variable out of range");
      }
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite equality coefficient");
    }
    if (!std::isfinite(equalities[k].rhs)) throw std::invalid_argument("non-finite rhs");
  }
  for (double v : c) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite objective coefficient");
  }
  if (blocks.empty()) throw std::invalid_argument("instance has no PSD block");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& b = blocks[k];
    if (b.dim == 0) throw std::invalid_argument("block " + std::to_string(k) + " is empty");
    for (const auto& e : b.entries) {
      if (e.matrix > n) throw std::invalid_argument("block entry references unknown matrix");
      if (e.row > e.col || e.col >= b.dim) {
        throw std::invalid_argument("block entry must satisfy row <= col < dim");
      }
      if (!std::isfinite(e.value)) throw std::invalid_argument("non-finite block entry");
    }
  }
}

MatrixXd SDPInstance::block_value(std::size_t k, const VectorXd& y) const {
  const auto& b = blocks.at(k);
  MatrixXd m = MatrixXd::Zero(b.dim, b.dim);
  for (const auto& e : b.entries) {
    const double v = e.matrix == 0 ? e.value : e.value * y[e.matrix - 1];
    m(e.row, e.col) += v;
    if (e.row != e.col) m(e.col, e.row) += v;
  }
  return m;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::PrimalInfeasibleCertificate: return "primal_infeasible_certificate";
    case Status::MaxIterations: return "max_iterations";
    case Status::NumericalTrouble: return "numerical_trouble";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kAugmentedLimit = 4000;

struct Nz {
  std::size_t a;
  std::size_t b;
  double v;
};

// Per-block data with each symmetric coefficient matrix expanded into both
// triangles, grouped by variable.
struct Block {
  std::size_t dim = 0;
  MatrixXd m0;
  std::vector<std::vector<Nz>> vars;  // vars[i] = entries of M_i
  std::vector<std::size_t> active;    // variables with any entry
};

std::vector<Block> expand(const SDPInstance& inst) {
  std::vector<Block> out;
  for (const auto& src : inst.blocks) {
    Block b;
    b.dim = src.dim;
    b.m0 = MatrixXd::Zero(src.dim, src.dim);
    b.vars.resize(inst.n);
    for (const auto& e : src.entries) {
      if (e.matrix == 0) {
        b.m0(e.row, e.col) += e.value;
        if (e.row != e.col) b.m0(e.col, e.row) += e.value;
        continue;
      }
      auto& list = b.vars[e.matrix - 1];
      list.push_back({e.row, e.col, e.value});
      if (e.row != e.col) list.push_back({e.col, e.row, e.value});
    }
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (!b.vars[i].empty()) b.active.push_back(i);
    }
    out.push_back(std::move(b));
  }
  return out;
}

// sum_i y_i M_i (no constant)
MatrixXd apply(const Block& b, const VectorXd& y) {
  MatrixXd m = MatrixXd::Zero(b.dim, b.dim);
  for (std::size_t i : b.active) {
    for (const auto& e : b.vars[i]) m(e.a, e.b) += e.v * y[i];
  }
  return m;
}

// <M_i, Y>_i accumulated into out
void adjoint(const Block& b, const MatrixXd& y, VectorXd& out) {
  for (std::size_t i : b.active) {
    double s = 0.0;
    for (const auto& e : b.vars[i]) s += e.v * y(e.a, e.b);
    out[i] += s;
  }
}

// H_ij += tr(M_i X M_j Z)
void add_schur(const Block& b, const MatrixXd& x, const MatrixXd& z, MatrixXd& h) {
  for (std::size_t ii = 0; ii < b.active.size(); ++ii) {
    const std::size_t i = b.active[ii];
    const auto& ei = b.vars[i];
    for (std::size_t jj = ii; jj < b.active.size(); ++jj) {
      const std::size_t j = b.active[jj];
      double s = 0.0;
      for (const auto& q : b.vars[j]) {
        double t = 0.0;
        for (const auto& p : ei) t += p.v * x(p.b, q.a) * z(q.b, p.a);
        s += q.v * t;
      }
      h(i, j) += s;
      if (i != j) h(j, i) += s;
    }
  }
}

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha in (0, inf] with S + alpha dS >= 0, for S positive definite.
double max_step(const MatrixXd& s, const MatrixXd& ds) {
  Eigen::LLT<MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd l_inv_ds = llt.matrixL().solve(ds);
  const MatrixXd w = llt.matrixL().solve(l_inv_ds.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double min_eigenvalue(const MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct Equalities {
  MatrixXd a;                        // independent, row-normalised
  VectorXd b;
  std::vector<std::size_t> kept;     // original row indices
  std::vector<double> scale;         // original row = kept row * scale
  std::vector<std::size_t> removed;
  bool inconsistent = false;
  double inconsistency = 0.0;
};

MatrixXd dense_rows(const SDPInstance& inst) {
  MatrixXd a = MatrixXd::Zero(inst.equalities.size(), inst.n);
  for (std::size_t k = 0; k < inst.equalities.size(); ++k) {
    for (const auto& [var, v] : inst.equalities[k].coeffs) a(k, var) += v;
  }
  return a;
}

VectorXd rhs_vector(const SDPInstance& inst) {
  VectorXd b(inst.equalities.size());
  for (std::size_t k = 0; k < inst.equalities.size(); ++k) b[k] = inst.equalities[k].rhs;
  return b;
}

Equalities preprocess(const SDPInstance& inst) {
  Equalities eq;
  const std::size_t m = inst.equalities.size();
  if (m == 0) {
    eq.a = MatrixXd::Zero(0, inst.n);
    eq.b = VectorXd::Zero(0);
    return eq;
  }
  MatrixXd a = dense_rows(inst);
  VectorXd b = rhs_vector(inst);
  std::vector<double> norms(m);
  for (std::size_t k = 0; k < m; ++k) {
    norms[k] = a.row(k).norm();
    if (norms[k] > 0) {
      a.row(k) /= norms[k];
      b[k] /= norms[k];
    }
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(a.transpose());
  qr.setThreshold(1e-10);
  const auto rank = static_cast<std::size_t>(qr.rank());
  const auto& perm = qr.colsPermutation().indices();
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < rank; ++t) kept.push_back(static_cast<std::size_t>(perm[t]));
  std::sort(kept.begin(), kept.end());
  std::vector<bool> is_kept(m, false);
  for (auto k : kept) is_kept[k] = true;
  for (std::size_t k = 0; k < m; ++k) {
    if (!is_kept[k]) eq.removed.push_back(k);
  }
  eq.a.resize(rank, inst.n);
  eq.b.resize(rank);
  for (std::size_t t = 0; t < rank; ++t) {
    eq.a.row(t) = a.row(kept[t]);
    eq.b[t] = b[kept[t]];
    eq.scale.push_back(norms[kept[t]]);
  }
  eq.kept = kept;
  // Consistency: the minimum-norm solution of the kept rows must satisfy all.
  if (rank > 0 && !eq.removed.empty()) {
    const MatrixXd gram = eq.a * eq.a.transpose();
    const VectorXd y = eq.a.transpose() * gram.ldlt().solve(eq.b);
    const VectorXd res = a * y - b;
    eq.inconsistency = res.lpNorm<Eigen::Infinity>();
    eq.inconsistent = eq.inconsistency > 1e-8 * (1.0 + b.lpNorm<Eigen::Infinity>());
  } else if (rank == 0) {
    eq.inconsistency = b.lpNorm<Eigen::Infinity>();
    eq.inconsistent = eq.inconsistency > 1e-8;
  }
  return eq;
}

double frob(const std::vector<MatrixXd>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s += m.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

SDPSolution solve(const SDPInstance& inst, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  inst.validate();
  SDPSolution sol;
  auto finish = [&](Status st, std::string msg) {
    sol.status = st;
    sol.message = std::move(msg);
    sol.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
  };

  const std::size_t n = inst.n;
  const auto blocks = expand(inst);
  const auto eq = preprocess(inst);
  sol.removed_rows = eq.removed;
  sol.lambda = VectorXd::Zero(inst.equalities.size());
  sol.y = VectorXd::Zero(n);
  if (eq.inconsistent) {
    return finish(Status::PrimalInfeasibleCertificate,
                  "equality system is inconsistent (residual " +
                      std::to_string(eq.inconsistency) + ")");
  }
  const std::size_t m = static_cast<std::size_t>(eq.a.rows());
  // The objective is normalised so that scaling c leaves the iterates
  // unchanged; X and lambda are scaled back on output.
  const VectorXd c_in = Eigen::Map<const VectorXd>(inst.c.data(), static_cast<Eigen::Index>(n));
  const double c_scale = c_in.norm() > 0 ? c_in.norm() : 1.0;
  const VectorXd c = c_in / c_scale;

  double m0_norm = 0.0;
  std::size_t total_dim = 0;
  for (const auto& b : blocks) {
    m0_norm += b.m0.squaredNorm();
    total_dim += b.dim;
  }
  m0_norm = std::sqrt(m0_norm);
  const double c_norm = c.norm();
  const double b_norm = eq.b.norm();

  // Starting point scaled to the data.
  double max_ratio = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mi = 0.0;
    for (const auto& b : blocks) {
      for (const auto& e : b.vars[i]) mi += e.v * e.v;
    }
    max_ratio = std::max(max_ratio, (1.0 + std::abs(c[i])) / (1.0 + std::sqrt(mi)));
  }
  const double xi = std::max({10.0, std::sqrt(static_cast<double>(total_dim)), max_ratio});
  const double eta = std::max({10.0, std::sqrt(static_cast<double>(total_dim)), m0_norm});

  VectorXd y = VectorXd::Zero(n);
  VectorXd lam = VectorXd::Zero(m);
  std::vector<MatrixXd> x, s;
  for (const auto& b : blocks) {
    x.push_back(xi * MatrixXd::Identity(b.dim, b.dim));
    s.push_back(eta * MatrixXd::Identity(b.dim, b.dim));
  }

  const std::size_t nb = blocks.size();
  std::vector<MatrixXd> z(nb), rp(nb);
  int stalls = 0;

  // Best iterate seen so far, by the worst of gap and infeasibilities. On a
  // degenerate problem rounding can drive the iterates away from a point
  // that was already nearly optimal; that point is returned instead.
  struct Snapshot {
    double merit = std::numeric_limits<double>::infinity();
    int iter = -1;
    VectorXd y, lam;
    std::vector<MatrixXd> x;
    double pobj = 0, dobj = 0, gap = 0, pinf = 0, dinf = 0;
  } best;

  auto record_state = [&]() {
    sol.y = y;
    sol.X.clear();
    for (const auto& xk : x) sol.X.push_back(c_scale * xk);
    sol.lambda.setZero();
    for (std::size_t t = 0; t < m; ++t) sol.lambda[eq.kept[t]] = c_scale * lam[t] / eq.scale[t];
    sol.min_eigenvalues.clear();
    for (std::size_t k = 0; k < nb; ++k) {
      sol.min_eigenvalues.push_back(min_eigenvalue(inst.block_value(k, y)));
    }
    if (!inst.equalities.empty()) {
      sol.max_equality_residual = (dense_rows(inst) * y - rhs_vector(inst)).lpNorm<Eigen::Infinity>();
    }
  };

  auto give_up = [&](Status st, std::string msg) {
    if (best.iter >= 0 && best.iter != sol.iterations) {
      y = best.y;
      lam = best.lam;
      x = best.x;
      sol.primal_objective = best.pobj;
      sol.dual_objective = best.dobj;
      sol.gap = best.gap;
      sol.primal_infeasibility = best.pinf;
      sol.dual_infeasibility = best.dinf;
      msg += "; returning iterate " + std::to_string(best.iter);
    }
    record_state();
    return finish(st, std::move(msg));
  };

  for (int iter = 0;; ++iter) {
    // Residuals and objectives.
    VectorXd atx = VectorXd::Zero(n);
    double m0x = 0.0, xs = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      rp[k] = blocks[k].m0 + apply(blocks[k], y) - s[k];
      adjoint(blocks[k], x[k], atx);
      m0x += (blocks[k].m0.array() * x[k].array()).sum();
      xs += (x[k].array() * s[k].array()).sum();
    }
    const VectorXd re = eq.b - eq.a * y;
    const VectorXd rd = c - atx - eq.a.transpose() * lam;
    const double pobj_s = c.dot(y);
    const double dobj_s = eq.b.dot(lam) - m0x;
    const double pobj = c_in.dot(y) + inst.c0;
    const double dobj = c_scale * dobj_s + inst.c0;
    const double mu = xs / static_cast<double>(total_dim);
    const double pinf = std::max(frob(rp) / (1.0 + m0_norm), re.norm() / (1.0 + b_norm));
    const double dinf = rd.norm() / (1.0 + c_norm);
    const double gap = std::abs(pobj_s - dobj_s) / (1.0 + std::abs(pobj_s) + std::abs(dobj_s));

    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.gap = gap;
    sol.primal_infeasibility = pinf;
    sol.dual_infeasibility = dinf;
    sol.iterations = iter;
    if (opt.keep_log) {
      IterationRecord rec{iter, pobj, dobj, mu, pinf, dinf, 0.0, 0.0};
      if (!sol.log.empty()) {
        rec.primal_step = sol.log.back().primal_step;
        rec.dual_step = sol.log.back().dual_step;
      }
      sol.log.push_back(rec);
    }
    const double merit = std::max({gap, pinf, dinf});
    if (std::isfinite(merit) && merit < best.merit) {
      best = Snapshot{merit, iter, y, lam, x, pobj, dobj, gap, pinf, dinf};
    }
    if (gap <= opt.tol && pinf <= opt.tol && dinf <= opt.tol) {
      record_state();
      return finish(Status::Optimal, "converged");
    }
    if (!std::isfinite(pobj) || !std::isfinite(dobj) || !std::isfinite(mu)) {
      return give_up(Status::NumericalTrouble, "non-finite iterate");
    }
    if (iter >= opt.max_iter) {
      return give_up(Status::MaxIterations, "iteration limit reached");
    }
    if (best.merit < 1e-4 && iter - best.iter >= 5 && merit > 100.0 * best.merit) {
      return give_up(Status::NumericalTrouble, "progress lost to rounding");
    }

    // Z = S^{-1}
    bool ok = true;
    for (std::size_t k = 0; k < nb && ok; ++k) {
      Eigen::LLT<MatrixXd> llt(s[k]);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      z[k] = llt.solve(MatrixXd::Identity(blocks[k].dim, blocks[k].dim));
      z[k] = sym(z[k]);
    }
    if (!ok) {
      return give_up(Status::NumericalTrouble, "slack matrix lost definiteness");
    }

    MatrixXd h = MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < nb; ++k) add_schur(blocks[k], x[k], z[k], h);
    Eigen::LLT<MatrixXd> hllt(h);
    if (hllt.info() != Eigen::Success) {
      const double reg = 1e-14 * std::max(1.0, h.diagonal().maxCoeff());
      h.diagonal().array() += reg;
      hllt.compute(h);
      if (hllt.info() != Eigen::Success) {
        return give_up(Status::NumericalTrouble, "Schur complement not positive definite");
      }
    }
    // With equalities, the augmented system [H -A^T; A 0] is factorised
    // directly while it is small enough; eliminating through H^{-1} loses
    // accuracy once H becomes ill-conditioned near a degenerate optimum.
    const bool augmented = m > 0 && n + m <= kAugmentedLimit;
    Eigen::PartialPivLU<MatrixXd> kkt_lu;
    MatrixXd hinv_at;
    Eigen::LLT<MatrixXd> kllt;
    Eigen::LDLT<MatrixXd> kldlt;
    bool pivoted = false;
    if (augmented) {
      MatrixXd kkt = MatrixXd::Zero(n + m, n + m);
      kkt.topLeftCorner(n, n) = h;
      kkt.topRightCorner(n, m) = -eq.a.transpose();
      kkt.bottomLeftCorner(m, n) = eq.a;
      kkt_lu.compute(kkt);
    } else if (m > 0) {
      hinv_at = hllt.solve(eq.a.transpose());
      const MatrixXd kmat = sym(eq.a * hinv_at);
      kllt.compute(kmat);
      if (kllt.info() != Eigen::Success) {
        // Near a degenerate optimum K loses definiteness to rounding; the
        // pivoted factorisation still yields a usable direction.
        kldlt.compute(kmat);
        pivoted = true;
        if (kldlt.info() != Eigen::Success) {
          return give_up(Status::NumericalTrouble, "equality Schur complement singular");
        }
      }
    }

    // Solves H dy - A^T dl = g, A dy = e.
    auto newton = [&](const VectorXd& g, const VectorXd& e, VectorXd& dy, VectorXd& dl) {
      if (augmented) {
        VectorXd rhs(n + m);
        rhs << g, e;
        const VectorXd sol_vec = kkt_lu.solve(rhs);
        dy = sol_vec.head(n);
        dl = sol_vec.tail(m);
        return;
      }
      const VectorXd hg = hllt.solve(g);
      if (m > 0) {
        dl = pivoted ? VectorXd(kldlt.solve(e - eq.a * hg)) : VectorXd(kllt.solve(e - eq.a * hg));
        dy = hg + hinv_at * dl;
      } else {
        dl = VectorXd::Zero(0);
        dy = hg;
      }
    };

    auto direction = [&](double sigma_mu, const std::vector<MatrixXd>* corr, VectorXd& dy,
                         VectorXd& dl, std::vector<MatrixXd>& ds, std::vector<MatrixXd>& dx) {
      VectorXd rhs = VectorXd::Zero(n);
      std::vector<MatrixXd> r(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        r[k] = sigma_mu * z[k] - x[k] - x[k] * rp[k] * z[k];
        if (corr) r[k] -= (*corr)[k] * z[k];
        adjoint(blocks[k], r[k], rhs);
      }
      newton(rhs - rd, re, dy, dl);
      ds.resize(nb);
      dx.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        ds[k] = rp[k] + apply(blocks[k], dy);
        MatrixXd t = x[k] * ds[k];
        if (corr) t += (*corr)[k];
        dx[k] = sigma_mu * z[k] - x[k] - sym(t * z[k]);
      }
      // Iterative refinement against the operator as actually applied: when
      // S is ill-conditioned, rounding in X dS S^{-1} leaves a dual mismatch
      // that a full step would otherwise carry into the next iterate.
      for (int round = 0; round < 2; ++round) {
        VectorXd mismatch = rd - eq.a.transpose() * dl;
        for (std::size_t k = 0; k < nb; ++k) {
          VectorXd part = VectorXd::Zero(n);
          adjoint(blocks[k], dx[k], part);
          mismatch -= part;
        }
        const VectorXd emis = re - eq.a * dy;
        if (mismatch.norm() <= 1e-14 * (1.0 + c_norm) && emis.norm() <= 1e-14 * (1.0 + b_norm)) break;
        VectorXd ddy, ddl;
        newton(-mismatch, emis, ddy, ddl);
        dy += ddy;
        dl += ddl;
        for (std::size_t k = 0; k < nb; ++k) {
          const MatrixXd dds = apply(blocks[k], ddy);
          ds[k] += dds;
          dx[k] -= sym(x[k] * dds * z[k]);
        }
      }
    };

    auto steps = [&](const std::vector<MatrixXd>& ds, const std::vector<MatrixXd>& dx) {
      double ap = std::numeric_limits<double>::infinity();
      double ad = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(s[k], ds[k]));
        ad = std::min(ad, max_step(x[k], dx[k]));
      }
      return std::pair{ap, ad};
    };

    // Predictor.
    VectorXd dy, dl;
    std::vector<MatrixXd> ds, dx;
    direction(0.0, nullptr, dy, dl, ds, dx);
    auto [ap_aff, ad_aff] = steps(ds, dx);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      mu_aff += ((x[k] + ad_aff * dx[k]).array() * (s[k] + ap_aff * ds[k]).array()).sum();
    }
    mu_aff /= static_cast<double>(total_dim);
    double sigma = mu > 0 ? std::pow(std::max(0.0, mu_aff) / mu, 3) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector.
    std::vector<MatrixXd> corr(nb);
    for (std::size_t k = 0; k < nb; ++k) corr[k] = dx[k] * ds[k];
    direction(sigma * mu, &corr, dy, dl, ds, dx);
    auto [ap, ad] = steps(ds, dx);
    ap = std::min(1.0, opt.step_fraction * ap);
    ad = std::min(1.0, opt.step_fraction * ad);
    if (!std::isfinite(ap) || !std::isfinite(ad) || !dy.allFinite()) {
      return give_up(Status::NumericalTrouble, "non-finite search direction");
    }

    y += ap * dy;
    for (std::size_t k = 0; k < nb; ++k) {
      s[k] = sym(s[k] + ap * ds[k]);
      x[k] = sym(x[k] + ad * dx[k]);
    }
    lam += ad * dl;
    if (opt.keep_log) {
      sol.log.back().primal_step = ap;
      sol.log.back().dual_step = ad;
    }

    stalls = (ap < 1e-8 && ad < 1e-8) ? stalls + 1 : 0;
    if (stalls >= 5) {
      return give_up(Status::NumericalTrouble, "step lengths stalled");
    }
  }
}

VerificationReport check_solution(const SDPInstance& inst, const SDPSolution& sol, double tol) {
  inst.validate();
  VerificationReport rep;
  const std::size_t n = inst.n;
  if (static_cast<std::size_t>(sol.y.size()) != n) {
    rep.violations.push_back("solution has wrong length");
    return rep;
  }
  const VectorXd c = Eigen::Map<const VectorXd>(inst.c.data(), static_cast<Eigen::Index>(n));
  const double c_scale = c.norm() > 0 ? c.norm() : 1.0;
  const MatrixXd a = dense_rows(inst);
  const VectorXd b = rhs_vector(inst);

  if (!inst.equalities.empty()) {
    // Rows are compared after normalisation to unit length, as in the solver.
    VectorXd res = a * sol.y - b;
    VectorXd bn = b;
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
      const double norm = a.row(k).norm();
      if (norm > 0) {
        res[k] /= norm;
        bn[k] /= norm;
      }
    }
    rep.equality_residual = res.norm() / (1.0 + bn.norm());
  }
  if (rep.equality_residual > tol) rep.violations.push_back("equality residual above tolerance");

  const auto blocks = expand(inst);
  double m0_norm = 0.0;
  for (const auto& blk : blocks) m0_norm += blk.m0.squaredNorm();
  m0_norm = std::sqrt(m0_norm);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    rep.primal_min_eigenvalues.push_back(min_eigenvalue(inst.block_value(k, sol.y)));
    if (rep.primal_min_eigenvalues.back() < -tol * (1.0 + m0_norm)) {
      rep.violations.push_back("block " + std::to_string(k) + " is not positive semidefinite");
    }
  }

  const double pobj = c.dot(sol.y) + inst.c0;
  rep.objective_mismatch =
      std::abs(sol.primal_objective - pobj) / (1.0 + std::abs(pobj));
  if (rep.objective_mismatch > tol) rep.violations.push_back("reported objective mismatch");

  const bool have_dual = sol.X.size() == blocks.size() &&
                         static_cast<std::size_t>(sol.lambda.size()) == inst.equalities.size();
  if (!have_dual) {
    rep.violations.push_back("dual matrices missing");
    return rep;
  }
  VectorXd atx = VectorXd::Zero(n);
  double m0x = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (static_cast<std::size_t>(sol.X[k].rows()) != blocks[k].dim) {
      rep.violations.push_back("dual matrix has wrong size");
      return rep;
    }
    adjoint(blocks[k], sol.X[k], atx);
    m0x += (blocks[k].m0.array() * sol.X[k].array()).sum();
    rep.dual_min_eigenvalues.push_back(min_eigenvalue(sol.X[k]));
    if (rep.dual_min_eigenvalues.back() < -tol) {
      rep.violations.push_back("dual block " + std::to_string(k) +
                               " is not positive semidefinite");
    }
  }
  VectorXd rd = c - atx;
  if (!inst.equalities.empty()) rd -= a.transpose() * sol.lambda;
  rep.dual_residual = rd.norm() / c_scale / (1.0 + c.norm() / c_scale);
  if (rep.dual_residual > tol) rep.violations.push_back("dual residual above tolerance");
  const double dobj = b.dot(sol.lambda) - m0x + inst.c0;
  const double ps = (pobj - inst.c0) / c_scale, ds = (dobj - inst.c0) / c_scale;
  rep.gap = std::abs(ps - ds) / (1.0 + std::abs(ps) + std::abs(ds));
  if (rep.gap > tol) rep.violations.push_back("duality gap above tolerance");
  return rep;
}

}  // namespace mub::sdpsolve
