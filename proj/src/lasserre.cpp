#include "mub/lasserre.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mub::lasserre {

using poly::Polynomial;

namespace {

// All exponent vectors of total degree `deg` in n variables, lexicographically
// descending (x0^deg first).
void monomials_of_degree(std::size_t n, unsigned deg, std::vector<Monomial>& out) {
  std::vector<Monomial::Exponent> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = static_cast<Monomial::Exponent>(left);
      out.emplace_back(e);
      return;
    }
    for (int k = static_cast<int>(left); k >= 0; --k) {
      e[i] = static_cast<Monomial::Exponent>(k);
      self(self, i + 1, left - static_cast<unsigned>(k));
    }
    e[i] = 0;
  };
  if (n == 0) {
    if (deg == 0) out.emplace_back(std::vector<Monomial::Exponent>{});
    return;
  }
  rec(rec, 0, deg);
}

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned deg) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= deg; ++d) monomials_of_degree(n, d, out);
  return out;
}

// Rows L(m * p_j) = 0 for every j in `constraints`.
std::vector<MomentRow> moment_rows(const MomentRelaxation& rel, const PolynomialSystem& sys,
                                   const std::vector<std::size_t>& constraints) {
  std::vector<MomentRow> rows;
  const auto polys = sys.polynomials();
  for (std::size_t j : constraints) {
    const auto& p = polys[j];
    const unsigned room = 2 * rel.r - static_cast<unsigned>(p.degree());
    for (const auto& m : monomials_up_to(rel.n, room)) {
      MomentRow row;
      row.poly = j;
      row.multiplier = m;
      row.rhs = 0;
      for (const auto& t : p.terms()) {
        const auto slot = rel.slot_of.at(t.monomial * m);
        if (slot == 0) {
          row.rhs -= t.coeff;
        } else {
          row.coeffs.emplace_back(slot, t.coeff);
        }
      }
      std::sort(row.coeffs.begin(), row.coeffs.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

MomentRelaxation skeleton(std::size_t n, unsigned r) {
  MomentRelaxation rel;
  rel.n = n;
  rel.r = r;
  rel.moments = monomials_up_to(n, 2 * r);
  rel.slot_of.reserve(rel.moments.size());
  for (std::size_t k = 0; k < rel.moments.size(); ++k) rel.slot_of.emplace(rel.moments[k], k);
  rel.basis = monomials_up_to(n, r);
  return rel;
}

sdpsolve::AffineBlock moment_block(const MomentRelaxation& rel) {
  sdpsolve::AffineBlock blk{rel.basis.size(), {}};
  for (std::size_t u = 0; u < rel.basis.size(); ++u) {
    for (std::size_t v = u; v < rel.basis.size(); ++v) {
      const std::size_t slot = rel.slot_of.at(rel.basis[u] * rel.basis[v]);
      // Slot 0 is the constant moment y_0 = 1, which lands in M0.
      blk.entries.push_back({slot, u, v, 1.0});
    }
  }
  return blk;
}

std::vector<sdpsolve::LinearRow> float_rows(const std::vector<MomentRow>& rows) {
  std::vector<sdpsolve::LinearRow> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    sdpsolve::LinearRow lr;
    for (const auto& [slot, v] : row.coeffs) lr.coeffs.emplace_back(slot - 1, v.get_d());
    lr.rhs = row.rhs.get_d();
    out.push_back(std::move(lr));
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Gauss-Newton polishing of a candidate zero of the system.
std::vector<double> polish(const std::vector<Polynomial>& polys, std::vector<double> x) {
  const std::size_t n = x.size();
  for (int iter = 0; iter < 30; ++iter) {
    Eigen::VectorXd f(static_cast<Eigen::Index>(polys.size()));
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(polys.size()),
                                                static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < polys.size(); ++j) {
      f[static_cast<Eigen::Index>(j)] = polys[j].evaluate(std::span<const double>(x));
      for (const auto& t : polys[j].terms()) {
        const double c = t.coeff.get_d();
        for (std::size_t i = 0; i < n; ++i) {
          const unsigned e = t.monomial[i];
          if (e == 0) continue;
          double v = c * e;
          for (std::size_t k = 0; k < n; ++k) {
            const unsigned ek = k == i ? e - 1 : t.monomial[k];
            for (unsigned q = 0; q < ek; ++q) v *= x[k];
          }
          jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += v;
        }
      }
    }
    if (f.lpNorm<Eigen::Infinity>() < 1e-14) break;
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite()) break;
    for (std::size_t i = 0; i < n; ++i) x[i] += step[static_cast<Eigen::Index>(i)];
    if (step.norm() < 1e-15) break;
  }
  return x;
}

std::vector<double> residuals_at(const PolynomialSystem& sys, const std::vector<double>& x) {
  return constellation::evaluate_system(sys, std::span<const double>(x));
}

std::vector<double> first_moments(const MomentRelaxation& rel, const Eigen::VectorXd& y) {
  std::vector<double> x(rel.n);
  for (std::size_t i = 0; i < rel.n; ++i) x[i] = y[static_cast<Eigen::Index>(rel.linear_slot(i) - 1)];
  return x;
}

}  // namespace

unsigned minimal_order(const PolynomialSystem& sys, std::size_t objective_index) {
  const auto polys = sys.polynomials();
  if (objective_index >= polys.size()) {
    throw std::invalid_argument("objective index " + std::to_string(objective_index) +
                                " out of range (" + std::to_string(polys.size()) +
                                " polynomials)");
  }
  unsigned r = (2 * static_cast<unsigned>(polys[objective_index].degree()) + 1) / 2;
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (j == objective_index) continue;
    r = std::max(r, (static_cast<unsigned>(std::max(polys[j].degree(), 0)) + 1) / 2);
  }
  return std::max(r, 1u);
}

MomentRelaxation build_relaxation(const PolynomialSystem& sys, std::size_t objective_index,
                                  unsigned r) {
  const unsigned r_min = minimal_order(sys, objective_index);
  if (r < r_min) {
    throw std::invalid_argument("relaxation order " + std::to_string(r) +
                                " is too small; minimal admissible order is " +
                                std::to_string(r_min));
  }
  auto rel = skeleton(sys.num_vars(), r);
  rel.objective_index = objective_index;
  std::vector<std::size_t> constraints;
  for (std::size_t j = 0; j < sys.polys.size(); ++j) {
    if (j != objective_index) constraints.push_back(j);
  }
  rel.equalities = moment_rows(rel, sys, constraints);
  const auto obj = sys.polys[objective_index].poly;
  const auto sq = obj * obj;
  rel.objective_constant = 0;
  for (const auto& t : sq.terms()) {
    const auto slot = rel.slot_of.at(t.monomial);
    if (slot == 0) {
      rel.objective_constant = t.coeff;
    } else {
      rel.objective.emplace_back(slot, t.coeff);
    }
  }
  std::sort(rel.objective.begin(), rel.objective.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return rel;
}

sdpsolve::SDPInstance to_sdp(const MomentRelaxation& rel) {
  sdpsolve::SDPInstance inst;
  inst.n = rel.num_decisions();
  inst.c.assign(inst.n, 0.0);
  for (const auto& [slot, v] : rel.objective) inst.c[slot - 1] = v.get_d();
  inst.c0 = rel.objective_constant.get_d();
  inst.equalities = float_rows(rel.equalities);
  inst.blocks.push_back(moment_block(rel));
  return inst;
}

std::vector<double> moment_vector(const MomentRelaxation& rel, const std::vector<double>& point) {
  if (point.size() != rel.n) throw std::invalid_argument("point has wrong dimension");
  std::vector<double> y;
  y.reserve(rel.num_decisions());
  for (std::size_t k = 1; k < rel.moments.size(); ++k) {
    double v = 1.0;
    for (std::size_t i = 0; i < rel.n; ++i) {
      for (unsigned e = 0; e < rel.moments[k][i]; ++e) v *= point[i];
    }
    y.push_back(v);
  }
  return y;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Nonexistent: return "nonexistent";
    case Verdict::Found: return "found";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

HierarchyResult run_hierarchy(const PolynomialSystem& sys, const HierarchyOptions& opt) {
  HierarchyResult result;
  result.threshold = opt.threshold;
  const unsigned r_min = opt.r_min ? opt.r_min : minimal_order(sys, opt.objective_index);
  const unsigned r_max = std::max(r_min, opt.r_max);
  const auto polys = sys.polynomials();

  for (unsigned r = r_min; r <= r_max; ++r) {
    if (result.verdict != Verdict::Inconclusive && !opt.solve_all_levels) break;
    const auto start = std::chrono::steady_clock::now();
    LevelRecord rec;
    rec.r = r;
    const auto rel = build_relaxation(sys, opt.objective_index, r);
    rec.num_decisions = rel.num_decisions();
    rec.matrix_size = rel.matrix_size();
    rec.num_equalities = rel.equalities.size();
    sdpsolve::SDPSolution sol;
    try {
      sol = sdpsolve::solve(to_sdp(rel), opt.solver);
    } catch (const std::exception& e) {
      sol.status = sdpsolve::Status::NumericalTrouble;
      sol.message = e.what();
    }
    rec.status = sol.status;
    rec.message = sol.message;
    rec.bound = sol.primal_objective;
    rec.dual_bound = sol.dual_objective;
    rec.gap = sol.gap;
    rec.absolute_gap = std::abs(sol.primal_objective - sol.dual_objective);
    rec.iterations = sol.iterations;
    const bool optimal = sol.status == sdpsolve::Status::Optimal;
    rec.certifies = optimal && rec.bound > std::max(opt.threshold, opt.gap_factor * rec.absolute_gap);

    const bool deciding = result.verdict == Verdict::Inconclusive;
    if (deciding && rec.certifies) {
      result.verdict = Verdict::Nonexistent;
      result.decisive_order = r;
    } else if (deciding && sol.status != sdpsolve::Status::PrimalInfeasibleCertificate &&
               sol.y.size() > 0 && sol.y.allFinite()) {
      // Any iterate may be tried: a candidate is only accepted on its residuals.
      auto try_candidate = [&](std::vector<double> x, const char* how) {
        x = polish(polys, std::move(x));
        const auto res = residuals_at(sys, x);
        if (!rec.candidate || max_abs(res) < rec.candidate_residual) {
          rec.candidate = x;
          rec.candidate_residual = max_abs(res);
          rec.extraction = how;
        }
        if (max_abs(res) <= opt.extraction_tol) {
          result.verdict = Verdict::Found;
          result.decisive_order = r;
          result.point = x;
          result.residuals = res;
          return true;
        }
        return false;
      };
      bool found = try_candidate(first_moments(rel, sol.y), "first_moments");
      if (!found && rec.bound <= opt.threshold) {
        // Averaging over symmetric minimisers can put the first moments at a
        // non-solution; a generic linear objective over the feasible moments
        // picks out one minimiser instead.
        auto ext = skeleton(rel.n, r);
        std::vector<std::size_t> all(sys.polys.size());
        for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
        ext.equalities = moment_rows(ext, sys, all);
        sdpsolve::SDPInstance inst;
        inst.n = ext.num_decisions();
        inst.c.assign(inst.n, 0.0);
        std::mt19937 rng(20240917u + r);
        std::normal_distribution<double> g(0.0, 1.0);
        for (std::size_t i = 0; i < ext.n; ++i) inst.c[ext.linear_slot(i) - 1] = g(rng);
        inst.equalities = float_rows(ext.equalities);
        inst.blocks.push_back(moment_block(ext));
        try {
          const auto esol = sdpsolve::solve(inst, opt.solver);
          if (esol.y.size() > 0 && esol.y.allFinite() &&
              esol.status != sdpsolve::Status::PrimalInfeasibleCertificate) {
            try_candidate(first_moments(ext, esol.y), "linear_functional");
          }
        } catch (const std::exception&) {
          // extraction is best effort
        }
      }
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.levels.push_back(std::move(rec));
  }
  return result;
}

}  // namespace mub::lasserre
