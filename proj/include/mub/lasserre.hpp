#pragma once

// Moment relaxations of
//
//   minimise p_obj^2  subject to  p_j = 0 for every j != obj
//
// at order r. Decision variables are the moments y_m = L(x^m) of every
// monomial of degree 1..2r (the constant moment is fixed to 1). The moment
// matrix indexed by monomials of degree <= r must be PSD and every
// L(m * p_j) with deg(m) + deg(p_j) <= 2r must vanish. A positive optimum
// B_L(r) proves that the polynomial system has no real solution.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mub/constellation.hpp"
#include "mub/poly.hpp"
#include "mub/sdpsolve.hpp"

namespace mub::lasserre {

using constellation::PolynomialSystem;
using poly::BigRational;
using poly::Monomial;

struct MomentRow {
  std::size_t poly = 0;   // constraint index in the system
  Monomial multiplier;
  std::vector<std::pair<std::size_t, BigRational>> coeffs;  // moment slot >= 1
  BigRational rhs;
};

struct MomentRelaxation {
  std::size_t n = 0;
  unsigned r = 0;
  std::size_t objective_index = 0;
  // Slot 0 is the constant monomial; slot k >= 1 is decision variable k-1.
  // Graded order: degree ascending, lexicographic (x0 first) within a degree.
  std::vector<Monomial> moments;
  std::unordered_map<Monomial, std::size_t, poly::MonomialHash> slot_of;
  std::vector<Monomial> basis;  // moment-matrix basis, degree <= r
  std::vector<MomentRow> equalities;
  std::vector<std::pair<std::size_t, BigRational>> objective;  // slot >= 1
  BigRational objective_constant;

  std::size_t num_decisions() const { return moments.size() - 1; }
  std::size_t matrix_size() const { return basis.size(); }
  // Slot of x_i (degree-one moment).
  std::size_t linear_slot(std::size_t i) const { return 1 + i; }
};

// Smallest order with 2r >= deg(p_obj^2) and 2r >= deg(p_j).
unsigned minimal_order(const PolynomialSystem& sys, std::size_t objective_index = 0);

// Throws std::invalid_argument when r is below minimal_order (the message
// names the minimal admissible order) or objective_index is out of range.
MomentRelaxation build_relaxation(const PolynomialSystem& sys, std::size_t objective_index,
                                  unsigned r);

sdpsolve::SDPInstance to_sdp(const MomentRelaxation& rel);

// Moments y(x) of the Dirac measure at `point`, decision slots only.
std::vector<double> moment_vector(const MomentRelaxation& rel, const std::vector<double>& point);

enum class Verdict { Nonexistent, Found, Inconclusive };
std::string to_string(Verdict v);

struct HierarchyOptions {
  std::size_t objective_index = 0;
  unsigned r_min = 0;  // 0: minimal admissible order
  unsigned r_max = 0;  // 0: r_min
  double threshold = 1e-6;
  double gap_factor = 10.0;
  double extraction_tol = 1e-6;
  // Keep solving the remaining levels after the verdict is decided.
  bool solve_all_levels = true;
  sdpsolve::Options solver;
};

struct LevelRecord {
  unsigned r = 0;
  std::size_t num_decisions = 0;
  std::size_t matrix_size = 0;
  std::size_t num_equalities = 0;
  double bound = 0.0;          // B_L(r), primal optimum of the relaxation
  double dual_bound = 0.0;
  sdpsolve::Status status = sdpsolve::Status::NumericalTrouble;
  double gap = 0.0;            // relative
  double absolute_gap = 0.0;   // |primal - dual|
  int iterations = 0;
  double wall_seconds = 0.0;
  bool certifies = false;      // B_L(r) > max(threshold, gap_factor * absolute_gap)
  std::optional<std::vector<double>> candidate;
  double candidate_residual = 0.0;
  std::string extraction;      // "", "first_moments" or "linear_functional"
  std::string message;
};

struct HierarchyResult {
  std::vector<LevelRecord> levels;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<unsigned> decisive_order;
  std::vector<double> point;
  std::vector<double> residuals;
  double threshold = 0.0;
};

HierarchyResult run_hierarchy(const PolynomialSystem& sys, const HierarchyOptions& options = {});

}  // namespace mub::lasserre
