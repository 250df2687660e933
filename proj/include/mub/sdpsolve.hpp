#pragma once

// Dense primal-dual interior-point solver for semidefinite programs in the
// mixed form
//
//   minimise    c^T y + c0
//   subject to  A y = b
//               M0 + sum_i y_i M_i  >= 0   (one or more symmetric blocks)
//
// and its dual
//
//   maximise    b^T lambda - <M0, X> + c0
//   subject to  <M_i, X> + (A^T lambda)_i = c_i,  X >= 0.
//
// Search direction: HKM with Mehrotra predictor-corrector, infeasible start.
//
// Relative measures (gap, dual residual) are taken on the problem with c
// normalised to unit length and c0 dropped, so they do not change when the
// objective is rescaled.

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace mub::sdpsolve {

// One nonzero of a symmetric coefficient matrix; row <= col. `matrix` is 0
// for the constant M0 and i+1 for the coefficient M_i of y_i.
struct MatrixEntry {
  std::size_t matrix = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
  bool operator==(const MatrixEntry&) const = default;
};

struct AffineBlock {
  std::size_t dim = 0;
  std::vector<MatrixEntry> entries;
  bool operator==(const AffineBlock&) const = default;
};

struct LinearRow {
  std::vector<std::pair<std::size_t, double>> coeffs;
  double rhs = 0.0;
  bool operator==(const LinearRow&) const = default;
};

struct SDPInstance {
  std::size_t n = 0;
  std::vector<double> c;
  double c0 = 0.0;
  std::vector<LinearRow> equalities;
  std::vector<AffineBlock> blocks;

  // Throws std::invalid_argument on malformed data.
  void validate() const;
  // M0 + sum y_i M_i for block k (dense, symmetric).
  Eigen::MatrixXd block_value(std::size_t k, const Eigen::VectorXd& y) const;
  bool operator==(const SDPInstance&) const = default;
};

enum class Status { Optimal, PrimalInfeasibleCertificate, MaxIterations, NumericalTrouble };
std::string to_string(Status s);

struct Options {
  double tol = 1e-8;
  int max_iter = 200;
  double step_fraction = 0.95;
  bool keep_log = true;
};

struct IterationRecord {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double mu = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double primal_step = 0.0;
  double dual_step = 0.0;
};

struct SDPSolution {
  Status status = Status::NumericalTrouble;
  Eigen::VectorXd y;
  Eigen::VectorXd lambda;            // one entry per equality row, 0 for removed rows
  std::vector<Eigen::MatrixXd> X;    // dual matrices, one per block
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;                  // |p - d| / (1 + |p| + |d|), normalised objective
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double max_equality_residual = 0.0;
  std::vector<double> min_eigenvalues;  // of M0 + sum y_i M_i, per block
  int iterations = 0;
  double wall_seconds = 0.0;
  std::vector<std::size_t> removed_rows;
  std::string message;
  std::vector<IterationRecord> log;
};

SDPSolution solve(const SDPInstance& instance, const Options& options = {});

struct VerificationReport {
  double equality_residual = 0.0;   // ||Ay - b|| / (1 + ||b||)
  double dual_residual = 0.0;       // ||c - A*(X) - A^T lambda|| / (1 + ||c||)
  double gap = 0.0;                 // recomputed, relative
  double objective_mismatch = 0.0;  // |reported - recomputed| / (1 + |recomputed|)
  std::vector<double> primal_min_eigenvalues;
  std::vector<double> dual_min_eigenvalues;
  std::vector<std::string> violations;

  bool clean() const { return violations.empty(); }
};

VerificationReport check_solution(const SDPInstance& instance, const SDPSolution& solution,
                                  double tol = 1e-8);

}  // namespace mub::sdpsolve
