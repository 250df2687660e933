#pragma once

// Rigorous discretization of constellation phases.
//
// Every phase alpha_k is replaced by the midpoint 2 pi j / R of the interval
// I_j = [(2j-1) pi / R, (2j+1) pi / R) that contains it, so the phase error is
// at most pi / R. For an inner product s = (1/d) sum_k e^{i theta_k} whose
// exponents theta_k each carry the errors of the gridded phases they contain,
// |e^{i delta} - 1| <= |delta| and the triangle inequality give
//   | |s~| - |s| | <= (1/d) sum_k delta_k.
// A cell survives when every gridded condition lies within that bound of its
// target; a constellation whose cells all fail does not exist.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mub/constellation.hpp"

namespace mub::gridsearch {

using constellation::ConstellationSpec;
using constellation::Role;
using constellation::VectorRef;

struct GridSpec {
  std::vector<unsigned> resolutions;  // one per phase, each >= 2

  static GridSpec uniform(std::size_t num_phases, unsigned resolution);
  void validate(std::size_t num_phases) const;
};

// Midpoint of interval j (1..R).
double grid_angle(unsigned j, unsigned resolution);
// Interval index j in 1..R containing `angle`.
unsigned grid_index(double angle, unsigned resolution);

struct LayoutVector {
  VectorRef ref;
  bool free = false;
  std::size_t first_phase = 0;  // phases of components 1..d-1 are consecutive
};

struct GridCondition {
  Role role = Role::Unbiasedness;
  std::size_t a = 0;  // indices into PhaseLayout::vectors
  std::size_t b = 0;
};

// Vectors outside set 0 and the pairwise conditions between them, in the same
// order as constellation::build_system.
struct PhaseLayout {
  unsigned d = 0;
  std::size_t num_phases = 0;
  std::vector<LayoutVector> vectors;
  std::vector<GridCondition> conditions;

  static PhaseLayout from_spec(const ConstellationSpec& spec);
};

// (1/d) * sum over components k >= 1 of pi/R for each free endpoint.
double condition_bound(const PhaseLayout& layout, const GridCondition& condition,
                       const GridSpec& grid);
// Single-resolution form: `gridded_per_component[k]` counts the gridded phases
// (0, 1 or 2) in the k-th exponent.
double condition_bound(std::span<const unsigned> gridded_per_component, unsigned resolution,
                       unsigned d);

enum class Verdict { ExcludedEverywhere, SurvivorsExist };
std::string to_string(Verdict v);

struct Witness {
  std::uint64_t cell = 0;
  std::vector<unsigned> indices;  // j per phase, 1..R
  std::vector<double> angles;
};

struct ReportedBound {
  GridCondition condition;
  VectorRef a;
  VectorRef b;
  double bound = 0.0;
};

struct ExclusionReport {
  std::string constellation;
  std::vector<unsigned> resolutions;
  std::uint64_t total_cells = 0;
  std::uint64_t surviving = 0;
  std::vector<Witness> witnesses;
  std::vector<ReportedBound> bounds;
  Verdict verdict = Verdict::SurvivorsExist;
  double wall_seconds = 0.0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(long double required, std::uint64_t budget);
  long double required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  long double required_;
  std::uint64_t budget_;
};

struct SearchOptions {
  std::uint64_t budget = 100'000'000;
  std::size_t max_witnesses = 10;
  unsigned threads = 0;  // 0: hardware concurrency
};

// The qubit {1,1,1,1}_2 check over R^2 cells (alpha_j, beta_j'):
//   ||cos(alpha/2)| - 1/sqrt2| <= pi/(2R), same for beta,
//   ||cos((alpha-beta)/2)| - 1/sqrt2| <= pi/R.
ExclusionReport exclusion_check_qubit(unsigned resolution, std::size_t max_witnesses = 10);

// Smallest R in [2, max_resolution] at which the qubit check excludes every
// cell, if any.
std::optional<unsigned> minimal_qubit_resolution(unsigned max_resolution);

bool cell_survives(const PhaseLayout& layout, const GridSpec& grid,
                   std::span<const unsigned> indices);

// Throws BudgetExceeded when prod(R_k) > options.budget.
ExclusionReport exclusion_search(const ConstellationSpec& spec, const GridSpec& grid,
                                 const SearchOptions& options = {});

}  // namespace mub::gridsearch
