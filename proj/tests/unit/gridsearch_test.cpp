#include "mub/gridsearch.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace mub::gridsearch {
namespace {

constexpr double kPi = std::numbers::pi;

// Minimal resolution at which every qubit cell is excluded, established by a
// full sweep R = 2, 3, ... and frozen here.
constexpr unsigned kQubitMinimalResolution = 12;

// Straight-line oracle for the three qubit inequalities, written without the
// library's tables or layout.
std::set<std::pair<unsigned, unsigned>> qubit_oracle(unsigned r) {
  std::set<std::pair<unsigned, unsigned>> out;
  const double t = 1.0 / std::sqrt(2.0);
  for (unsigned j1 = 1; j1 <= r; ++j1) {
    for (unsigned j2 = 1; j2 <= r; ++j2) {
      const double a = 2 * kPi * j1 / r;
      const double b = 2 * kPi * j2 / r;
      const bool ok = std::abs(std::abs(std::cos(a / 2)) - t) <= kPi / (2 * r) + 1e-12 &&
                      std::abs(std::abs(std::cos(b / 2)) - t) <= kPi / (2 * r) + 1e-12 &&
                      std::abs(std::abs(std::cos((a - b) / 2)) - t) <= kPi / r + 1e-12;
      if (ok) out.insert({j1, j2});
    }
  }
  return out;
}

std::set<std::pair<unsigned, unsigned>> witness_set(const ExclusionReport& rep) {
  std::set<std::pair<unsigned, unsigned>> out;
  for (const auto& w : rep.witnesses) out.insert({w.indices[0], w.indices[1]});
  return out;
}

TEST(GridAngleTest, MidpointsAndIntervals) {
  EXPECT_DOUBLE_EQ(grid_angle(1, 4), kPi / 2);
  EXPECT_DOUBLE_EQ(grid_angle(4, 4), 2 * kPi);
  EXPECT_EQ(grid_index(kPi / 2, 4), 1u);
  EXPECT_EQ(grid_index(0.0, 4), 4u);
  EXPECT_EQ(grid_index(2 * kPi - 0.1, 4), 4u);
  // Lower interval end belongs to the interval.
  EXPECT_EQ(grid_index(kPi / 4, 4), 1u);
  EXPECT_EQ(grid_index(-kPi / 2, 4), 3u);
}

TEST(ConditionBoundTest, QubitForms) {
  const auto layout = PhaseLayout::from_spec({2, {1, 1, 1, 1}});
  ASSERT_EQ(layout.conditions.size(), 3u);
  for (unsigned r : {4u, 7u, 12u, 100u}) {
    const auto grid = GridSpec::uniform(layout.num_phases, r);
    EXPECT_DOUBLE_EQ(condition_bound(layout, layout.conditions[0], grid), kPi / (2 * r));
    EXPECT_DOUBLE_EQ(condition_bound(layout, layout.conditions[1], grid), kPi / (2 * r));
    EXPECT_DOUBLE_EQ(condition_bound(layout, layout.conditions[2], grid), kPi / r);
  }
  const std::vector<unsigned> one{1}, two{2};
  EXPECT_DOUBLE_EQ(condition_bound(one, 9, 2), kPi / 18);
  EXPECT_DOUBLE_EQ(condition_bound(two, 9, 2), kPi / 9);
}

TEST(ConditionBoundTest, HalvesWhenResolutionDoubles) {
  const auto layout = PhaseLayout::from_spec({3, {2, 2, 2}});
  for (const auto& c : layout.conditions) {
    const double b1 = condition_bound(layout, c, GridSpec::uniform(layout.num_phases, 10));
    const double b2 = condition_bound(layout, c, GridSpec::uniform(layout.num_phases, 20));
    EXPECT_DOUBLE_EQ(b2, b1 / 2);
  }
}

TEST(ConditionBoundTest, PerVariableResolutions) {
  const auto layout = PhaseLayout::from_spec({2, {1, 1, 1, 1}});
  const GridSpec grid{{4, 8}};
  EXPECT_DOUBLE_EQ(condition_bound(layout, layout.conditions[2], grid),
                   (kPi / 4 + kPi / 8) / 2);
  EXPECT_THROW(condition_bound(std::vector<unsigned>{3}, 4, 2), std::invalid_argument);
}

TEST(QubitCheckTest, ResolutionFourSurvivors) {
  const auto rep = exclusion_check_qubit(4, 100);
  EXPECT_EQ(rep.total_cells, 16u);
  EXPECT_EQ(rep.verdict, Verdict::SurvivorsExist);
  const std::set<std::pair<unsigned, unsigned>> expected{
      {1, 1}, {1, 3}, {1, 4}, {3, 1}, {3, 3}, {3, 4}, {4, 1}, {4, 3}, {4, 4}};
  EXPECT_EQ(witness_set(rep), expected);
  EXPECT_EQ(rep.surviving, expected.size());
  // alpha = pi/2, beta = 3 pi/2
  EXPECT_TRUE(expected.count({1, 3}));
}

TEST(QubitCheckTest, ResolutionTwoEnumerated) {
  const auto rep = exclusion_check_qubit(2, 100);
  EXPECT_EQ(rep.total_cells, 4u);
  EXPECT_EQ(witness_set(rep), qubit_oracle(2));
}

TEST(QubitCheckTest, AgreesWithOracleOnSweep) {
  for (unsigned r = 2; r <= 60; ++r) {
    const auto rep = exclusion_check_qubit(r, r * r);
    EXPECT_EQ(witness_set(rep), qubit_oracle(r)) << r;
    EXPECT_EQ(rep.verdict == Verdict::ExcludedEverywhere, rep.surviving == 0);
  }
}

TEST(QubitCheckTest, MinimalResolutionFrozen) {
  const auto found = minimal_qubit_resolution(200);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(*found, kQubitMinimalResolution);
  EXPECT_GT(exclusion_check_qubit(kQubitMinimalResolution - 1).surviving, 0u);
  for (unsigned m : {1u, 2u, 4u}) {
    EXPECT_EQ(exclusion_check_qubit(m * kQubitMinimalResolution).verdict,
              Verdict::ExcludedEverywhere)
        << m;
  }
}

TEST(QubitCheckTest, TooSmallResolutionRejected) {
  EXPECT_THROW(exclusion_check_qubit(1), std::invalid_argument);
}

TEST(ExclusionSearchTest, MatchesQubitCheck) {
  const ConstellationSpec spec{2, {1, 1, 1, 1}};
  for (unsigned r : {4u, 9u, kQubitMinimalResolution, 25u}) {
    const auto general = exclusion_search(spec, GridSpec::uniform(2, r), {.max_witnesses = 1000});
    const auto qubit = exclusion_check_qubit(r, 1000);
    EXPECT_EQ(general.surviving, qubit.surviving) << r;
    EXPECT_EQ(witness_set(general), witness_set(qubit)) << r;
    ASSERT_EQ(general.bounds.size(), qubit.bounds.size());
    for (std::size_t i = 0; i < general.bounds.size(); ++i) {
      EXPECT_EQ(general.bounds[i].bound, qubit.bounds[i].bound);
    }
  }
  EXPECT_EQ(exclusion_search(spec, GridSpec::uniform(2, kQubitMinimalResolution)).verdict,
            Verdict::ExcludedEverywhere);
}

TEST(ExclusionSearchTest, TrueSolutionCellAlwaysSurvives) {
  const ConstellationSpec spec{2, {1, 1, 1}};
  const auto layout = PhaseLayout::from_spec(spec);
  ASSERT_EQ(layout.num_phases, 1u);
  for (unsigned r = 2; r <= 400; ++r) {
    const auto grid = GridSpec::uniform(1, r);
    for (double alpha : {kPi / 2, 3 * kPi / 2}) {
      const std::vector<unsigned> cell{grid_index(alpha, r)};
      EXPECT_TRUE(cell_survives(layout, grid, cell)) << r << " " << alpha;
    }
    if (r >= 4) EXPECT_EQ(exclusion_search(spec, grid).verdict, Verdict::SurvivorsExist) << r;
  }
}

TEST(ExclusionSearchTest, ReportedBoundsMatchFormula) {
  const ConstellationSpec spec{3, {2, 2, 2}};
  const auto layout = PhaseLayout::from_spec(spec);
  const GridSpec grid{{5, 6, 7, 8, 9, 10}};
  ASSERT_EQ(layout.num_phases, grid.resolutions.size());
  const auto rep = exclusion_search(spec, grid);
  ASSERT_EQ(rep.bounds.size(), layout.conditions.size());
  for (std::size_t i = 0; i < rep.bounds.size(); ++i) {
    EXPECT_EQ(rep.bounds[i].bound, condition_bound(layout, layout.conditions[i], grid));
  }
  EXPECT_EQ(rep.total_cells, 5u * 6 * 7 * 8 * 9 * 10);
}

TEST(ExclusionSearchTest, DeterministicAcrossThreadCounts) {
  const ConstellationSpec spec{3, {2, 2, 2}};
  const auto grid = GridSpec::uniform(6, 9);
  SearchOptions one{.max_witnesses = 25, .threads = 1};
  SearchOptions four{.max_witnesses = 25, .threads = 4};
  const auto a = exclusion_search(spec, grid, one);
  const auto b = exclusion_search(spec, grid, four);
  EXPECT_GT(a.surviving, 0u);
  EXPECT_EQ(a.surviving, b.surviving);
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    EXPECT_EQ(a.witnesses[i].cell, b.witnesses[i].cell);
    EXPECT_EQ(a.witnesses[i].indices, b.witnesses[i].indices);
  }
  for (std::size_t i = 1; i < a.witnesses.size(); ++i) {
    EXPECT_LT(a.witnesses[i - 1].cell, a.witnesses[i].cell);
  }
}

TEST(ExclusionSearchTest, WitnessesSurvive) {
  const ConstellationSpec spec{3, {2, 2, 2}};
  const auto layout = PhaseLayout::from_spec(spec);
  const auto grid = GridSpec::uniform(6, 6);
  const auto rep = exclusion_search(spec, grid, {.max_witnesses = 50});
  for (const auto& w : rep.witnesses) EXPECT_TRUE(cell_survives(layout, grid, w.indices));
}

TEST(ExclusionSearchTest, BudgetRefusal) {
  const ConstellationSpec spec{6, {5, 3, 3, 3}};
  const auto layout = PhaseLayout::from_spec(spec);
  ASSERT_EQ(layout.num_phases, 40u);
  try {
    exclusion_search(spec, GridSpec::uniform(40, 2));
    FAIL() << "expected refusal";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), std::ldexp(1.0L, 40));
    EXPECT_EQ(e.budget(), 100'000'000u);
    EXPECT_NE(std::string(e.what()).find("1099511627776"), std::string::npos);
  }
}

TEST(ExclusionSearchTest, GridShapeValidated) {
  const ConstellationSpec spec{2, {1, 1, 1, 1}};
  EXPECT_THROW(exclusion_search(spec, GridSpec::uniform(3, 4)), std::invalid_argument);
  EXPECT_THROW(exclusion_search(spec, GridSpec{{4, 1}}), std::invalid_argument);
  const auto layout = PhaseLayout::from_spec(spec);
  const std::vector<unsigned> bad{0, 1};
  EXPECT_THROW(cell_survives(layout, GridSpec::uniform(2, 4), bad), std::invalid_argument);
}

}  // namespace
}  // namespace mub::gridsearch
