#include "mub/gridsearch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace mub::gridsearch {

namespace {

constexpr double kPi = std::numbers::pi;
// Inflates every bound by a relative 1e-12 so that rounding in the cosine
// tables can only make a cell survive, never exclude it.
constexpr double kSlack = 1e-12;

double inflate(double bound) { return bound * (1.0 + kSlack) + kSlack; }

struct PhaseTable {
  std::vector<std::vector<double>> cos;  // [phase][j-1]
  std::vector<std::vector<double>> sin;
};

PhaseTable make_table(const GridSpec& grid) {
  PhaseTable t;
  t.cos.resize(grid.resolutions.size());
  t.sin.resize(grid.resolutions.size());
  for (std::size_t p = 0; p < grid.resolutions.size(); ++p) {
    const unsigned r = grid.resolutions[p];
    for (unsigned j = 1; j <= r; ++j) {
      t.cos[p].push_back(std::cos(grid_angle(j, r)));
      t.sin[p].push_back(std::sin(grid_angle(j, r)));
    }
  }
  return t;
}

struct Checker {
  const PhaseLayout& layout;
  std::vector<double> bounds;  // inflated
  PhaseTable table;
  double target;

  Checker(const PhaseLayout& l, const GridSpec& grid)
      : layout(l), table(make_table(grid)), target(1.0 / std::sqrt(static_cast<double>(l.d))) {
    for (const auto& c : l.conditions) bounds.push_back(inflate(condition_bound(l, c, grid)));
  }

  // indices are 0-based here
  bool survives(std::span<const unsigned> idx) const {
    const unsigned d = layout.d;
    for (std::size_t ci = 0; ci < layout.conditions.size(); ++ci) {
      const auto& c = layout.conditions[ci];
      const auto& u = layout.vectors[c.a];
      const auto& v = layout.vectors[c.b];
      double re = 1.0, im = 0.0;
      for (unsigned k = 1; k < d; ++k) {
        double cu = 1.0, su = 0.0, cv = 1.0, sv = 0.0;
        if (u.free) {
          const std::size_t p = u.first_phase + k - 1;
          cu = table.cos[p][idx[p]];
          su = table.sin[p][idx[p]];
        }
        if (v.free) {
          const std::size_t p = v.first_phase + k - 1;
          cv = table.cos[p][idx[p]];
          sv = table.sin[p][idx[p]];
        }
        re += cu * cv + su * sv;
        im += cu * sv - su * cv;
      }
      const double s = std::hypot(re, im) / d;
      const double dev = c.role == Role::Orthogonality ? s : std::abs(s - target);
      if (dev > bounds[ci]) return false;
    }
    return true;
  }
};

Witness make_witness(std::uint64_t cell, std::span<const unsigned> idx, const GridSpec& grid) {
  Witness w;
  w.cell = cell;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    w.indices.push_back(idx[p] + 1);
    w.angles.push_back(grid_angle(idx[p] + 1, grid.resolutions[p]));
  }
  return w;
}

// Phase 0 is the most significant digit, so cell order is lexicographic.
void decode(std::uint64_t cell, const GridSpec& grid, std::vector<unsigned>& idx) {
  for (std::size_t p = grid.resolutions.size(); p-- > 0;) {
    idx[p] = static_cast<unsigned>(cell % grid.resolutions[p]);
    cell /= grid.resolutions[p];
  }
}

void advance(const GridSpec& grid, std::vector<unsigned>& idx) {
  for (std::size_t p = grid.resolutions.size(); p-- > 0;) {
    if (++idx[p] < grid.resolutions[p]) return;
    idx[p] = 0;
  }
}

struct Partial {
  std::uint64_t surviving = 0;
  std::vector<Witness> witnesses;
};

}  // namespace

GridSpec GridSpec::uniform(std::size_t num_phases, unsigned resolution) {
  return GridSpec{std::vector<unsigned>(num_phases, resolution)};
}

void GridSpec::validate(std::size_t num_phases) const {
  if (resolutions.size() != num_phases) {
    throw std::invalid_argument("grid has " + std::to_string(resolutions.size()) +
                                " resolutions, expected " + std::to_string(num_phases));
  }
  for (unsigned r : resolutions) {
    if (r < 2) throw std::invalid_argument("grid resolution must be at least 2");
  }
}

double grid_angle(unsigned j, unsigned resolution) {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(resolution);
}

unsigned grid_index(double angle, unsigned resolution) {
  const double t = angle * resolution / (2.0 * kPi) + 0.5;
  long long j = static_cast<long long>(std::floor(t)) % resolution;
  if (j < 0) j += resolution;
  return j == 0 ? resolution : static_cast<unsigned>(j);
}

PhaseLayout PhaseLayout::from_spec(const ConstellationSpec& spec) {
  spec.validate();
  PhaseLayout layout;
  layout.d = spec.d;
  for (unsigned set = 1; set < spec.sizes.size(); ++set) {
    for (unsigned idx = 0; idx < spec.sizes[set]; ++idx) {
      LayoutVector v{{set, idx}, !(set == 1 && idx == 0), layout.num_phases};
      if (v.free) layout.num_phases += spec.d - 1;
      layout.vectors.push_back(v);
    }
  }
  for (std::size_t i = 0; i < layout.vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < layout.vectors.size(); ++j) {
      const bool same = layout.vectors[i].ref.set == layout.vectors[j].ref.set;
      layout.conditions.push_back({same ? Role::Orthogonality : Role::Unbiasedness, i, j});
    }
  }
  return layout;
}

double condition_bound(const PhaseLayout& layout, const GridCondition& condition,
                       const GridSpec& grid) {
  double sum = 0.0;
  for (const auto* v : {&layout.vectors[condition.a], &layout.vectors[condition.b]}) {
    if (!v->free) continue;
    for (unsigned k = 1; k < layout.d; ++k) sum += kPi / grid.resolutions[v->first_phase + k - 1];
  }
  return sum / layout.d;
}

double condition_bound(std::span<const unsigned> gridded_per_component, unsigned resolution,
                       unsigned d) {
  unsigned total = 0;
  for (unsigned g : gridded_per_component) {
    if (g > 2) throw std::invalid_argument("at most two gridded phases per component");
    total += g;
  }
  return total * kPi / resolution / d;
}

std::string to_string(Verdict v) {
  return v == Verdict::ExcludedEverywhere ? "excluded_everywhere" : "survivors_exist";
}

namespace {
std::string format_required(long double required) {
  std::ostringstream os;
  if (required < 1.8e19L) {
    os << static_cast<unsigned long long>(required);
  } else {
    os.precision(4);
    os << required;
  }
  return os.str();
}
}  // namespace

BudgetExceeded::BudgetExceeded(long double required, std::uint64_t budget)
    : std::runtime_error("grid search needs " + format_required(required) +
                         " cells, budget is " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

ExclusionReport exclusion_check_qubit(unsigned resolution, std::size_t max_witnesses) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const auto start = std::chrono::steady_clock::now();
  const double target = 1.0 / std::sqrt(2.0);
  const double single = inflate(kPi / (2.0 * resolution));
  const double diff = inflate(kPi / resolution);

  ExclusionReport report;
  report.constellation = "{1,1,1,1}_2";
  report.resolutions = {resolution, resolution};
  report.total_cells = static_cast<std::uint64_t>(resolution) * resolution;
  for (unsigned j1 = 1; j1 <= resolution; ++j1) {
    const double a = grid_angle(j1, resolution);
    if (std::abs(std::abs(std::cos(a / 2)) - target) > single) continue;
    for (unsigned j2 = 1; j2 <= resolution; ++j2) {
      const double b = grid_angle(j2, resolution);
      if (std::abs(std::abs(std::cos(b / 2)) - target) > single) continue;
      if (std::abs(std::abs(std::cos((a - b) / 2)) - target) > diff) continue;
      ++report.surviving;
      if (report.witnesses.size() < max_witnesses) {
        report.witnesses.push_back(
            {static_cast<std::uint64_t>(j1 - 1) * resolution + (j2 - 1), {j1, j2}, {a, b}});
      }
    }
  }
  const ConstellationSpec spec{2, {1, 1, 1, 1}};
  const auto layout = PhaseLayout::from_spec(spec);
  const auto grid = GridSpec::uniform(layout.num_phases, resolution);
  for (const auto& c : layout.conditions) {
    report.bounds.push_back({c, layout.vectors[c.a].ref, layout.vectors[c.b].ref,
                             condition_bound(layout, c, grid)});
  }
  report.verdict = report.surviving == 0 ? Verdict::ExcludedEverywhere : Verdict::SurvivorsExist;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::optional<unsigned> minimal_qubit_resolution(unsigned max_resolution) {
  for (unsigned r = 2; r <= max_resolution; ++r) {
    if (exclusion_check_qubit(r, 0).surviving == 0) return r;
  }
  return std::nullopt;
}

bool cell_survives(const PhaseLayout& layout, const GridSpec& grid,
                   std::span<const unsigned> indices) {
  grid.validate(layout.num_phases);
  if (indices.size() != layout.num_phases) {
    throw std::invalid_argument("cell index count does not match phase count");
  }
  std::vector<unsigned> zero_based;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    if (indices[p] < 1 || indices[p] > grid.resolutions[p]) {
      throw std::invalid_argument("cell index out of range");
    }
    zero_based.push_back(indices[p] - 1);
  }
  return Checker(layout, grid).survives(zero_based);
}

ExclusionReport exclusion_search(const ConstellationSpec& spec, const GridSpec& grid,
                                 const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto layout = PhaseLayout::from_spec(spec);
  grid.validate(layout.num_phases);

  long double required = 1.0L;
  for (unsigned r : grid.resolutions) required *= r;
  if (required > static_cast<long double>(options.budget)) {
    throw BudgetExceeded(required, options.budget);
  }
  const auto total = static_cast<std::uint64_t>(required);

  const Checker checker(layout, grid);
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  if (total < 4096) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1)));

  std::vector<Partial> partials(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t begin = total * t / threads;
    const std::uint64_t end = total * (t + 1) / threads;
    if (begin >= end) return;
    std::vector<unsigned> idx(layout.num_phases);
    decode(begin, grid, idx);
    auto& out = partials[t];
    for (std::uint64_t cell = begin; cell < end; ++cell) {
      if (checker.survives(idx)) {
        ++out.surviving;
        if (out.witnesses.size() < options.max_witnesses) {
          out.witnesses.push_back(make_witness(cell, idx, grid));
        }
      }
      advance(grid, idx);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  ExclusionReport report;
  report.constellation = spec.label();
  report.resolutions = grid.resolutions;
  report.total_cells = total;
  // Ranges are contiguous and ordered, so concatenation keeps cell order.
  for (auto& p : partials) {
    report.surviving += p.surviving;
    for (auto& w : p.witnesses) {
      if (report.witnesses.size() < options.max_witnesses) report.witnesses.push_back(std::move(w));
    }
  }
  for (const auto& c : layout.conditions) {
    report.bounds.push_back({c, layout.vectors[c.a].ref, layout.vectors[c.b].ref,
                             condition_bound(layout, c, grid)});
  }
  report.verdict = report.surviving == 0 ? Verdict::ExcludedEverywhere : Verdict::SurvivorsExist;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace mub::gridsearch
