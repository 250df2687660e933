#pragma once

// Buchberger's algorithm over the rationals, ideal triviality and
// Nullstellensatz certificates sum_j r_j p_j = 1.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mub/poly.hpp"

namespace mub::groebner {

using poly::MonomialOrder;
using poly::Polynomial;

struct Limits {
  std::size_t max_pairs = 1'000'000;  // S-polynomials actually reduced
  unsigned max_degree = 64;           // of any basis element
  std::size_t max_memory_bytes = std::size_t{1} << 30;
};

struct Stats {
  std::size_t pairs_created = 0;
  std::size_t spairs_reduced = 0;
  std::size_t skipped_coprime = 0;
  std::size_t skipped_chain = 0;
  std::size_t reductions = 0;  // elementary reduction steps
  std::size_t zero_reductions = 0;
  unsigned max_degree = 0;
  std::size_t peak_basis_size = 0;
  std::size_t memory_estimate_bytes = 0;

  bool operator==(const Stats&) const = default;
};

struct GroebnerBasis {
  std::vector<Polynomial> generators;  // reduced, monic, sorted by leading monomial
  MonomialOrder order = MonomialOrder::GradedRevLex;
  Stats stats;
};

struct ResourceExceeded {
  std::string limit;  // "max_pairs", "max_degree" or "max_memory"
  Stats stats;
};

struct Certificate {
  std::vector<Polynomial> cofactors;
};

// Cofactor bookkeeping of a run: when the ideal is trivial, `unit_cofactors`
// expresses 1 in the input generators.
struct Trace {
  std::size_t num_generators = 0;
  std::optional<std::vector<Polynomial>> unit_cofactors;
};

struct Options {
  Limits limits;
  bool track_cofactors = false;
};

struct BuchbergerResult {
  std::variant<GroebnerBasis, ResourceExceeded> outcome;
  std::optional<Trace> trace;  // present when cofactors were tracked

  bool done() const { return std::holds_alternative<GroebnerBasis>(outcome); }
  const GroebnerBasis& basis() const { return std::get<GroebnerBasis>(outcome); }
  const ResourceExceeded& exceeded() const { return std::get<ResourceExceeded>(outcome); }
};

// Throws std::invalid_argument for an empty list, mismatched variable counts
// or a zero generator. Exceeding a limit is reported, not thrown.
BuchbergerResult buchberger(std::span<const Polynomial> gens,
                            MonomialOrder order = MonomialOrder::GradedRevLex,
                            const Options& options = {});

bool is_trivial(const GroebnerBasis& basis);

// Exact check that sum_j cofactors[j] * polys[j] == 1.
bool verify_certificate(std::span<const Polynomial> polys, const Certificate& cert);

// Throws std::invalid_argument when the traced ideal is not trivial or
// cofactors were not tracked.
Certificate extract_certificate(const Trace& trace);

}  // namespace mub::groebner
