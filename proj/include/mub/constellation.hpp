#pragma once

// MU constellations {d-1, lambda, mu, nu, ...}_d and their defining
// polynomial systems.
//
// Parameterization: set 0 is the first d-1 standard basis vectors (no
// variables). The first vector of set 1 is fixed to (1,...,1)/sqrt(d). Every
// other vector is dephased, (1, z_1, ..., z_{d-1})/sqrt(d), with
// z_k = x_k + i y_k. Inner-product conditions are scaled by d so that all
// coefficients are integers: for S = d<u|v>,
//   unbiased pair:   |S|^2 - d = 0
//   orthogonal pair: |S|^2 = 0 and Re(S^2) = 0
// Unbiasedness to set 0 is equivalent to the modulus constraints
// x_k^2 + y_k^2 - 1 = 0 and emits nothing else.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mub/poly.hpp"

namespace mub::constellation {

using poly::BigRational;
using poly::Polynomial;

struct ConstellationSpec {
  unsigned d = 0;
  // [d-1, lambda, mu, nu, ...]
  std::vector<unsigned> sizes;

  void validate() const;
  std::string label() const;  // e.g. "{5,3,3,3}_6"

  static ConstellationSpec parse(unsigned d, std::string_view sizes_csv);
};

struct ConstellationCounts {
  std::size_t s = 0;              // free vectors
  std::size_t num_phases = 0;     // s(d-1)
  std::size_t num_real_vars = 0;  // 2s(d-1)
  std::size_t n_eq = 0;
  std::size_t n_quartic = 0;  // n_eq - n_modulus
  std::size_t n_modulus = 0;
};

ConstellationCounts describe(const ConstellationSpec& spec);

enum class Role { Modulus, Orthogonality, Unbiasedness };
std::string_view to_string(Role role);

// Cartesian parts for constellations; Eisenstein parts (z = a + b*omega_6)
// for the spectral-pair built-in.
enum class Part { Real, Imag, EisensteinA, EisensteinB };
std::string_view to_string(Part part);

struct VectorRef {
  unsigned set = 0;
  unsigned index = 0;
  bool operator==(const VectorRef&) const = default;
};

struct VariableSlot {
  unsigned vector = 0;     // free-vector ordinal (0-based)
  unsigned component = 0;  // 1..d-1
  Part part = Part::Real;
  std::string name;
};

// A vector of the parameterization other than set 0.
struct VectorInfo {
  VectorRef ref;
  bool free = false;
  // Index of the variable slot of component 1 (components are consecutive,
  // two slots each). Meaningless when !free.
  std::size_t first_slot = 0;
};

struct Condition {
  Role role = Role::Modulus;
  VectorRef a;
  VectorRef b;             // unused for Modulus
  unsigned component = 0;  // Modulus only
};

struct SystemPolynomial {
  Polynomial poly;
  Condition condition;
};

struct PolynomialSystem {
  std::string name;
  std::optional<ConstellationSpec> spec;
  unsigned dimension = 0;
  std::vector<VariableSlot> variables;
  std::vector<VectorInfo> vectors;
  std::vector<SystemPolynomial> polys;

  std::size_t num_vars() const { return variables.size(); }
  std::vector<Polynomial> polynomials() const;
  std::vector<std::string> variable_names() const;
};

PolynomialSystem build_system(const ConstellationSpec& spec,
                              poly::MonomialOrder order = poly::MonomialOrder::GradedRevLex);

// Two orthogonal vectors, each unbiased to the standard basis and to the
// columns of the 6x6 spectral matrix: 20 variables (Eisenstein coordinates),
// 10 modulus + 12 unbiasedness + 1 orthogonality constraints. With
// `reduced`, the condition against the last column of S is dropped for each
// vector (it follows from the other five and the modulus constraints),
// leaving 21.
PolynomialSystem build_spectral_pair_system(
    bool reduced = false, poly::MonomialOrder order = poly::MonomialOrder::GradedRevLex);

std::vector<BigRational> evaluate_system(const PolynomialSystem& sys,
                                         std::span<const BigRational> point);
std::vector<double> evaluate_system(const PolynomialSystem& sys,
                                    std::span<const double> point);

}  // namespace mub::constellation
